"""Dense exact matrices over Q or GF(p).

``Mat`` is an immutable wrapper around a numpy array (``int64`` residues for
GF(p), ``Fraction`` objects for Q).  Everything here is exact: pivoting picks
the first nonzero entry, never the largest.

Solvers return the canonical solution in which every free variable is zero,
so computed inverses are deterministic and can be compared bit for bit.
"""

from typing import NamedTuple

import numpy as np

from .field import QQ, FieldMismatchError, parse_field

__all__ = [
    "Mat",
    "DimensionError",
    "ContractViolation",
    "random_matrix",
    "RankFactorization",
    "identity",
    "zeros",
    "rref",
    "rank",
    "solve_right",
    "solve_left",
    "kernel_basis",
    "column_basis",
    "rank_factorize",
    "left_inverse",
    "right_inverse",
    "two_sided_inverse",
    "hstack",
    "vstack",
    "kron",
    "vec",
    "unvec",
]


class DimensionError(ValueError):
    pass


class ContractViolation(AssertionError):
    """A computed object failed the identities it is supposed to satisfy."""


class Mat:
    """Immutable dense matrix over an exact field."""

    __slots__ = ("field", "_a", "_hash")

    def __init__(self, data, field=QQ):
        field = parse_field(field)
        if isinstance(data, Mat):
            if data.field != field:
                raise FieldMismatchError(f"{data.field!r} matrix passed as {field!r}")
            arr = data._a
        elif (
            isinstance(data, np.ndarray)
            and data.ndim == 2
            and field.dtype is not object
            and np.issubdtype(data.dtype, np.integer)
        ):
            arr = field.normalize(data.astype(field.dtype))
        else:
            arr = field.array(data)
        arr.flags.writeable = False
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "_a", arr)
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _wrap(cls, arr, field):
        # trusted constructor: arr already reduced and of field.dtype
        m = object.__new__(cls)
        arr.flags.writeable = False
        object.__setattr__(m, "field", field)
        object.__setattr__(m, "_a", arr)
        object.__setattr__(m, "_hash", None)
        return m

    def __setattr__(self, name, value):
        raise AttributeError("Mat is immutable")

    @property
    def array(self):
        """Read-only view of the raw entries."""
        return self._a

    @property
    def shape(self):
        return self._a.shape

    @property
    def rows(self):
        return self._a.shape[0]

    @property
    def cols(self):
        return self._a.shape[1]

    @property
    def is_square(self):
        return self.rows == self.cols

    def __getitem__(self, idx):
        i, j = idx
        return self.field.element(self._a[i, j])

    def entries(self):
        """Entries as nested lists of field scalars."""
        return [[self.field.element(v) for v in row] for row in self._a]

    def _check_field(self, other):
        if not isinstance(other, Mat):
            raise TypeError(f"expected Mat, got {type(other).__name__}")
        if other.field != self.field:
            raise FieldMismatchError(f"{self.field!r} vs {other.field!r}")

    def __add__(self, other):
        self._check_field(other)
        if self.shape != other.shape:
            raise DimensionError(f"cannot add {self.shape} and {other.shape}")
        return Mat._wrap(self.field.normalize(self._a + other._a), self.field)

    def __sub__(self, other):
        self._check_field(other)
        if self.shape != other.shape:
            raise DimensionError(f"cannot subtract {self.shape} and {other.shape}")
        return Mat._wrap(self.field.normalize(self._a - other._a), self.field)

    def __neg__(self):
        return Mat._wrap(self.field.normalize(-self._a), self.field)

    def __matmul__(self, other):
        self._check_field(other)
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        if self.field.dtype is object:
            if self.cols == 0:
                return zeros(self.field, self.rows, other.cols)
            out = np.dot(self._a, other._a)
        else:
            out = self._a @ other._a
        return Mat._wrap(self.field.normalize(out), self.field)

    def scale(self, s):
        s = self.field.coerce(s)
        return Mat._wrap(self.field.normalize(self._a * s), self.field)

    def __rmul__(self, s):
        return self.scale(s)

    def __pow__(self, k):
        if not self.is_square:
            raise DimensionError(f"power of non-square {self.shape} matrix")
        if k < 0:
            raise ValueError("negative exponent; use two_sided_inverse")
        result = identity(self.field, self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            k >>= 1
            if k:
                base = base @ base
        return result

    @property
    def T(self):
        return Mat._wrap(self._a.T.copy(), self.field)

    def transpose(self):
        return self.T

    def is_zero(self):
        return not np.any(self._a != 0)

    def is_identity(self):
        return self.is_square and self == identity(self.field, self.rows)

    def is_idempotent(self):
        return self.is_square and self @ self == self

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return (
            self.field == other.field
            and self.shape == other.shape
            and bool(np.all(self._a == other._a))
        )

    def __hash__(self):
        if self._hash is None:
            key = (self.field, self.shape, tuple(self.field.format(v) for v in self._a.flat))
            object.__setattr__(self, "_hash", hash(key))
        return self._hash

    def tolist(self):
        """Entries in the text form used by the JSON interface."""
        return [[self.field.format(v) for v in row] for row in self._a]

    def to_json(self):
        return {
            "field": self.field.descriptor(),
            "rows": self.rows,
            "cols": self.cols,
            "entries": self.tolist(),
        }

    @classmethod
    def from_json(cls, obj):
        try:
            field = parse_field(obj["field"])
            rows, cols = int(obj["rows"]), int(obj["cols"])
            entries = obj["entries"]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed matrix object: {exc}") from None
        if len(entries) != rows or any(len(r) != cols for r in entries):
            raise DimensionError(f"entries do not match declared shape {rows}x{cols}")
        if not all(isinstance(v, str) for r in entries for v in r):
            raise ValueError("matrix entries must be strings")
        if rows == 0 or cols == 0:
            return zeros(field, rows, cols)
        return cls(entries, field)

    def __repr__(self):
        body = ", ".join("[" + ", ".join(r) + "]" for r in self.tolist())
        return f"Mat([{body}], {self.field!r})"


def identity(field, n):
    field = parse_field(field)
    return Mat._wrap(field.eye(n), field)


def zeros(field, rows, cols=None):
    field = parse_field(field)
    cols = rows if cols is None else cols
    return Mat._wrap(field.zeros((rows, cols)), field)


def hstack(field, mats, rows=None):
    field = parse_field(field)
    mats = list(mats)
    if not mats:
        return zeros(field, rows or 0, 0)
    if len({m.rows for m in mats}) != 1:
        raise DimensionError("hstack of matrices with different row counts")
    return Mat._wrap(np.concatenate([m._a for m in mats], axis=1).astype(field.dtype), field)


def vstack(field, mats, cols=None):
    field = parse_field(field)
    mats = list(mats)
    if not mats:
        return zeros(field, 0, cols or 0)
    if len({m.cols for m in mats}) != 1:
        raise DimensionError("vstack of matrices with different column counts")
    return Mat._wrap(np.concatenate([m._a for m in mats], axis=0).astype(field.dtype), field)


def _eliminate(field, aug, ncols):
    """In-place Gauss-Jordan on the first ``ncols`` columns of ``aug``."""
    m = aug.shape[0]
    pivots = []
    r = 0
    for c in range(ncols):
        if r == m:
            break
        nz = np.flatnonzero(aug[r:, c] != 0)
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            aug[[r, i]] = aug[[i, r]]
        piv = aug[r, c]
        if piv != 1:
            aug[r] = field.normalize(aug[r] * field.inv(piv))
        factors = aug[:, c].copy()
        factors[r] = 0
        rows = np.flatnonzero(factors != 0)
        if rows.size:
            aug[rows] = field.normalize(aug[rows] - np.outer(factors[rows], aug[r]))
        pivots.append(c)
        r += 1
    return pivots


def rref(M):
    """Reduced row echelon form.

    Returns ``(R, pivots, E)`` with ``E @ M == R`` and ``E`` invertible.
    """
    field = M.field
    m, n = M.shape
    aug = np.concatenate([M._a, field.eye(m)], axis=1).astype(field.dtype)
    pivots = _eliminate(field, aug, n)
    R = Mat._wrap(aug[:, :n].copy(), field)
    E = Mat._wrap(aug[:, n:].copy(), field)
    return R, pivots, E


def _rref_only(M):
    aug = M._a.copy()
    if not aug.flags.writeable:
        aug = np.array(aug)
    pivots = _eliminate(M.field, aug, M.cols)
    return aug, pivots


def rank(M):
    return len(_rref_only(M)[1])


def solve_right(A, B):
    """Canonical ``X`` with ``A @ X == B``, or ``None`` if inconsistent."""
    A._check_field(B)
    if A.rows != B.rows:
        raise DimensionError(f"solve_right: A is {A.shape}, B is {B.shape}")
    field = A.field
    n = A.cols
    aug = np.concatenate([A._a, B._a], axis=1).astype(field.dtype)
    pivots = _eliminate(field, aug, n)
    r = len(pivots)
    if np.any(aug[r:, n:] != 0):
        return None
    X = field.zeros((n, B.cols))
    if r:
        X[pivots] = aug[:r, n:]
    return Mat._wrap(X, field)


def solve_left(A, B):
    """Canonical ``X`` with ``X @ A == B``, or ``None`` if inconsistent."""
    A._check_field(B)
    if A.cols != B.cols:
        raise DimensionError(f"solve_left: A is {A.shape}, B is {B.shape}")
    X = solve_right(A.T, B.T)
    return None if X is None else X.T


def kernel_basis(M):
    """Columns spanning the null space of ``M``; ``n x 0`` when trivial."""
    field = M.field
    n = M.cols
    R, pivots = _rref_only(M)
    free = [c for c in range(n) if c not in set(pivots)]
    K = field.zeros((n, len(free)))
    one = field.coerce(1)
    for j, f in enumerate(free):
        K[f, j] = one
        for i, pc in enumerate(pivots):
            K[pc, j] = -R[i, f]
    return Mat._wrap(field.normalize(K), field)


def column_basis(M):
    """Pivot columns of ``M`` (a basis of its range)."""
    _, pivots = _rref_only(M)
    return Mat._wrap(M._a[:, pivots].copy(), M.field)


class RankFactorization(NamedTuple):
    F: Mat
    G: Mat
    r: int


def rank_factorize(M):
    """``M = F @ G`` with ``F`` the pivot columns and ``G`` the nonzero RREF rows."""
    R, pivots = _rref_only(M)
    r = len(pivots)
    F = Mat._wrap(M._a[:, pivots].copy(), M.field)
    G = Mat._wrap(R[:r].copy(), M.field)
    return RankFactorization(F, G, r)


def left_inverse(F):
    """``L`` with ``L @ F == I_r`` for full column rank ``F``, else ``None``."""
    return solve_left(F, identity(F.field, F.cols))


def right_inverse(G):
    """``R`` with ``G @ R == I_r`` for full row rank ``G``, else ``None``."""
    return solve_right(G, identity(G.field, G.rows))


def two_sided_inverse(M):
    if not M.is_square:
        return None
    X = solve_right(M, identity(M.field, M.rows))
    if X is None:
        return None
    # a right inverse of a square matrix is two-sided
    return X


def kron(A, B):
    """Kronecker product ``A (x) B``."""
    A._check_field(B)
    field = A.field
    out = np.kron(A._a, B._a)
    if field.dtype is not object:
        out = out.astype(field.dtype)
    return Mat._wrap(field.normalize(out), field)


def vec(M):
    """Column-stacking vectorization, returned as an ``(rows*cols) x 1`` matrix."""
    return Mat._wrap(M._a.reshape(-1, 1, order="F").copy(), M.field)


def unvec(v, rows, cols):
    """Inverse of :func:`vec`."""
    return Mat._wrap(v._a.reshape(rows, cols, order="F").copy(), v.field)


def random_matrix(field, rng, rows, cols=None, bound=3):
    """Uniform entries over GF(p); integers in ``[-bound, bound]`` over Q."""
    field = parse_field(field)
    cols = rows if cols is None else cols
    if field.characteristic:
        raw = rng.integers(0, field.p, size=(rows, cols))
    else:
        raw = rng.integers(-bound, bound + 1, size=(rows, cols))
    if field.dtype is object:
        return Mat._wrap(field.array(raw.tolist()) if rows and cols else field.zeros((rows, cols)), field)
    return Mat._wrap(raw.astype(field.dtype), field)
