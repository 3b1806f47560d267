"""Membership tests that reduce to linear systems.

``P in B R C`` holds iff the sandwich equation ``B X C = P`` has a solution.
With column-stacking vectorization, ``vec(B X C) = (C^T kron B) vec(X)``, so
the question is a single call to :func:`~bcpolar.matrix.solve_right`.
Commutants are kernels of ``X -> A X - X A``, vectorized the same way.
"""

from dataclasses import dataclass

from .matrix import DimensionError, Mat, identity, kernel_basis, kron, solve_right, unvec, vec

__all__ = [
    "SandwichWitness",
    "solve_sandwich",
    "in_set",
    "sandwich_kernel",
    "commutant_basis",
    "in_commutant",
    "in_double_commutant",
]


@dataclass(frozen=True)
class SandwichWitness:
    """A certified solution ``X`` of ``B @ X @ C == P``."""

    X: Mat
    B: Mat
    C: Mat
    P: Mat

    def __post_init__(self):
        if self.B @ self.X @ self.C != self.P:
            raise ValueError("witness does not satisfy B @ X @ C == P")


def _check_sandwich_dims(B, C, P):
    if B.rows != P.rows or C.cols != P.cols:
        raise DimensionError(
            f"sandwich B{B.shape} X C{C.shape} cannot equal P{P.shape}"
        )


def solve_sandwich(B, C, P):
    """Canonical ``X`` with ``B X C = P`` wrapped in a witness, else ``None``."""
    _check_sandwich_dims(B, C, P)
    k, l = B.cols, C.rows
    x = solve_right(kron(C.T, B), vec(P))
    if x is None:
        return None
    return SandwichWitness(unvec(x, k, l), B, C, P)


def in_set(P, B, C):
    """True iff ``P`` lies in ``B R C``."""
    return solve_sandwich(B, C, P) is not None


def sandwich_kernel(B, C):
    """Basis of ``{X : B X C = 0}``."""
    k, l = B.cols, C.rows
    K = kernel_basis(kron(C.T, B))
    return [unvec(_column(K, j), k, l) for j in range(K.cols)]


def _column(M, j):
    return Mat._wrap(M.array[:, j : j + 1].copy(), M.field)


def commutant_basis(A):
    """Basis of ``comm(A) = {X : A X = X A}``."""
    if not A.is_square:
        raise DimensionError(f"commutant of non-square {A.shape} matrix")
    n = A.rows
    I = identity(A.field, n)
    op = kron(I, A) - kron(A.T, I)
    K = kernel_basis(op)
    return [unvec(_column(K, j), n, n) for j in range(K.cols)]


def in_commutant(X, A):
    return A @ X == X @ A


def in_double_commutant(P, A):
    """True iff ``P`` commutes with every matrix that commutes with ``A``.

    Checking against a basis of the commutant is enough since the condition
    is linear in the commuting matrix.
    """
    if not (P.is_square and A.is_square) or P.shape != A.shape:
        raise DimensionError(f"double commutant needs equal square shapes, got {P.shape}, {A.shape}")
    return all(P @ Y == Y @ P for Y in commutant_basis(A))
