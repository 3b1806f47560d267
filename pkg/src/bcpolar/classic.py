"""Inner, group, Drazin and Moore-Penrose inverses, and polarity checks.

Group, Drazin and Moore-Penrose inverses all come out of the same formula
``d (d a d)^- d`` for the inverse of ``a`` along ``d``, with ``d = a``,
``d = a^k`` (``k`` the index) and ``d = a^T``.  Each result is checked
against its defining identities before it is returned.

In a matrix algebra quasinilpotent means nilpotent, so "polar" and
"quasipolar" are the same condition and :func:`verify_polar` covers both.
The Jacobson radical of ``M_n`` over a field is zero, so pseudopolarity
collapses to polarity too and gets no separate treatment.
"""

from dataclasses import dataclass

from .linmem import in_double_commutant, sandwich_kernel
from .matrix import (
    ContractViolation,
    DimensionError,
    Mat,
    identity,
    kron,
    left_inverse,
    rank,
    random_matrix,
    rank_factorize,
    right_inverse,
    solve_right,
    two_sided_inverse,
    unvec,
    vec,
    vstack,
    zeros,
)

__all__ = [
    "DrazinResult",
    "inner_inverse",
    "transposed_inner_inverse",
    "alternative_inner_inverse",
    "is_regular_with",
    "group_inverse",
    "drazin_index",
    "drazin",
    "moore_penrose",
    "is_nilpotent",
    "verify_polar",
    "drazin_by_linear_system",
]


def _require_square(A, what):
    if not A.is_square:
        raise DimensionError(f"{what} needs a square matrix, got {A.shape}")


def inner_inverse(A):
    """Canonical inner inverse ``G^+ F^+`` built from ``A = F G``."""
    F, G, _ = rank_factorize(A)
    R = right_inverse(G)
    L = left_inverse(F)
    if R is None or L is None:
        raise ContractViolation("rank factors are not full rank")
    X = R @ L
    if A @ X @ A != A:
        raise ContractViolation("inner inverse fails A X A = A")
    return X


def transposed_inner_inverse(A):
    """Inner inverse of ``A^T`` transposed back; another inner inverse of ``A``."""
    return inner_inverse(A.T).T


def alternative_inner_inverse(A, rng):
    """``A^- + Z`` for a random ``Z`` with ``A Z A = 0``.

    Every inner inverse has this form, so sampling ``Z`` from the kernel of
    ``Z -> A Z A`` explores the whole family.
    """
    X = inner_inverse(A)
    basis = sandwich_kernel(A, A)
    Z = zeros(A.field, A.cols, A.rows)
    if basis:
        coeffs = random_matrix(A.field, rng, 1, len(basis))
        for j, W in enumerate(basis):
            Z = Z + W.scale(coeffs.array[0, j])
    Y = X + Z
    if A @ Y @ A != A:
        raise ContractViolation("perturbed inner inverse fails A X A = A")
    return Y


def is_regular_with(A, X):
    return A @ X @ A == A


def group_inverse(A):
    """``A^#`` or ``None`` when ``rank(A) != rank(A^2)``."""
    _require_square(A, "group inverse")
    if rank(A) != rank(A @ A):
        return None
    X = A @ inner_inverse(A @ A @ A) @ A
    if not (X @ A @ X == X and A @ X @ A == A and A @ X == X @ A):
        raise ContractViolation("group inverse identities fail")
    return X


def drazin_index(A):
    """Smallest ``k >= 0`` with ``rank(A^k) == rank(A^(k+1))``."""
    _require_square(A, "Drazin index")
    n = A.rows
    power = identity(A.field, n)
    r_prev = n
    for k in range(n + 1):
        nxt = power @ A
        r_next = rank(nxt)
        if r_next == r_prev:
            return k
        power, r_prev = nxt, r_next
    return n


@dataclass(frozen=True)
class DrazinResult:
    d_inverse: Mat
    index: int
    spectral_idempotent: Mat


def drazin(A):
    _require_square(A, "Drazin inverse")
    k = drazin_index(A)
    Ak = A**k
    X = Ak @ inner_inverse(Ak @ A @ Ak) @ Ak
    if not (A @ X == X @ A and X @ A @ X == X and (Ak @ A) @ X == Ak):
        raise ContractViolation("Drazin identities fail")
    I = identity(A.field, A.rows)
    pi = I - A @ X
    if not pi.is_idempotent():
        raise ContractViolation("spectral idempotent is not idempotent")
    return DrazinResult(X, k, pi)


def moore_penrose(A):
    """Moore-Penrose inverse over Q, with transpose as the involution."""
    if A.field.characteristic:
        raise ValueError("Moore-Penrose inverse is only supported over Q")
    At = A.T
    X = At @ inner_inverse(At @ A @ At) @ At
    AX, XA = A @ X, X @ A
    if not (AX @ A == A and XA @ X == X and AX.T == AX and XA.T == XA):
        raise ContractViolation("Penrose identities fail")
    return X


def is_nilpotent(M):
    return (M ** M.rows).is_zero()


def verify_polar(A, P):
    """Whether ``P`` is a spectral idempotent of ``A``.

    Checks ``P^2 = P``, ``P`` in the double commutant of ``A``, ``A + P``
    invertible and ``A P`` nilpotent.
    """
    _require_square(A, "polarity")
    if P.shape != A.shape:
        raise DimensionError(f"idempotent shape {P.shape} != {A.shape}")
    return (
        P.is_idempotent()
        and in_double_commutant(P, A)
        and two_sided_inverse(A + P) is not None
        and is_nilpotent(A @ P)
    )


def drazin_by_linear_system(A, k=None):
    """Drazin inverse from its identities, without inner inverses.

    Writes ``X = A^k Y A^k`` and solves the linear conditions ``AX = XA`` and
    ``A^(k+1) X = A^k`` for ``Y``.  At the index the solution ``X`` is unique
    (``R(A^k)`` meets ``N(A^k)`` trivially), and ``XAX = X`` is checked after.
    Returns ``None`` if the system has no solution, which means ``k`` is not
    at least the index.
    """
    _require_square(A, "Drazin inverse")
    n = A.rows
    if k is None:
        k = drazin_index(A)
    I = identity(A.field, n)
    Ak = A**k
    # vec(L Y R) = (R^T kron L) vec(Y)
    lift = kron(Ak.T, Ak)
    commute = kron(I, A) - kron(A.T, I)
    power = kron(I, Ak @ A)
    system = vstack(A.field, [commute @ lift, power @ lift])
    rhs = vstack(A.field, [zeros(A.field, n * n, 1), vec(Ak)])
    y = solve_right(system, rhs)
    if y is None:
        return None
    X = Ak @ unvec(y, n, n) @ Ak
    if X @ A @ X != X:
        raise ContractViolation("linear-system Drazin candidate fails XAX = X")
    return X
