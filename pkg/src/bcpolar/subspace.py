"""Ranges, null spaces and projectors in ``F^n``.

Operator-level counterparts of (b,c)-invertibility: ``A`` is
(B,C)-invertible exactly when the projector onto ``R(B)`` along ``N(CA)``
and the projector onto ``R(AB)`` along ``N(C)`` both exist, and those
projectors are then the left and right spectral idempotents.

A :class:`Subspace` keeps a canonical basis (the transposed nonzero rows of
the RREF of its spanning vectors), so two subspaces are equal iff their
bases are equal entry for entry.
"""

from dataclasses import dataclass
from typing import NamedTuple, Optional

from .bc import (
    bc_inverse,
    inverse_along,
    polar_along_conditions,
    verify_bc_polar,
    verify_dual_bc_polar,
)
from .matrix import (
    DimensionError,
    Mat,
    hstack,
    identity,
    kernel_basis,
    rank,
    rref,
    solve_left,
    solve_right,
    two_sided_inverse,
    zeros,
)

__all__ = [
    "Subspace",
    "Projector",
    "range_of",
    "nullspace_of",
    "span",
    "subspace_sum",
    "intersect",
    "is_complementary",
    "projector_onto_along",
    "Thm41Verdict",
    "thm41_check",
    "cor43_check",
    "cor43_literal_projector",
    "restricted_map",
    "block_representation",
    "spectral_candidates",
    "polar_by_projectors",
    "dual_polar_by_projectors",
]


@dataclass(frozen=True, eq=False)
class Subspace:
    ambient_dim: int
    basis: Mat

    @property
    def dim(self):
        return self.basis.cols

    @property
    def field(self):
        return self.basis.field

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def contains(self, v):
        """Whether every column of ``v`` lies in the subspace."""
        _same_ambient_vec(self, v)
        return solve_right(self.basis, v) is not None

    def is_zero(self):
        return self.dim == 0

    def is_full(self):
        return self.dim == self.ambient_dim


def _same_ambient_vec(U, v):
    if v.rows != U.ambient_dim:
        raise DimensionError(f"vector in F^{v.rows} tested against subspace of F^{U.ambient_dim}")


def _same_ambient(U, V):
    if U.ambient_dim != V.ambient_dim:
        raise DimensionError(f"subspaces of F^{U.ambient_dim} and F^{V.ambient_dim}")


def span(M):
    """Canonical subspace spanned by the columns of ``M``."""
    n = M.rows
    if M.cols == 0:
        return Subspace(n, zeros(M.field, n, 0))
    R, pivots, _ = rref(M.T)
    basis = Mat._wrap(R.array[: len(pivots)].T.copy(), M.field)
    return Subspace(n, basis)


def range_of(A):
    return span(A)


def nullspace_of(A):
    return span(kernel_basis(A))


def subspace_sum(U, V):
    _same_ambient(U, V)
    return span(hstack(U.field, [U.basis, V.basis]))


def intersect(U, V):
    _same_ambient(U, V)
    # x = U u = V v  <=>  [U | -V] (u; v) = 0
    K = kernel_basis(hstack(U.field, [U.basis, -V.basis]))
    coords = Mat._wrap(K.array[: U.dim].copy(), U.field)
    return span(U.basis @ coords)


def is_complementary(U, V):
    _same_ambient(U, V)
    if U.dim + V.dim != U.ambient_dim:
        return False
    return rank(hstack(U.field, [U.basis, V.basis])) == U.ambient_dim


@dataclass(frozen=True)
class Projector:
    matrix: Mat
    range: Subspace
    kernel: Subspace


def projector_onto_along(U, V):
    """The idempotent with range ``U`` and kernel ``V``, or ``None``.

    Solves ``P [U | V] = [U | 0]``; the system is square and invertible
    exactly when the two subspaces are complementary.
    """
    _same_ambient(U, V)
    if not is_complementary(U, V):
        return None
    field = U.field
    n = U.ambient_dim
    lhs = hstack(field, [U.basis, V.basis], rows=n)
    rhs = hstack(field, [U.basis, zeros(field, n, V.dim)], rows=n)
    P = solve_left(lhs, rhs)
    if P is None or not P.is_idempotent():
        raise AssertionError("complementary subspaces gave no projector")
    return Projector(P, U, V)


class Thm41Verdict(NamedTuple):
    invertible: bool
    polar: bool
    projectors_exist: bool
    P: Optional[Projector]
    Q: Optional[Projector]


def thm41_check(A, B, C):
    """Three ways of deciding (B,C)-invertibility of ``A``.

    * ``invertible``: ``N(B) = N(CAB)`` and ``R(C) = R(CAB)``.
    * ``polar``: the (B,C)-spectral idempotents exist and pass every
      polarity condition.
    * ``projectors_exist``: ``R(B)`` is complementary to ``N(CA)`` and
      ``R(AB)`` is complementary to ``N(C)``.
    """
    for M in (A, B, C):
        if not M.is_square or M.shape != A.shape:
            raise DimensionError("thm41_check needs square matrices of one size")
    CAB = C @ A @ B
    invertible = nullspace_of(B) == nullspace_of(CAB) and range_of(C) == range_of(CAB)
    res = bc_inverse(A, B, C)
    polar = res is not None and verify_bc_polar(A, B, C, res.p, res.q)
    P = projector_onto_along(range_of(B), nullspace_of(C @ A))
    Q = projector_onto_along(range_of(A @ B), nullspace_of(C))
    return Thm41Verdict(invertible, polar, P is not None and Q is not None, P, Q)


def restricted_map(A, B):
    """Coordinate matrix of ``A`` restricted to ``R(B) -> R(AB)``.

    ``M`` satisfies ``A @ basis(R(B)) == basis(R(AB)) @ M`` in the canonical
    bases.
    """
    RB, RAB = range_of(B), range_of(A @ B)
    M = solve_right(RAB.basis, A @ RB.basis)
    if M is None:
        raise AssertionError("A maps R(B) outside R(AB)")
    return M


def cor43_check(A, B):
    """Four ways of deciding whether ``A`` is invertible along ``B``.

    1. the inverse along ``B`` exists;
    2. the projector onto ``R(B)`` along ``N(BA)`` exists and makes ``A``
       polar along ``B``;
    3. projectors ``P`` (range ``R(B)``, kernel ``N(BA)``) and ``Q`` (range
       ``R(AB)``, kernel ``N(B)``) exist;
    4. ``R(AB)`` and ``N(B)`` are complementary and ``A`` restricted to
       ``R(B) -> R(AB)`` is invertible.

    See :func:`cor43_literal_projector` for the stronger single-projector
    condition ``N(P) = N(BA) = N(B)``, ``R(P) = R(AB) = R(B)``.
    """
    if not (A.is_square and B.is_square and A.shape == B.shape):
        raise DimensionError("cor43_check needs square matrices of one size")
    one = inverse_along(A, B) is not None

    RB, NBA = range_of(B), nullspace_of(B @ A)
    cand = projector_onto_along(RB, NBA)
    two = cand is not None and all(ok for _, ok in polar_along_conditions(A, B, cand.matrix))

    RAB, NB = range_of(A @ B), nullspace_of(B)
    Q = projector_onto_along(RAB, NB)
    three = cand is not None and Q is not None

    four = is_complementary(RAB, NB) and two_sided_inverse(restricted_map(A, B)) is not None
    return one, two, three, four


def cor43_literal_projector(A, B):
    """Whether one projector has ``N(P) = N(BA) = N(B)`` and ``R(P) = R(AB) = R(B)``.

    This is strictly stronger than invertibility along ``B``: for
    ``A = [[1,0],[1,1]]``, ``B = [[1,0],[0,0]]`` the inverse along ``B``
    exists (it is ``B``) while ``R(AB) != R(B)``.
    """
    NBA, NB = nullspace_of(B @ A), nullspace_of(B)
    RAB, RB = range_of(A @ B), range_of(B)
    if not (NBA == NB and RAB == RB):
        return False
    return projector_onto_along(RB, NB) is not None


def block_representation(A, P, Q):
    """Blocks of ``A`` from ``R(P) + N(P)`` to ``R(Q) + N(Q)``, for reports."""
    I = identity(A.field, A.rows)
    return {
        "QAP": Q @ A @ P,
        "QA(I-P)": Q @ A @ (I - P),
        "(I-Q)AP": (I - Q) @ A @ P,
        "(I-Q)A(I-P)": (I - Q) @ A @ (I - P),
    }


def spectral_candidates(a, b, c):
    """Projectors that any (b,c)-spectral idempotents of ``a`` must equal.

    A left idempotent has range ``R(b)`` and kernel ``N(ca)``; a right one has
    range ``R(ab)`` and kernel ``N(c)``.  Returns ``(P, Q)`` matrices, with
    ``None`` where the subspaces are not complementary.
    """
    P = projector_onto_along(range_of(b), nullspace_of(c @ a))
    Q = projector_onto_along(range_of(a @ b), nullspace_of(c))
    return (P.matrix if P else None), (Q.matrix if Q else None)


def polar_by_projectors(a, b, c):
    """Decide (b,c)-polarity without computing the (b,c)-inverse."""
    P, Q = spectral_candidates(a, b, c)
    return P is not None and Q is not None and verify_bc_polar(a, b, c, P, Q)


def dual_polar_by_projectors(a, b, c):
    """Decide dual (b,c)-polarity without computing the (c,b)-inverse."""
    R = projector_onto_along(range_of(a @ c), nullspace_of(b))
    S = projector_onto_along(range_of(c), nullspace_of(b @ a))
    return (
        R is not None
        and S is not None
        and verify_dual_bc_polar(a, b, c, R.matrix, S.matrix)
    )
