import itertools

import numpy as np
import pytest

from bcpolar.field import GF, QQ
from bcpolar.linmem import (
    SandwichWitness,
    commutant_basis,
    in_commutant,
    in_double_commutant,
    in_set,
    sandwich_kernel,
    solve_sandwich,
)
from bcpolar.matrix import DimensionError, Mat, identity, random_matrix


def all_mats(p, n):
    f = GF(p)
    return [Mat(np.array(c).reshape(n, n), f) for c in itertools.product(range(p), repeat=n * n)]


F2_MATS = all_mats(2, 2)


def test_sandwich_membership_matches_enumeration_f2():
    rng = np.random.default_rng(0)
    for _ in range(60):
        B, C = (F2_MATS[i] for i in rng.integers(16, size=2))
        reachable = {B @ X @ C for X in F2_MATS}
        for P in F2_MATS:
            assert in_set(P, B, C) == (P in reachable)


def test_sandwich_membership_matches_enumeration_f3():
    f3 = all_mats(3, 2)
    rng = np.random.default_rng(1)
    for _ in range(8):
        B, C = (f3[i] for i in rng.integers(len(f3), size=2))
        reachable = {B @ X @ C for X in f3}
        for P in f3[::7]:
            assert in_set(P, B, C) == (P in reachable)


def test_witness_is_certified(field, rng):
    for _ in range(20):
        B, X0, C = (random_matrix(field, rng, 3) for _ in range(3))
        P = B @ X0 @ C
        w = solve_sandwich(B, C, P)
        assert w.B @ w.X @ w.C == P


def test_bad_witness_rejected():
    I = identity(QQ, 2)
    with pytest.raises(ValueError):
        SandwichWitness(I, I, I, I.scale(2))


def test_rectangular_sandwich():
    B = Mat([[1], [0]])
    C = Mat([[1, 1, 0]])
    assert in_set(Mat([[2, 2, 0], [0, 0, 0]]), B, C)
    assert not in_set(Mat([[1, 0, 0], [0, 0, 0]]), B, C)
    with pytest.raises(DimensionError):
        in_set(Mat([[1]]), B, C)


def test_sandwich_kernel(field, rng):
    B = random_matrix(field, rng, 3, 2)
    C = Mat([[1, 0, 0], [2, 0, 0]], field)
    basis = sandwich_kernel(B, C)
    for Z in basis:
        assert (B @ Z @ C).is_zero()


def test_commutant_matches_enumeration_f2():
    for A in F2_MATS:
        comm = {X for X in F2_MATS if in_commutant(X, A)}
        basis = commutant_basis(A)
        span = set()
        for coeffs in itertools.product(range(2), repeat=len(basis)):
            S = Mat([[0, 0], [0, 0]], GF(2))
            for c, W in zip(coeffs, basis):
                S = S + W.scale(c)
            span.add(S)
        assert span == comm


def test_double_commutant_matches_enumeration_f2():
    for A in F2_MATS:
        comm = [X for X in F2_MATS if in_commutant(X, A)]
        for P in F2_MATS:
            expected = all(P @ Y == Y @ P for Y in comm)
            assert in_double_commutant(P, A) == expected


def test_double_commutant_contains_polynomials(field, rng):
    A = random_matrix(field, rng, 4)
    P = A @ A - A.scale(3) + identity(field, 4)
    assert in_double_commutant(P, A)


def test_non_square_commutant():
    with pytest.raises(DimensionError):
        commutant_basis(Mat([[1, 2]]))
