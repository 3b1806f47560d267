import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bcpolar.field import GF, QQ, FieldMismatchError
from bcpolar.matrix import (
    DimensionError,
    Mat,
    hstack,
    identity,
    kernel_basis,
    kron,
    left_inverse,
    random_matrix,
    rank,
    rank_factorize,
    right_inverse,
    rref,
    solve_left,
    solve_right,
    two_sided_inverse,
    unvec,
    vec,
    vstack,
    zeros,
)


@st.composite
def small_mats(draw, field, max_dim=4):
    m = draw(st.integers(1, max_dim))
    n = draw(st.integers(1, max_dim))
    cells = draw(st.lists(st.integers(-4, 4), min_size=m * n, max_size=m * n))
    return Mat(np.array(cells, dtype=object).reshape(m, n).tolist(), field)


def test_construction_and_equality():
    A = Mat([[1, "1/2"], [0, -3]])
    assert A[0, 1] == Fraction(1, 2)
    assert A == Mat([[1, Fraction(1, 2)], [0, -3]])
    assert A != Mat([[1, 0], [0, -3]])
    assert Mat([[8, -1]], GF(7)) == Mat([[1, 6]], GF(7))
    assert hash(Mat([[8]], GF(7))) == hash(Mat([[1]], GF(7)))


def test_entries_are_field_scalars():
    m = Mat([[3]], GF(5))
    assert m[0, 0].p == 5 and m[0, 0].value == 3


def test_immutable():
    A = Mat([[1, 2], [3, 4]])
    with pytest.raises(AttributeError):
        A.field = GF(3)
    with pytest.raises(ValueError):
        A.array[0, 0] = 5


def test_field_mismatch():
    with pytest.raises(FieldMismatchError):
        Mat([[1]], QQ) + Mat([[1]], GF(3))
    with pytest.raises(FieldMismatchError):
        Mat([[1]], GF(5)) @ Mat([[1]], GF(7))


def test_shape_errors():
    with pytest.raises(DimensionError):
        Mat([[1, 2]]) @ Mat([[1, 2]])
    with pytest.raises(DimensionError):
        Mat([[1, 2]]) + Mat([[1], [2]])
    with pytest.raises(DimensionError):
        Mat([[1, 2]]) ** 2


def test_powers_and_zero_power():
    N = Mat([[0, 1], [0, 0]])
    assert (N**2).is_zero()
    assert (N**0).is_identity()


def test_empty_inner_dimension():
    A = zeros(QQ, 2, 0)
    B = zeros(QQ, 0, 3)
    assert (A @ B) == zeros(QQ, 2, 3)


def test_json_round_trip(field):
    A = Mat([[1, -2], [3, 4]], field)
    assert Mat.from_json(A.to_json()) == A
    with pytest.raises(ValueError):
        Mat.from_json({"field": "Q", "rows": 1, "cols": 2, "entries": [["1"]]})


def test_rref_known():
    R, piv, E = rref(Mat([[0, 2, 4], [1, 1, 1], [1, 3, 5]]))
    assert piv == [0, 1]
    assert R == Mat([[1, 0, -1], [0, 1, 2], [0, 0, 0]])
    assert E @ Mat([[0, 2, 4], [1, 1, 1], [1, 3, 5]]) == R


def test_rank_against_sympy():
    import sympy

    rng = np.random.default_rng(5)
    for _ in range(40):
        m, n = rng.integers(1, 6, size=2)
        A = random_matrix(QQ, rng, int(m), int(n), bound=2)
        S = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in A.array])
        assert rank(A) == S.rank()


def test_rank_over_gf2_brute_force():
    # rank = log2 |image| over GF(2)
    f = GF(2)
    for cells in itertools.product(range(2), repeat=6):
        A = Mat(np.array(cells).reshape(2, 3), f)
        image = {tuple((A @ Mat(np.array(v).reshape(3, 1), f)).array[:, 0]) for v in itertools.product(range(2), repeat=3)}
        assert len(image) == 2 ** rank(A)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_solve_right_is_exact(data):
    f = data.draw(st.sampled_from([QQ, GF(7), GF(2)]))
    A = data.draw(small_mats(f))
    X0 = data.draw(small_mats(f))
    if X0.rows != A.cols:
        return
    B = A @ X0
    X = solve_right(A, B)
    assert X is not None and A @ X == B


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_kernel_and_rank_factorization(data):
    f = data.draw(st.sampled_from([QQ, GF(5)]))
    A = data.draw(small_mats(f))
    K = kernel_basis(A)
    assert (A @ K).is_zero()
    assert K.cols + rank(A) == A.cols
    F_, G, r = rank_factorize(A)
    assert F_ @ G == A
    assert rank(F_) == r == rank(G)
    if r:
        assert left_inverse(F_) @ F_ == identity(f, r)
        assert G @ right_inverse(G) == identity(f, r)


def test_inconsistent_solve():
    assert solve_right(Mat([[1, 1], [1, 1]]), Mat([[1], [2]])) is None
    assert solve_left(Mat([[1, 1], [1, 1]]), Mat([[1, 2]])) is None


def test_two_sided_inverse(field, rng):
    for _ in range(20):
        A = random_matrix(field, rng, 3)
        X = two_sided_inverse(A)
        if rank(A) == 3:
            assert A @ X == identity(field, 3) == X @ A
        else:
            assert X is None


def test_kron_vec_identity(field, rng):
    B = random_matrix(field, rng, 2, 3)
    X = random_matrix(field, rng, 3, 4)
    C = random_matrix(field, rng, 4, 2)
    assert vec(B @ X @ C) == kron(C.T, B) @ vec(X)
    assert unvec(vec(X), 3, 4) == X


def test_stacks():
    A, B = Mat([[1, 2]]), Mat([[3]])
    assert hstack(QQ, [A, B]) == Mat([[1, 2, 3]])
    assert vstack(QQ, [Mat([[1]]), Mat([[2]])]) == Mat([[1], [2]])
    with pytest.raises(DimensionError):
        vstack(QQ, [A, B])


def test_random_matrix_ranges(rng):
    A = random_matrix(GF(7), rng, 30)
    assert A.array.min() >= 0 and A.array.max() < 7
    Q = random_matrix(QQ, rng, 10, bound=2)
    assert all(-2 <= x <= 2 for x in Q.array.ravel())
