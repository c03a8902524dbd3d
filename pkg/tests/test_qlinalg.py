from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cousinet.qlinalg import GradedMap, GradedSpace, Mat, homology_at

small = st.integers(-3, 3)


@st.composite
def matrices(draw, max_dim=4):
    m = draw(st.integers(0, max_dim))
    n = draw(st.integers(0, max_dim))
    rows = [[draw(small) for _ in range(n)] for _ in range(m)]
    return Mat(rows, n)


def test_rank_of_known_matrices():
    assert Mat([[1, 2], [2, 4]], 2).rank() == 1
    assert Mat([[1, 0, 1], [0, 1, 1], [1, 1, 2]], 3).rank() == 2
    assert Mat.identity(4).rank() == 4
    assert Mat.zeros(3, 2).rank() == 0


def test_exact_inverse():
    A = Mat([[2, 1], [1, 1]], 2)
    assert A.inverse().rows == [[1, -1], [-1, 2]]
    B = Mat([[3]], 1)
    assert B.inverse().rows == [[Fraction(1, 3)]]


def test_solve_returns_none_off_the_column_space():
    A = Mat([[1, 1], [1, 1]], 2)
    assert A.solve([1, 2]) is None
    x = A.solve([2, 2])
    assert A.apply(x) == [2, 2]


@given(matrices())
def test_rank_nullity(A):
    assert A.rank() + len(A.nullspace()) == A.ncols


@given(matrices())
def test_nullspace_is_killed(A):
    for v in A.nullspace():
        assert all(x == 0 for x in A.apply(v))


@given(matrices())
def test_transpose_rank(A):
    assert A.rank() == A.T().rank()


@given(st.integers(1, 4), st.data())
def test_invertible_roundtrip(n, data):
    rows = [[data.draw(small) for _ in range(n)] for _ in range(n)]
    A = Mat(rows, n)
    if A.rank() < n:
        with pytest.raises(Exception):
            A.inverse()
    else:
        assert (A @ A.inverse()).rows == Mat.identity(n).rows


def test_homology_of_a_short_complex():
    # Q --(1,1)--> Q^2 --(1,-1)--> Q in degree 0: exact in the middle
    V = GradedSpace.from_dict(0, 0, {0: 1})
    W = GradedSpace.from_dict(0, 0, {0: 2})
    f = GradedMap(V, W, 0, {0: Mat([[1], [1]], 1)})
    g = GradedMap(W, V, 0, {0: Mat([[1, -1]], 2)})
    H = homology_at(f, g)
    assert H.space.dim(0) == 0
