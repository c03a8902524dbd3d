import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cousinet.kcmod import Cyc, Dual, KcModule
from cousinet.polymod import ArtinianModule, FGModule, betti, free_resolution, projective_dimension
from cousinet.rings import (
    G2,
    TRIVIAL2,
    GradingError,
    LinearForm,
    PolyRing,
    circle,
    sample_circles,
    syzygy_basis,
)

P = PolyRing(("x", "y"))
x, y = P.gen(0), P.gen(1)


def monomials_in_box(w, bounds):
    """Monomials x^a y^b of total weight w with a < bounds[0], b < bounds[1]."""
    return sum(1 for a in range(bounds[0]) for b in range(bounds[1]) if a + b == w)


# -- subgroups and forms -----------------------------------------------------


def test_subgroup_lattice():
    for K in sample_circles():
        assert G2.contains(K) and K.contains(TRIVIAL2)
        assert K.dim == 1 and K.codim == 1
    assert circle(1, 1) == circle(-1, -1)
    assert not circle(1, 0).contains(circle(0, 1))


def test_linear_forms_are_normalized():
    assert LinearForm((2, 4)) == LinearForm((1, 2))
    assert str(LinearForm((0, -3))) == str(LinearForm((0, 1)))


def test_polynomial_arithmetic():
    f = (x + y) ** 2
    assert f == x * x + 2 * x * y + y * y
    assert f.is_homogeneous() and f.weight == 2
    assert not (x + y * y).is_homogeneous()


# -- syzygies ----------------------------------------------------------------


def test_syzygies_of_mixed_weight_row():
    # (x, y^3, xy): a row whose entries have different weights
    gens = syzygy_basis([[x, y ** 3, x * y]], P, [1, 3, 2])
    for _, col in gens:
        assert (x * col[0] + y ** 3 * col[1] + x * y * col[2]).is_zero()
    # the module of syzygies needs two generators: y e1 - e3 and y^2 e3 - x e2
    assert sorted(w for w, _ in gens) == [2, 4]


def test_inhomogeneous_matrix_is_rejected():
    with pytest.raises(GradingError):
        syzygy_basis([[x, y * y]], P, [0, 0])


# -- k[c]-modules ------------------------------------------------------------


@given(st.integers(-8, 8), st.integers(1, 5), st.integers(-20, 20))
def test_cyclic_degrees(a, n, d):
    T = KcModule.of(Cyc(a, n))
    want = 1 if d <= a and (a - d) % 2 == 0 and (a - d) // 2 < n else 0
    assert T.dim(d) == want


@given(st.integers(-8, 8), st.integers(-20, 20))
def test_dual_degrees(a, d):
    T = KcModule.of(Dual(a))
    assert T.dim(d) == (1 if d >= a and (d - a) % 2 == 0 else 0)


def test_kc_injective_dimension():
    assert KcModule.of(Dual(0), Dual(3)).injective_dimension() == 0
    assert KcModule.of(Dual(0), Cyc(1, 2)).injective_dimension() == 1
    assert KcModule().is_zero()


# -- modules over k[x,y] -----------------------------------------------------


@pytest.mark.parametrize("n", [1, 2, 3])
def test_koszul_quotient_dims_and_betti(n):
    N = FGModule.koszul_quotient(P, n)
    for w in range(0, 2 * n + 1):
        assert N.dim(-2 * w) == monomials_in_box(w, (n, n))
        assert N.dim(-2 * w + 1) == 0
    assert betti(N) == [{0: 1}, {-2 * n: 2}, {-4 * n: 1}]
    assert projective_dimension(N) == 2


@pytest.mark.parametrize(
    "gens",
    [[(1, 0)], [(2, 0), (0, 3), (1, 1)], [(1, 0), (0, 3), (1, 1)], [(3, 0), (1, 2), (0, 4)]],
)
def test_free_resolution_is_exact_on_hilbert_functions(gens):
    N = FGModule.monomial_quotient(P, gens)
    res = free_resolution(N)
    for w in range(0, 10):
        d = -2 * w
        alt = sum(
            (-1) ** s * sum(monomials_in_box(w + g // 2, (99, 99)) for g in res.degrees[s] if w + g // 2 >= 0)
            for s in range(res.length + 1)
        )
        brute = sum(
            1
            for a, b in itertools.product(range(w + 1), repeat=2)
            if a + b == w and not any(a >= g[0] and b >= g[1] for g in gens)
        )
        assert N.dim(d) == brute
        assert alt == brute


def test_artinian_duals():
    A = ArtinianModule(FGModule.koszul_quotient(P, 2))
    # the graded dual lives in nonnegative degrees, top at 4
    assert [A.dim(d) for d in (0, 2, 4, 6)] == [1, 2, 1, 0]
    assert A.injective_dimension() == 2
    assert ArtinianModule(FGModule.free(P, [0])).is_injective()
    assert ArtinianModule(FGModule.monomial_quotient(P, [(1, 0)])).injective_dimension() == 1
