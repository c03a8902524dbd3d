import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cousinet.gmod import KC, Free, GradedDual, TruncatedFamily
from cousinet.homalg import (
    ext_tate,
    gorenstein_embed,
    koszul_self_duality,
    residue,
    stable_koszul_lcoh,
)
from cousinet.kcmod import Cyc, Dual, KcModule
from cousinet.polymod import FGModule
from cousinet.qlinalg import Mat
from cousinet.rings import TRIVIAL1, TRIVIAL2, LinearForm, PolyRing, circle
from cousinet.towers import DegreeTower, rlim_tower, tower_lim_lim1

P = PolyRing(("x", "y"))


# -- towers ------------------------------------------------------------------


def test_constant_tower():
    t = DegreeTower((2, 2, 2), (Mat.identity(2), Mat.identity(2)), 0)
    r = tower_lim_lim1(t)
    assert (r.lim, r.lim1, r.stabilized) == (2, 0, True)


def test_zero_maps():
    # Q <-0- Q <- 0 <- 0 ...: the tower is zero from stage 2 on
    t = DegreeTower((1, 1, 0, 0), (Mat.zeros(1, 1), Mat.zeros(1, 0), Mat.zeros(0, 0)), 2)
    r = tower_lim_lim1(t)
    assert (r.lim, r.lim1, r.stabilized) == (0, 0, True)


@pytest.mark.parametrize("N", [2, 4, 7])
def test_witness_tower_closed_form(N):
    t = rlim_tower(TruncatedFamily(N), 2, N + 2)
    assert t.image_dims(0) == [max(0, N - k) for k in range(N + 3)]
    assert t.constant_from == N
    assert not rlim_tower(TruncatedFamily(N), 2, N - 1).stabilized


def test_dual_tower_is_surjective():
    for d in range(0, 8, 2):
        t = rlim_tower(GradedDual(KC), d, 6)
        assert t.is_surjective()
        r = tower_lim_lim1(t)
        assert (r.lim, r.lim1) == (1, 0)


# -- Ext over the Tate ring --------------------------------------------------


atoms = st.one_of(
    st.builds(Cyc, st.integers(-6, 6), st.integers(1, 4)),
    st.builds(Dual, st.integers(-6, 6)),
)


@given(st.lists(atoms, min_size=1, max_size=4))
def test_ext_tate_two_routes(atom_list):
    T = KcModule(tuple(atom_list))
    et = ext_tate(T, (-8, 8))
    assert et.agree
    for d in range(-8, 9):
        # Hom(t, T)_d sees one copy of Q per graded dual of the right parity
        want = sum(1 for a in atom_list if isinstance(a, Dual) and (d - a.shift) % 2 == 0)
        assert et.hom(d) == want
        assert et.ext1(d) == 0


# -- local cohomology --------------------------------------------------------


def test_top_local_cohomology_of_the_plane():
    lc = stable_koszul_lcoh(Free(0, P), (0, 16))
    assert lc.nonzero_degrees() == [2]
    for d in range(0, 17):
        brute = sum(1 for a, b in itertools.product(range(1, 9), repeat=2) if 2 * (a + b) == d)
        assert lc.modules[2].dim(d) == brute


def test_local_cohomology_of_a_line():
    # H_m(P/(x)) = H^1_(y)(Q[y]) spanned by y^{-b}, b >= 1
    lc = stable_koszul_lcoh(FGModule.monomial_quotient(P, [(1, 0)]), (-6, 10))
    assert lc.nonzero_degrees() == [1]
    assert [lc.modules[1].dim(d) for d in range(-6, 11)] == [1 if d >= 2 and d % 2 == 0 else 0 for d in range(-6, 11)]


def test_finite_length_module_is_its_own_h0():
    N = FGModule.koszul_quotient(P, 2)
    lc = stable_koszul_lcoh(N, (-8, 2))
    assert lc.nonzero_degrees() == [0]
    assert all(lc.modules[0].dim(d) == N.dim(d) for d in range(-8, 3))


def test_residue():
    assert residue({(-1, -1): 1}, 2) == 1
    assert residue({(-2, -1): 1, (-1, -1): 3}, 2) == 3
    assert residue({(-1,): 5}, 1) == 5


# -- dualities ---------------------------------------------------------------


@pytest.mark.parametrize("K", [TRIVIAL1, TRIVIAL2])
def test_gorenstein_at_the_trivial_subgroup(K):
    assert gorenstein_embed(K, (), (-10, 10)).iso


@pytest.mark.parametrize("K,forms", [(circle(1, 0), [(0, 1)]), (circle(1, 1), [(1, 0), (0, 1)])])
def test_gorenstein_at_a_circle_stabilizes(K, forms):
    S = tuple(LinearForm(f) for f in forms)
    a = gorenstein_embed(K, S, (-10, 10))
    b = gorenstein_embed(K, S + (LinearForm((1, 2)),), (-10, 10))
    assert a.iso and b.iso and a.same_as(b)


@pytest.mark.parametrize("s,n", [(1, 1), (1, 4), (2, 2), (2, 3)])
def test_koszul_self_duality(s, n):
    kd = koszul_self_duality(PolyRing(("x", "y")[:s]), n)
    assert kd.invertible and kd.generated
    assert kd.shift == -2 * s * (n - 1)
    assert kd.ann_dim == n ** s
