from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cousinet.adams import catalogue, catalogue_names
from cousinet.atcat import (
    AtMorphism,
    AtObject,
    b_object,
    b_transition,
    c_k_cokernel,
    direct_sum,
    eval_via_colim,
    hom_at,
    hom_by_adjunction,
    mk_a,
    P2,
    mk_f,
    product,
)
from cousinet.kcmod import Cyc, Dual, KcModule
from cousinet.polymod import ArtinianModule, FGModule
from cousinet.rings import G1, G2, TRIVIAL1, TRIVIAL2, circle

atoms = st.one_of(
    st.builds(Cyc, st.integers(-5, 5), st.integers(1, 3)),
    st.builds(Dual, st.integers(-5, 5)),
)


def atom_hom(A, B, d):
    """dim of degree-d k[c]-maps Σ^d A -> B between atoms, from the module structure."""
    e = A.shift + d  # where the generator (or every element) of Σ^d A sits
    if isinstance(A, Cyc):
        if isinstance(B, Cyc):
            # the generator goes to c^j g_B with j >= m - n so that c^n kills it
            return int(any(B.shift - 2 * j == e for j in range(max(0, B.n - A.n), B.n)))
        # in k[c]^∨ the elements killed by c^n sit in degrees b, ..., b + 2(n - 1)
        return int(B.shift <= e <= B.shift + 2 * (A.n - 1) and (e - B.shift) % 2 == 0)
    if isinstance(B, Cyc):
        return 0  # divisible into finite length
    # End(k[c]^∨) = k[[c]]: multiplication by c^j lowers the dual's index by 2j
    return int(B.shift >= e and (B.shift - e) % 2 == 0)


def kc_hom(S, T, d):
    return sum(atom_hom(a, b, d) for a in S.atoms for b in T.atoms)


@given(st.lists(atoms, min_size=1, max_size=3), st.lists(atoms, min_size=1, max_size=3), st.integers(-4, 4))
def test_hom_into_a1_is_kc_hom(src, tgt, d):
    S, T = KcModule(tuple(src)), KcModule(tuple(tgt))
    X, Y = mk_f(TRIVIAL1, S), mk_a(TRIVIAL1, T)
    want = kc_hom(S, T, d)
    assert hom_at(X, Y, d).dim == want
    assert hom_by_adjunction(X, Y, d) == want


@given(st.lists(atoms, min_size=1, max_size=3), st.lists(atoms, min_size=1, max_size=2), st.integers(-3, 3))
def test_two_routes_agree_on_f1(src, tgt, d):
    X = mk_a(TRIVIAL1, KcModule(tuple(src)))
    Y = mk_f(TRIVIAL1, KcModule(tuple(tgt)))
    assert hom_at(X, Y, d).dim == hom_by_adjunction(X, Y, d)


def test_hom_between_geometric_objects():
    X = mk_f(G1, 1)
    assert [hom_at(X, X, d).dim for d in range(-3, 4)] == [0, 1, 0, 1, 0, 1, 0]


def test_basis_morphisms_are_compatible_and_compose():
    X = catalogue("S0").obj
    Y = mk_a(TRIVIAL1, KcModule.of(Dual(0), Cyc(2, 2)))
    for f in hom_at(X, Y, 0).basis:
        assert f.is_compatible()
        g = f.then(AtMorphism.identity(Y))
        assert g.is_compatible() and (g + f.scale(-1)).is_zero()


def test_cokernel_at_one():
    assert c_k_cokernel(mk_a(TRIVIAL1, KcModule.of(Dual(0))), "1").is_zero()
    T = KcModule.of(Cyc(0, 2), Dual(1))
    assert c_k_cokernel(mk_f(TRIVIAL1, T), "1").atoms == T.atoms
    # S^0: the unit string hits the whole graded dual
    assert c_k_cokernel(catalogue("S0").obj, "1").is_zero()


def test_invariants_of_standard_objects():
    for name in catalogue_names():
        assert catalogue(name).obj.invariants().ok


def test_products_are_sums():
    X, Y = catalogue("S0").obj, catalogue("G+").obj
    assert product([X, Y]).same_as(direct_sum(X, Y))


def test_b_objects_and_transitions():
    assert b_object(G1, 2, 1).same_as(catalogue("S", -2).obj)
    assert b_object(TRIVIAL1, 0, 3).same_as(mk_f(TRIVIAL1, KcModule.of(Cyc(0, 3))))
    assert b_object(TRIVIAL1, 0, 0).is_zero()
    for K, m, n in ((TRIVIAL1, 0, 2), (G1, 1, 1)):
        assert b_transition(K, m, n).is_compatible()


@pytest.mark.parametrize("name", catalogue_names())
@pytest.mark.parametrize("K", ["G", "1"])
def test_eval_recovers_components(name, K):
    cert = eval_via_colim(catalogue(name).obj, K, (-6, 6))
    assert cert.iso, cert


@pytest.mark.parametrize(
    "X,K",
    [
        (mk_f(TRIVIAL2, ArtinianModule(FGModule.koszul_quotient(P2, 2))), TRIVIAL2),
        (mk_f(circle(1, 1), KcModule.of(Cyc(0, 3))), circle(1, 1)),
        (mk_f(G2, 2), G2),
    ],
)
def test_eval_rank2(X, K):
    assert eval_via_colim(X, K, (-6, 6)).iso


def test_rank2_hom_adjunction():
    k = ArtinianModule(FGModule.residue_field(P2))
    N = ArtinianModule(FGModule.koszul_quotient(P2, 2))
    # Hom(f_1 k, a_1 N) = Hom(k, N): the socle of N = (P/(x^2,y^2))^∨, one class in degree 0
    assert [hom_by_adjunction(mk_f(TRIVIAL2, k), mk_a(TRIVIAL2, N), d) for d in (-2, 0, 2)] == [0, 1, 0]


def test_rejects_bad_q():
    with pytest.raises(ValueError):
        AtObject.make([1], KcModule.of(Dual(0)), [[Fraction(1)]])
