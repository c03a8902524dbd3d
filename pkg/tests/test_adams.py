import pytest

from cousinet.adams import UnknownEntryError, adams_e2, catalogue, catalogue_names
from cousinet.atcat import b_object, mk_a, mk_f
from cousinet.kcmod import Cyc, Dual, KcModule
from cousinet.parse import parse_object
from cousinet.rings import G1, TRIVIAL1

W = (-6, 6)
EVEN = [t for t in range(W[0], W[1] + 1) if t % 2 == 0]


def test_sphere_is_injective_a1():
    # q is the projection t -> t/k[c] = Σ^2 k[c]^∨, exactly the unit of a_1
    assert catalogue("S0").obj.same_as(mk_a(TRIVIAL1, KcModule.of(Dual(2))))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_representation_spheres_are_b_objects(n):
    assert catalogue("S", -n).obj.same_as(b_object(G1, n, 1))


def test_standard_spaces():
    assert catalogue("EG+").obj.same_as(mk_f(TRIVIAL1, KcModule.of(Dual(2))))
    assert catalogue("EF~").obj.same_as(mk_f(G1, 1))
    assert catalogue("G+").obj.same_as(mk_f(TRIVIAL1, KcModule.of(Cyc(2, 1))))
    assert catalogue("DS+", 2).obj.same_as(mk_f(TRIVIAL1, KcModule.of(Cyc(0, 2))))
    assert catalogue("DS+(3)").obj.same_as(catalogue("DS+", 3).obj)


def test_unknown_entries():
    with pytest.raises(UnknownEntryError):
        catalogue("nope")
    with pytest.raises(UnknownEntryError):
        catalogue("DS+", 0)


@pytest.mark.parametrize(
    "X,Y,want",
    [
        # Hom into the injective S0 is End(Σ^2 k[c]^∨) on the torsion part
        ("S0", "S0", {(0, t): 1 for t in EVEN if t <= 0}),
        ("EG+", "S0", {(0, t): 1 for t in EVEN if t <= 0}),
        ("EF~", "S0", {}),
        # f_G(Q) = a_G(Q) is injective and t ⊗ Q is even periodic
        ("S0", "EF~", {(0, t): 1 for t in EVEN}),
        # a_1(Σ^2 k[c]^∨) -> a_G(Q) is onto Hom exactly in degrees t <= 0
        ("S0", "EG+", {(1, t): 1 for t in EVEN if t > 0}),
        # Ext over k[c] of Q with itself
        ("G+", "G+", {(0, 0): 1, (1, 2): 1}),
    ],
)
def test_e2_goldens(X, Y, want):
    assert adams_e2(X, Y, W).table.nonzero() == want


@pytest.mark.parametrize("X", catalogue_names())
@pytest.mark.parametrize("Y", ["S0", "EG+", "G+", "DS+(2)", "S(-1)"])
def test_rank1_pages_vanish_above_two(X, Y):
    page = adams_e2(X, Y, (-4, 4))
    assert page.vanishes_above(2)
    d = page.table.dims
    for s, t in page.d2_candidates():
        assert s == 0 and d[(0, t)] and d[(2, t + 1)]


@pytest.mark.parametrize("seed", [0, 1, 5])
def test_e2_independent_of_resolution(seed):
    a = adams_e2("DS+(2)", "EG+", W)
    b = adams_e2("DS+(2)", "EG+", W, shuffle_seed=seed)
    assert a.tsv() == b.tsv()


def test_rank2_page_vanishes_above_four():
    X = parse_object("f(1,(k))", rank=2)
    Y = parse_object("a(1,(koszul(2)))", rank=2)
    page = adams_e2(X, Y, (-10, 10))
    assert page.rank == 2 and page.vanishes_above(4)


def test_pretty_and_tsv_headers():
    page = adams_e2("G+", "G+", (-2, 2))
    assert page.tsv().startswith("# cousinet-v1\n")
    text = page.pretty()
    assert "s=1 |" in text and "edge Ext^0" in text
