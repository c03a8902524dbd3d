import pytest

from cousinet.acceptance import rank1_corpus, rank2_corpus
from cousinet.atcat import hom_at, mk_a, mk_f
from cousinet.kcmod import Cyc, Dual, KcModule
from cousinet.parse import parse_object
from cousinet.resolve import ext_at, inj_res_general, inj_res_sf_rank1, shuffle_resolution
from cousinet.rings import TRIVIAL1

WINDOW = (-8, 8)
CORPUS = rank1_corpus(size=20)


@pytest.mark.parametrize("i", range(len(CORPUS)))
def test_rank1_resolution_exact_and_short(i):
    res = inj_res_sf_rank1(CORPUS[i])
    assert res.verify(WINDOW)
    assert res.length <= 2


@pytest.mark.parametrize("seed", range(4))
def test_shuffled_resolution_is_exact_and_gives_same_ext(seed):
    Y = CORPUS[seed]
    X = CORPUS[-1 - seed]
    res = inj_res_sf_rank1(Y)
    sh = shuffle_resolution(res, seed)
    assert sh.verify(WINDOW)
    assert sh.length >= res.length
    assert ext_at(X, Y, WINDOW).dims == ext_at(X, Y, WINDOW, resolution=sh).dims


@pytest.mark.parametrize("i", range(0, 20, 4))
def test_ext0_is_hom(i):
    X, Y = CORPUS[i], CORPUS[i + 1]
    E = ext_at(X, Y, (-4, 4))
    assert E.row(0) == {t: hom_at(X, Y, t).dim for t in range(-4, 5)}
    assert E.max_s <= 2


def test_ext_into_injective_vanishes():
    Y = mk_a(TRIVIAL1, KcModule.of(Dual(0), Dual(3)))
    for X in CORPUS[:6]:
        assert ext_at(X, Y, (-4, 4)).max_s <= 0


def test_ext_of_f1_is_ext_over_kc():
    # Q -> k[c]^∨ -> Σ^2 k[c]^∨, and f_1 sees nothing at G
    X = mk_f(TRIVIAL1, KcModule.of(Cyc(0, 1)))
    assert ext_at(X, X, (-4, 4)).nonzero() == {(0, 0): 1, (1, 2): 1}


@pytest.mark.parametrize("n", [1, 2, 3])
def test_rank2_ext_is_koszul_betti(n):
    # k against P/(x^n, y^n): a regular sequence of two generators in degree -2n
    X = parse_object("f(1,(k))", rank=2)
    Y = parse_object(f"a(1,(koszul({n})))", rank=2)
    assert ext_at(X, Y, (-12, 12)).nonzero() == {(0, 0): 1, (1, 2 * n): 2, (2, 4 * n): 1}


def test_rank2_ext_mixed_regular_sequence():
    X = parse_object("f(1,(k))", rank=2)
    Y = parse_object("a(1,(quot(x,y^2)))", rank=2)
    assert ext_at(X, Y, (-12, 12)).nonzero() == {(0, 0): 1, (1, 2): 1, (1, 4): 1, (2, 6): 1}


@pytest.mark.parametrize("i", range(8))
def test_rank2_resolutions_certified(i):
    X = rank2_corpus(size=8)[i]
    res = inj_res_general(X)
    assert res.certified, [c.note for c in res.certificates if not c.ok]
    assert res.length <= 4
    assert [c.stage for c in res.certificates] == list(range(len(res.certificates)))
