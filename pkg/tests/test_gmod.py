import pytest
from hypothesis import given
from hypothesis import strategies as st

from cousinet.gmod import (
    KC,
    CyclicTorsion,
    Free,
    GradedDual,
    Sum,
    Suspension,
    Tate,
    dumps,
    gamma_torsion,
    loads,
    matlis_dual,
    realize,
)
from cousinet.rings import LinearForm

C = [LinearForm((1,))]
W = (-8, 8)


def dims(M, window=W):
    return [M.dim(d) for d in range(window[0], window[1] + 1)]


def even(pred, window=W):
    return [1 if d % 2 == 0 and pred(d) else 0 for d in range(window[0], window[1] + 1)]


def test_standard_atoms():
    assert dims(realize(Tate(), W)) == even(lambda d: True)
    assert dims(realize(Free(0, KC), W)) == even(lambda d: d <= 0)
    assert dims(realize(GradedDual(KC), W)) == even(lambda d: d >= 0)
    assert dims(realize(CyclicTorsion(2, 3), W)) == even(lambda d: -2 <= d <= 2)


@given(st.integers(-5, 5), st.integers(1, 4), st.integers(-3, 3))
def test_suspension_shifts(a, n, s):
    M = realize(Suspension(s, CyclicTorsion(a, n)), W)
    N = realize(CyclicTorsion(a + s, n), W)
    assert dims(M) == dims(N)


def test_torsion_functor():
    # Γ_c kills the free part and the Tate module, keeps torsion
    assert not any(dims(gamma_torsion(realize(Tate(), W), C)))
    assert not any(dims(gamma_torsion(realize(Free(0, KC), W), C)))
    mixed = realize(Sum([Free(0, KC), CyclicTorsion(0, 2)]), W)
    assert dims(gamma_torsion(mixed, C)) == even(lambda d: -2 <= d <= 0)
    dual = realize(GradedDual(KC), W)
    assert dims(gamma_torsion(dual, C)) == dims(dual)


@pytest.mark.parametrize("atom", [CyclicTorsion(2, 3), CyclicTorsion(-1, 2), Sum([CyclicTorsion(0, 1), CyclicTorsion(3, 2)])])
def test_matlis_dual_reflects_degrees(atom):
    M = realize(atom, W)
    D = matlis_dual(M)
    assert [D.dim(-d) for d in range(W[0], W[1] + 1)] == dims(M)


@pytest.mark.parametrize("atom", [Tate(), GradedDual(KC), CyclicTorsion(1, 3), Sum([Free(2, KC), GradedDual(KC)])])
def test_text_roundtrip(atom):
    M = realize(atom, W)
    text = dumps(M)
    assert text.startswith("# cousinet-v1")
    N = loads(text)
    assert dumps(N) == text
