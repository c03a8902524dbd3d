"""Subgroup lattice of a rank <= 2 torus and its polynomial rings.

All ring generators sit in cohomological degree -2.  Internally a monomial is
an exponent tuple and its *weight* is the sum of the exponents, so the
cohomological degree of a homogeneous polynomial is ``-2 * weight``.

A circle subgroup of the rank-2 torus is recorded as the kernel of a
primitive character ``(p, q)``; the quotient ``G/K`` is then a circle whose
cohomology generator inflates to the linear form ``p*x + q*y``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Iterable, Mapping, Sequence

from .qlinalg import Mat

__all__ = [
    "LatticeError",
    "GradingError",
    "NotEulerUnitError",
    "DenominatorNotAllowedError",
    "ConnSubgroup",
    "Subgroup",
    "G1",
    "G2",
    "TRIVIAL1",
    "TRIVIAL2",
    "circle",
    "sample_circles",
    "PolyRing",
    "Poly",
    "LinearForm",
    "EulerClass",
    "MultSet",
    "RingMap",
    "ring_of",
    "inflation",
    "euler_value",
    "euler_set",
    "syzygy_basis",
    "LocalizedRing",
    "LocFrac",
    "monomials",
    "adapted_basis",
]


class LatticeError(ValueError):
    pass


class GradingError(ValueError):
    pass


class NotEulerUnitError(ValueError):
    pass


class DenominatorNotAllowedError(ArithmeticError):
    """Division by a form outside the multiplicative closure of S."""


# --------------------------------------------------------------------------
# subgroups


def _canon_char(p: int, q: int) -> tuple[int, int]:
    if (p, q) == (0, 0):
        raise LatticeError("zero character does not define a circle")
    g = math.gcd(abs(p), abs(q))
    if g != 1:
        raise LatticeError(f"character ({p},{q}) is not primitive")
    if p < 0 or (p == 0 and q < 0):
        p, q = -p, -q
    return p, q


@dataclass(frozen=True, order=True)
class ConnSubgroup:
    """Connected subgroup: the whole torus, a circle, or the trivial group."""

    rank: int
    kind: str  # "G" | "circle" | "1"
    char: tuple[int, ...] = ()

    def __post_init__(self):
        if self.rank not in (1, 2):
            raise LatticeError("only ranks 1 and 2 are supported")
        if self.kind == "circle":
            if self.rank != 2:
                raise LatticeError("circle subgroups need rank 2")
            object.__setattr__(self, "char", _canon_char(*self.char))
        elif self.kind in ("G", "1"):
            if self.char:
                raise LatticeError("only circles carry a character")
        else:
            raise LatticeError(f"unknown subgroup kind {self.kind!r}")

    @property
    def dim(self) -> int:
        return {"G": self.rank, "circle": 1, "1": 0}[self.kind]

    @property
    def codim(self) -> int:
        return self.rank - self.dim

    def contains(self, other: "ConnSubgroup") -> bool:
        if self.rank != other.rank:
            raise LatticeError("subgroups of different tori")
        if self.kind == "G" or other.kind == "1":
            return True
        return self == other

    def __str__(self) -> str:
        if self.kind == "circle":
            return f"circle({self.char[0]},{self.char[1]})"
        return self.kind


G1 = ConnSubgroup(1, "G")
TRIVIAL1 = ConnSubgroup(1, "1")
G2 = ConnSubgroup(2, "G")
TRIVIAL2 = ConnSubgroup(2, "1")


def circle(p: int, q: int) -> ConnSubgroup:
    return ConnSubgroup(2, "circle", (p, q))


def sample_circles() -> list[ConnSubgroup]:
    return [circle(1, 0), circle(0, 1), circle(1, 1), circle(1, -1), circle(1, 2)]


@dataclass(frozen=True, order=True)
class Subgroup:
    """Closed subgroup for the full-isotropy variant.

    ``order`` is the order of the component group; only the rank-1 case
    (cyclic component groups of the trivial identity component) and
    connected subgroups (order 1) are modelled.
    """

    identity: ConnSubgroup
    order: int = 1

    def __post_init__(self):
        if self.order < 1:
            raise LatticeError("component group order must be positive")
        if self.order > 1 and not (self.identity.rank == 1 and self.identity.kind == "1"):
            raise LatticeError("finite parts are only modelled for cyclic subgroups of the circle")

    def cotoral_in(self, other: "Subgroup") -> bool:
        """``self`` cotoral in ``other``: other/self is a torus."""
        if not other.identity.contains(self.identity):
            return False
        if other.identity == self.identity:
            return other.order == self.order
        # other/self is a torus iff the finite parts agree after dividing
        # by the identity component; for C_n inside the circle this holds.
        if other.identity.kind == "G":
            return True
        return other.order == self.order

    def __str__(self) -> str:
        return str(self.identity) if self.order == 1 else f"C{self.order}"


# --------------------------------------------------------------------------
# polynomials


def monomials(nvars: int, weight: int) -> list[tuple[int, ...]]:
    """Exponent vectors of a given total weight, graded-lex descending."""
    if weight < 0:
        return []
    if nvars == 0:
        return [()] if weight == 0 else []
    out = []
    for first in range(weight, -1, -1):
        for rest in monomials(nvars - 1, weight - first):
            out.append((first,) + rest)
    return out


@dataclass(frozen=True)
class PolyRing:
    names: tuple[str, ...]

    @property
    def nvars(self) -> int:
        return len(self.names)

    def gen(self, i: int | str) -> "Poly":
        if isinstance(i, str):
            i = self.names.index(i)
        e = [0] * self.nvars
        e[i] = 1
        return Poly(self, {tuple(e): Fraction(1)})

    def one(self) -> "Poly":
        return Poly(self, {(0,) * self.nvars: Fraction(1)})

    def zero(self) -> "Poly":
        return Poly(self, {})

    def const(self, c) -> "Poly":
        return Poly(self, {(0,) * self.nvars: Fraction(c)})

    def __str__(self) -> str:
        return "Q[" + ",".join(self.names) + "]"


class Poly:
    """Sparse polynomial with exact rational coefficients."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: Mapping[tuple[int, ...], Fraction]):
        self.ring = ring
        self.terms = {e: Fraction(c) for e, c in terms.items() if c != 0}

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        return isinstance(other, Poly) and self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise ValueError("polynomials from different rings")
            return other
        return self.ring.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t.get(e, 0) + c
        return Poly(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        t: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, 0) + c1 * c2
        return Poly(self.ring, t)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        return reduce(lambda a, b: a * b, [self] * n, self.ring.one())

    def is_zero(self) -> bool:
        return not self.terms

    def weights(self) -> set[int]:
        return {sum(e) for e in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.weights()) <= 1

    @property
    def weight(self) -> int:
        w = self.weights()
        if len(w) != 1:
            raise GradingError(f"{self} is not homogeneous (or is zero)")
        return w.pop()

    @property
    def degree(self) -> int:
        """Cohomological degree (generators in degree -2)."""
        return -2 * self.weight

    def coeff(self, e: tuple[int, ...]) -> Fraction:
        return self.terms.get(tuple(e), Fraction(0))

    def substitute(self, target: PolyRing, images: Sequence["Poly"]) -> "Poly":
        out = target.zero()
        for e, c in self.terms.items():
            term = target.const(c)
            for img, k in zip(images, e):
                if k:
                    term = term * img**k
            out = out + term
        return out

    def divmod_linear(self, form: "Poly") -> tuple["Poly", "Poly"]:
        """Exact division by a linear form, returning (quotient, remainder)."""
        # pivot on the largest variable index with nonzero coefficient
        lead_var = min(i for i in range(self.ring.nvars) if form.coeff(_unit(self.ring.nvars, i)) != 0)
        lc = form.coeff(_unit(self.ring.nvars, lead_var))
        rem = self
        quo = self.ring.zero()
        while True:
            cand = [e for e in rem.terms if e[lead_var] > 0]
            if not cand:
                return quo, rem
            e = max(cand, key=lambda m: (sum(m), m))
            c = rem.terms[e] / lc
            q = list(e)
            q[lead_var] -= 1
            mono = Poly(self.ring, {tuple(q): c})
            quo = quo + mono
            rem = rem - mono * form

    def __repr__(self) -> str:
        return f"Poly({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=lambda m: (-sum(m), tuple(-x for x in m))):
            c = self.terms[e]
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(self.ring.names, e) if k
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def _unit(n: int, i: int) -> tuple[int, ...]:
    return tuple(int(k == i) for k in range(n))


# --------------------------------------------------------------------------
# rings attached to subgroups


def ring_of(K: ConnSubgroup) -> PolyRing:
    """H*(BG/K) with its fixed generator names."""
    if K.kind == "G":
        return PolyRing(())
    if K.rank == 1:
        return PolyRing(("c",))
    if K.kind == "circle":
        p, q = K.char
        return PolyRing((f"z{p}_{q}".replace("-", "m"),))
    return PolyRing(("x", "y"))


@dataclass(frozen=True)
class LinearForm:
    """Integer linear form in the generators of a ring, up to sign and content."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = tuple(int(x) for x in self.coeffs)
        if not any(c):
            raise ValueError("linear form must be nonzero")
        g = reduce(math.gcd, (abs(x) for x in c))
        c = tuple(x // g for x in c)
        first = next(x for x in c if x)
        if first < 0:
            c = tuple(-x for x in c)
        object.__setattr__(self, "coeffs", c)

    def poly(self, ring: PolyRing) -> Poly:
        if ring.nvars != len(self.coeffs):
            raise ValueError("form and ring disagree on the number of generators")
        return Poly(ring, {_unit(ring.nvars, i): Fraction(a) for i, a in enumerate(self.coeffs) if a})

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.coeffs)) + ")"


def form_of_subgroup(K: ConnSubgroup) -> LinearForm:
    """The linear form of H*(BG) cutting out a circle."""
    if K.kind != "circle":
        raise LatticeError("only circles are cut out by a single form")
    return LinearForm(K.char)


@dataclass(frozen=True)
class RingMap:
    source: PolyRing
    target: PolyRing
    images: tuple[Poly, ...]

    def __call__(self, f: Poly) -> Poly:
        if f.ring != self.source:
            raise ValueError("element from the wrong ring")
        return f.substitute(self.target, self.images)

    def then(self, other: "RingMap") -> "RingMap":
        return RingMap(self.source, other.target, tuple(other(p) for p in self.images))

    def is_injective_on(self, max_weight: int = 4) -> bool:
        for w in range(max_weight + 1):
            mons = monomials(self.source.nvars, w)
            tmons = monomials(self.target.nvars, w)
            if not mons:
                continue
            cols = []
            for e in mons:
                img = self(Poly(self.source, {e: 1}))
                cols.append([img.coeff(t) for t in tmons])
            if Mat.from_columns(cols, len(tmons)).rank() < len(mons):
                return False
        return True


def inflation(K: ConnSubgroup, L: ConnSubgroup) -> RingMap:
    """Inflation H*(BG/K) -> H*(BG/L) for L inside K."""
    if not K.contains(L):
        raise LatticeError(f"{L} is not contained in {K}")
    src, tgt = ring_of(K), ring_of(L)
    if K == L:
        return RingMap(src, tgt, tuple(tgt.gen(i) for i in range(tgt.nvars)))
    if K.kind == "G":
        return RingMap(src, tgt, ())
    # K circle, L trivial
    return RingMap(src, tgt, (form_of_subgroup(K).poly(tgt),))


def adapted_basis(K: ConnSubgroup) -> tuple[tuple[int, int], tuple[int, int]]:
    """Unimodular basis (x_K, y_K) of the character lattice with x_K cutting out K."""
    p, q = form_of_subgroup(K).coeffs
    # find (a, b) with p*b - q*a = 1
    for a, b in itertools.product(range(-abs(q) - 1, abs(q) + 2), range(-abs(p) - 1, abs(p) + 2)):
        if p * b - q * a == 1:
            return (p, q), (a, b)
    raise AssertionError("no unimodular completion found")


# --------------------------------------------------------------------------
# Euler classes


@dataclass(frozen=True)
class EulerClass:
    """Representation given by characters with multiplicities."""

    rank: int
    chars: tuple[tuple[tuple[int, ...], int], ...] = ()

    @classmethod
    def of(cls, rank: int, chars: Mapping[tuple[int, ...], int] | Iterable) -> "EulerClass":
        items = chars.items() if isinstance(chars, Mapping) else chars
        acc: dict = {}
        for ch, m in items:
            ch = tuple(int(x) for x in ch)
            if len(ch) != rank:
                raise ValueError("character length must equal the rank")
            if m:
                acc[ch] = acc.get(ch, 0) + m
        return cls(rank, tuple(sorted(acc.items())))

    def __add__(self, other: "EulerClass") -> "EulerClass":
        if self.rank != other.rank:
            raise ValueError("representations of different tori")
        return EulerClass.of(self.rank, list(self.chars) + list(other.chars))

    @property
    def real_dim(self) -> int:
        return 2 * sum(m for _, m in self.chars)

    def fixed_dim(self, K: ConnSubgroup) -> int:
        """Real dimension of V^K."""
        return 2 * sum(m for ch, m in self.chars if _trivial_on(ch, K))

    def __str__(self) -> str:
        inner = " + ".join(
            "(" + ",".join(map(str, ch)) + ")" + (f"^{m}" if m != 1 else "") for ch, m in self.chars
        )
        return f"e[{inner}]"


def _trivial_on(ch: tuple[int, ...], K: ConnSubgroup) -> bool:
    if not any(ch):
        return True
    if K.kind == "1":
        return False
    if K.kind == "G":
        return False
    p, q = K.char
    return ch[0] * q == ch[1] * p


def euler_value(V: EulerClass, K: ConnSubgroup, essential_for: ConnSubgroup | None = None) -> Poly:
    """Euler class of V in H*(BG/K).

    Every character must be trivial on K so that V is a representation of
    G/K.  With ``essential_for=H`` the characters are also required to be
    nontrivial on H, i.e. e(V) lies in the Euler set of H.
    """
    ring = ring_of(K)
    out = ring.one()
    for ch, m in V.chars:
        if K.kind != "1" and not _trivial_on(ch, K):
            raise LatticeError(f"character {ch} is not trivial on {K}")
        if essential_for is not None and _trivial_on(ch, essential_for):
            raise NotEulerUnitError(f"character {ch} is trivial on {essential_for}")
        if not any(ch):
            raise NotEulerUnitError("trivial character has zero Euler class")
        if K.kind == "1":
            form = Poly(ring, {_unit(ring.nvars, i): Fraction(a) for i, a in enumerate(ch) if a})
        elif K.kind == "circle":
            p, q = K.char
            scale = ch[0] // p if p else ch[1] // q
            form = ring.gen(0) * scale
        else:
            raise NotEulerUnitError("no nontrivial characters of G/G")
        out = out * form**m
    return out


def euler_set(H: ConnSubgroup, K: ConnSubgroup, forms: Iterable[LinearForm] = ()) -> "MultSet":
    """Finite approximation of the Euler set E_{H/K} inside H*(BG/K)."""
    return MultSet(H, K, tuple(forms))


@dataclass(frozen=True)
class MultSet:
    """Finite generating set of linear forms approximating E_{H/K}.

    A form belongs to E_{H/K} when it does not vanish identically on the
    torus of H/K, i.e. it is not in the image of inflation from H*(BG/H).
    """

    H: ConnSubgroup
    K: ConnSubgroup
    forms: tuple[LinearForm, ...] = ()

    def __post_init__(self):
        if not self.H.contains(self.K):
            raise LatticeError(f"{self.K} is not contained in {self.H}")
        canon = tuple(sorted(set(self.forms), key=lambda f: f.coeffs))
        object.__setattr__(self, "forms", canon)
        for f in canon:
            if not self.admits(f):
                raise DenominatorNotAllowedError(f"{f} is not an Euler class for {self.H}/{self.K}")

    @property
    def ring(self) -> PolyRing:
        return ring_of(self.K)

    def admits(self, f: LinearForm) -> bool:
        n = self.ring.nvars
        if len(f.coeffs) != n:
            return False
        if self.H == self.K:
            return False
        if self.H.kind == "G":
            return True
        # H a circle, K trivial: f must not be a multiple of the form of H
        return LinearForm(f.coeffs) != form_of_subgroup(self.H)

    def enlarge(self, *forms: LinearForm) -> "MultSet":
        return MultSet(self.H, self.K, self.forms + tuple(forms))

    @staticmethod
    def compose(upper: "MultSet", lower: "MultSet") -> "MultSet":
        """Approximation of E_{H/L} generated by E_{H/K} and E_{K/L}."""
        if upper.K != lower.H:
            raise LatticeError("sets are not composable")
        infl = inflation(upper.K, lower.K)
        forms = list(lower.forms)
        for f in upper.forms:
            img = infl(f.poly(upper.ring))
            forms.append(LinearForm(tuple(int(img.coeff(_unit(lower.ring.nvars, i))) for i in range(lower.ring.nvars))))
        return MultSet(upper.H, lower.K, tuple(forms))

    def __str__(self) -> str:
        return "{" + ", ".join(map(str, self.forms)) + "}"


# --------------------------------------------------------------------------
# syzygies by degreewise linear algebra


def _entry_weight(p: Poly) -> int | None:
    if p.is_zero():
        return None
    return p.weight


def syzygy_basis(
    matrix: Sequence[Sequence[Poly]],
    ring: PolyRing,
    col_weights: Sequence[int] | None = None,
    max_weight: int | None = None,
) -> list[tuple[int, list[Poly]]]:
    """Minimal homogeneous generators of the kernel of a polynomial matrix.

    ``matrix`` has rows indexed by target generators and columns by source
    generators.  Returns ``(weight, column)`` pairs; the weight is the total
    polynomial weight of the syzygy as an element of the source (source
    generator ``j`` sits in weight ``col_weights[j]``).
    """
    p = len(matrix)
    q = len(matrix[0]) if p else 0
    for row in matrix:
        for e in row:
            if not e.is_homogeneous():
                raise GradingError(f"entry {e} is not homogeneous")
    if col_weights is None:
        col_weights = [0] * q
    # row weights forced by homogeneity
    row_w: list[int | None] = [None] * p
    for i in range(p):
        for j in range(q):
            w = _entry_weight(matrix[i][j])
            if w is None:
                continue
            if row_w[i] is None:
                row_w[i] = col_weights[j] - w
            elif row_w[i] != col_weights[j] - w:
                raise GradingError("matrix is not homogeneous")
    if max_weight is None:
        spread = sum(
            max((_entry_weight(matrix[i][j]) or 0) for i in range(p)) for j in range(q)
        )
        max_weight = max(col_weights, default=0) + spread + 1
    n = ring.nvars
    gens: list[tuple[int, list[Poly]]] = []
    found_by_weight: dict[int, list[list[Poly]]] = {}
    for W in range(min(col_weights, default=0), max_weight + 1):
        # unknowns: coefficients of column j, monomials of weight W - col_weights[j]
        layout = []
        for j in range(q):
            for e in monomials(n, W - col_weights[j]):
                layout.append((j, e))
        if not layout:
            continue
        eqs: dict = {}
        for k, (j, e) in enumerate(layout):
            mono = Poly(ring, {e: 1})
            for i in range(p):
                prod = matrix[i][j] * mono
                for t, c in prod.terms.items():
                    eqs.setdefault((i, t), [Fraction(0)] * len(layout))[k] += c
        A = Mat(list(eqs.values()), len(layout)) if eqs else Mat.zeros(0, len(layout))
        kernel = A.nullspace()
        vecs = [_vec_to_col(v, layout, q, ring) for v in kernel]
        # span of ring multiples of lower syzygies in this weight
        lower = []
        for w2, cols in found_by_weight.items():
            for col in cols:
                for e in monomials(n, W - w2):
                    mono = Poly(ring, {e: 1})
                    lower.append([c * mono for c in col])
        lower_vecs = [_col_to_vec(c, layout) for c in lower]
        base_rank = Mat.from_columns(lower_vecs, len(layout)).rank() if lower_vecs else 0
        new = []
        for v, col in zip(kernel, vecs):
            trial = lower_vecs + [_col_to_vec(c, layout) for c in new] + [v]
            if Mat.from_columns(trial, len(layout)).rank() > base_rank + len(new):
                new.append(col)
        if new:
            found_by_weight[W] = found_by_weight.get(W, []) + new
            gens.extend((W, c) for c in new)
    for _, col in gens:
        for i in range(p):
            s = ring.zero()
            for j in range(q):
                s = s + matrix[i][j] * col[j]
            assert s.is_zero(), "syzygy check failed"
    return gens


def _vec_to_col(v, layout, q, ring) -> list[Poly]:
    col = [ring.zero() for _ in range(q)]
    for c, (j, e) in zip(v, layout):
        if c:
            col[j] = col[j] + Poly(ring, {e: c})
    return col


def _col_to_vec(col, layout) -> list[Fraction]:
    return [col[j].coeff(e) for j, e in layout]


# --------------------------------------------------------------------------
# localization at a finite set of linear forms


@dataclass(frozen=True)
class LocFrac:
    num: Poly
    den: tuple[int, ...]  # exponent of each form of the context
    ctx: "LocalizedRing" = field(compare=False, repr=False)

    def __add__(self, other):
        return self.ctx.add(self, other)

    def __mul__(self, other):
        return self.ctx.mul(self, other)

    def __eq__(self, other) -> bool:
        return isinstance(other, LocFrac) and self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __str__(self) -> str:
        if not any(self.den):
            return str(self.num)
        den = "*".join(
            f"({f.poly(self.num.ring)})" + (f"^{k}" if k > 1 else "")
            for f, k in zip(self.ctx.S.forms, self.den)
            if k
        )
        return f"({self.num})/{den}"


class LocalizedRing:
    """Arithmetic in S^{-1}P for a finite set S of linear forms."""

    def __init__(self, S: MultSet | Sequence[LinearForm], ring: PolyRing | None = None):
        if isinstance(S, MultSet):
            self.S = S
            self.ring = S.ring
        else:
            if ring is None:
                raise ValueError("ring required with a bare list of forms")
            self.ring = ring
            self.S = _BareSet(tuple(S))
        self._polys = [f.poly(self.ring) for f in self.S.forms]

    def frac(self, num: Poly, den: Sequence[int] | None = None) -> LocFrac:
        den = tuple(den) if den is not None else (0,) * len(self._polys)
        return self._reduce(num, den)

    def _reduce(self, num: Poly, den: tuple[int, ...]) -> LocFrac:
        den = list(den)
        if num.is_zero():
            return LocFrac(num, (0,) * len(den), self)
        changed = True
        while changed:
            changed = False
            for i, f in enumerate(self._polys):
                if den[i]:
                    q, r = num.divmod_linear(f)
                    if r.is_zero():
                        num, den[i] = q, den[i] - 1
                        changed = True
        return LocFrac(num, tuple(den), self)

    def _common(self, a: LocFrac, b: LocFrac):
        den = tuple(max(x, y) for x, y in zip(a.den, b.den))
        na, nb = a.num, b.num
        for f, x, y, m in zip(self._polys, a.den, b.den, den):
            na = na * f ** (m - x)
            nb = nb * f ** (m - y)
        return na, nb, den

    def add(self, a: LocFrac, b: LocFrac) -> LocFrac:
        na, nb, den = self._common(a, b)
        return self._reduce(na + nb, den)

    def mul(self, a: LocFrac, b: LocFrac) -> LocFrac:
        return self._reduce(a.num * b.num, tuple(x + y for x, y in zip(a.den, b.den)))

    def divide(self, a: LocFrac, p: Poly) -> LocFrac:
        """a / p, allowed only when p is a scalar times a product of forms of S."""
        exps = [0] * len(self._polys)
        rest = p
        progress = True
        while progress and rest.weights() != {0}:
            progress = False
            for i, f in enumerate(self._polys):
                q, r = rest.divmod_linear(f)
                if r.is_zero() and not q.is_zero():
                    rest, exps[i] = q, exps[i] + 1
                    progress = True
                    break
        if rest.is_zero() or rest.weights() != {0}:
            raise DenominatorNotAllowedError(f"cannot invert {p} with denominators {self.S}")
        scalar = rest.coeff((0,) * self.ring.nvars)
        num = a.num * self.ring.const(1 / scalar)
        return self._reduce(num, tuple(x + y for x, y in zip(a.den, exps)))

    def equal(self, a: LocFrac, b: LocFrac) -> bool:
        na, nb, _ = self._common(a, b)
        return na == nb


@dataclass(frozen=True)
class _BareSet:
    forms: tuple[LinearForm, ...]

    def __str__(self) -> str:
        return "{" + ", ".join(map(str, self.forms)) + "}"
