"""Homological algebra over k[c] and over polynomial rings in a few variables.

* cochain complexes of windowed spaces with an exact d∘d = 0 check;
* the two-step injective resolution of a torsion k[c]-module;
* Hom(t, T) and Ext¹(t, T), by resolution and by the Rlim tower;
* stable Koszul (Čech) local cohomology of monomial modules, one
  multidegree at a time;
* residues, Gorenstein duality for linear-localized polynomial rings and
  the self-duality of P/(x_1^n, ..., x_s^n).

Sign convention: ring generators are ordered, Čech factors are oriented in
that order, and inserting generator j into a face σ costs the sign
(-1)^#{i in σ : i < j}.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Sequence

from .gmod import (
    KC,
    CyclicTorsion,
    Free,
    GradedDual,
    HorizonError,
    KoszulQuot,
    Sum,
    Suspension,
    Tate,
    TruncatedFamily,
    WindowedModule,
)
from .kcmod import Cyc, Dual, KcMap, KcModule, TorsionRequiredError, decompose_finite
from .polymod import FGModule
from .qlinalg import (
    UNKNOWN,
    ZERO,
    GradedMap,
    GradedSpace,
    Homology,
    Mat,
    NotAComplexError,
    homology_at,
)
from .rings import (
    TRIVIAL1,
    TRIVIAL2,
    ConnSubgroup,
    DenominatorNotAllowedError,
    LatticeError,
    LinearForm,
    MultSet,
    PolyRing,
    adapted_basis,
    monomials,
)
from .towers import rlim_tower, tower_lim_lim1

__all__ = [
    "ChainComplex",
    "KcResolution",
    "as_kc",
    "inj_res_kc",
    "ExtTate",
    "ext_tate",
    "LocalCohomology",
    "stable_koszul_lcoh",
    "GorensteinReport",
    "gorenstein_embed",
    "KoszulDuality",
    "koszul_self_duality",
    "ResidueDatum",
    "residue",
    "relative_residue",
    "iterated_residue",
    "negative_monomial_count",
]


# --------------------------------------------------------------------------
# cochain complexes


def _zero_space(like: GradedSpace) -> GradedSpace:
    return GradedSpace.from_dict(like.lo, like.hi, {})


@dataclass(frozen=True)
class ChainComplex:
    """C^start -> C^{start+1} -> ... with degree-preserving differentials."""

    terms: tuple
    diffs: tuple
    start: int = 0

    def __post_init__(self):
        if len(self.diffs) != max(len(self.terms) - 1, 0):
            raise ValueError("need one differential between consecutive terms")
        self.check()

    def check(self) -> None:
        for f, g in zip(self.diffs, self.diffs[1:]):
            comp = f.then(g)
            for d in comp.source.degrees:
                if not comp.block(d).is_zero():
                    raise NotAComplexError(d)

    def _d(self, i: int) -> GradedMap:
        k = i - self.start
        if 0 <= k < len(self.diffs):
            return self.diffs[k]
        if k == -1:
            t = self.terms[0]
            return GradedMap(_zero_space(t), t, 0, {})
        t = self.terms[-1]
        return GradedMap(t, _zero_space(t), 0, {})

    def cohomology(self, i: int) -> Homology:
        if not 0 <= i - self.start < len(self.terms):
            raise IndexError(f"no term in cohomological degree {i}")
        return homology_at(self._d(i - 1), self._d(i))

    def is_exact(self) -> bool:
        return all(self.cohomology(i).space.total() == 0 for i in range(self.start, self.start + len(self.terms)))

    def dumps(self) -> str:
        lines = ["# cousinet-v1", f"complex start={self.start} length={len(self.terms)}"]
        for k, t in enumerate(self.terms):
            lines.append(f"term {self.start + k} lo={t.lo} hi={t.hi} " + " ".join(map(str, t.dims)))
        for k, f in enumerate(self.diffs):
            for d in f.source.degrees:
                b = f.block(d)
                if b.nrows and b.ncols:
                    flat = " ".join(str(x) for row in b.rows for x in row)
                    lines.append(f"diff {self.start + k} {d} {b.nrows} {b.ncols} {flat}")
        return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# torsion modules over k[c]


def as_kc(obj) -> KcModule:
    """Atom sum over k[c] for a torsion module description."""
    if isinstance(obj, KcModule):
        return obj
    if isinstance(obj, (Cyc, Dual)):
        return KcModule.of(obj)
    if isinstance(obj, CyclicTorsion):
        return KcModule.of(Cyc(obj.shift, obj.n))
    if isinstance(obj, GradedDual) and obj.ring == KC:
        return KcModule.of(Dual(0))
    if isinstance(obj, Suspension):
        return as_kc(obj.atom).suspend(obj.shift)
    if isinstance(obj, Sum):
        out = KcModule()
        for a in obj.atoms:
            out = out + as_kc(a)
        return out
    if isinstance(obj, TruncatedFamily) and obj.ring == KC:
        return KcModule(tuple(Cyc(2 * s, s) for s in range(1, obj.N + 1)))
    if isinstance(obj, WindowedModule) and obj.ring == KC:
        if obj.space.below != ZERO or obj.space.above != ZERO:
            raise TorsionRequiredError("windowed input needs ZERO edges to be decomposed")
        dims = {d: obj.dim(d) for d in obj.degrees()}
        blocks = {d: obj.act(0, d) for d in obj.degrees()}
        return decompose_finite(dims, blocks)
    if isinstance(obj, (Free, Tate)):
        raise TorsionRequiredError(f"{obj} is not a torsion k[c]-module")
    raise TorsionRequiredError(f"cannot read {obj!r} as a torsion k[c]-module")


@dataclass(frozen=True)
class KcResolution:
    """0 -> T -> I -> J -> 0 with I, J sums of shifted k[c]^∨."""

    T: KcModule
    I: KcModule
    J: KcModule
    iota: KcMap
    pi: KcMap

    @property
    def length(self) -> int:
        return 0 if not self.J.atoms else 1

    def complex(self, lo: int, hi: int) -> ChainComplex:
        a, b = self.iota.graded(lo, hi), self.pi.graded(lo, hi)
        return ChainComplex((a.source, a.target, b.target), (a, b))

    def verify(self, lo: int, hi: int) -> bool:
        """Exactness of 0 -> T -> I -> J -> 0 in every degree of [lo, hi]."""
        for d in range(lo, hi + 1):
            i, p = self.iota.block(d), self.pi.block(d)
            if not (p @ i).is_zero():
                return False
            if i.rank() != i.ncols or p.rank() != p.nrows:
                return False
            if i.rank() != p.ncols - p.rank():
                return False
        return True


def inj_res_kc(T) -> KcResolution:
    """Minimal injective resolution, socle by socle.

    Σ^a k[c]/c^n embeds in Σ^{a-2(n-1)} k[c]^∨ with cokernel Σ^{a+2} k[c]^∨;
    dual atoms are already injective.
    """
    T = as_kc(T)
    I_atoms, J_atoms, pairs = [], [], []
    for a in T.atoms:
        if isinstance(a, Dual):
            I_atoms.append(a)
        else:
            I_atoms.append(Dual(a.socle, a.label))
            J_atoms.append(Dual(a.shift + 2, a.label))
            pairs.append((len(J_atoms) - 1, len(I_atoms) - 1))
    I, J = KcModule(tuple(I_atoms)), KcModule(tuple(J_atoms))
    iota = KcMap(T, I, tuple(tuple(Fraction(int(i == j)) for j in range(len(T.atoms))) for i in range(len(I_atoms))))
    rows = [[Fraction(0)] * len(I_atoms) for _ in J_atoms]
    for j, i in pairs:
        rows[j][i] = Fraction(1)
    pi = KcMap(I, J, tuple(map(tuple, rows)))
    return KcResolution(T, I, J, iota, pi)


@dataclass(frozen=True)
class ExtTate:
    """Hom(t, T) and Ext¹(t, T) per degree by two independent routes."""

    by_resolution: dict  # d -> (hom, ext1)
    by_tower: dict  # d -> (hom, ext1)
    stabilized: dict  # d -> bool

    @property
    def agree(self) -> bool:
        return all(self.by_resolution[d] == self.by_tower[d] for d, ok in self.stabilized.items() if ok)

    @property
    def unstable_degrees(self) -> list[int]:
        return sorted(d for d, ok in self.stabilized.items() if not ok)

    def hom(self, d: int) -> int:
        return self.by_resolution[d][0]

    def ext1(self, d: int) -> int:
        return self.by_resolution[d][1]


def ext_tate(T, window: tuple[int, int] = (-10, 10), horizon: int = 12) -> ExtTate:
    """Hom(t, T)_d and Ext¹(t, T)_d for d in ``window``.

    Route one: 0 -> T^t -> I^t -> J^t -> Ext¹ -> 0 from :func:`inj_res_kc`.
    Route two: lim and lim¹ of the tower T_d <- T_{d+2} <- ... .
    """
    kc = as_kc(T)
    res = inj_res_kc(kc)
    lo, hi = window
    by_res, by_tow, stab = {}, {}, {}
    for d in range(lo, hi + 1):
        m = res.pi.tate_block(d)
        r = m.rank() if m.nrows and m.ncols else 0
        by_res[d] = (m.ncols - r, m.nrows - r)
        lr = tower_lim_lim1(rlim_tower(kc, d, horizon))
        by_tow[d] = (lr.lim, lr.lim1)
        stab[d] = lr.stabilized
    return ExtTate(by_res, by_tow, stab)


# --------------------------------------------------------------------------
# stable Koszul local cohomology of monomial modules


@dataclass(frozen=True)
class _Mono:
    """Σ^shift P/(monomials); empty ``gens`` is the free module."""

    shift: int
    gens: tuple


def _summands(M, ring: PolyRing) -> list[_Mono]:
    if isinstance(M, FGModule):
        out = []
        for j, deg in enumerate(M.gen_degrees):
            gens = []
            for rel in M.relations:
                live = [k for k, f in enumerate(rel) if not f.is_zero()]
                if not live:
                    continue
                if live != [j] and j in live:
                    raise ValueError("local cohomology needs a sum of monomial quotients")
                if live == [j]:
                    f = rel[j]
                    if len(f.terms) != 1:
                        raise ValueError("relations must be monomials")
                    gens.append(next(iter(f.terms)))
            out.append(_Mono(deg, tuple(gens)))
        return out
    if isinstance(M, Free):
        return [_Mono(M.shift, ())]
    if isinstance(M, KoszulQuot):
        return _summands(FGModule.koszul_quotient(M.ring, M.n), ring)
    if isinstance(M, Suspension):
        return [_Mono(s.shift + M.shift, s.gens) for s in _summands(M.atom, ring)]
    if isinstance(M, Sum):
        return [s for a in M.atoms for s in _summands(a, ring)]
    raise TypeError(f"cannot read {M!r} as a monomial module")


def _ring_of_input(M) -> PolyRing:
    if isinstance(M, FGModule):
        return M.ring
    if isinstance(M, (Free, KoszulQuot)):
        return M.ring
    if isinstance(M, Suspension):
        return _ring_of_input(M.atom)
    if isinstance(M, Sum):
        return _ring_of_input(M.atoms[0])
    raise TypeError(f"cannot find the ring of {M!r}")


def _alive(s: _Mono, alpha: tuple, sigma: frozenset) -> bool:
    """Is x^alpha a nonzero element of the localization of s at x_sigma?"""
    r = len(alpha)
    if any(alpha[j] < 0 for j in range(r) if j not in sigma):
        return False
    for m in s.gens:
        if all(m[j] <= alpha[j] for j in range(r) if j not in sigma):
            return False
    return True


def _sign(sigma, j) -> int:
    return -1 if sum(1 for i in sigma if i < j) % 2 else 1


@lru_cache(maxsize=None)
def _cech_alpha(s: _Mono, alpha: tuple, ideal: tuple) -> tuple:
    """Per cohomological degree: (faces, differential matrices, H basis reps)."""
    faces = [[frozenset(c) for c in itertools.combinations(ideal, p) if _alive(s, alpha, frozenset(c))] for p in range(len(ideal) + 1)]
    diffs = []
    for p in range(len(ideal)):
        src, tgt = faces[p], faces[p + 1]
        m = Mat.zeros(len(tgt), len(src))
        for c, sig in enumerate(src):
            for j in ideal:
                if j in sig:
                    continue
                t = sig | {j}
                if t in tgt:
                    m.rows[tgt.index(t)][c] += _sign(sig, j)
        diffs.append(m)
    reps = []
    for p in range(len(ideal) + 1):
        n = len(faces[p])
        ker = diffs[p].nullspace() if p < len(ideal) else Mat.identity(n).columns()
        img = diffs[p - 1].colspace() if p > 0 and diffs[p - 1].ncols else []
        extra = []
        for v in ker:
            if Mat.from_columns(img + extra + [v], n).rank() > len(img) + len(extra):
                extra.append(v)
        reps.append((tuple(img), tuple(map(tuple, extra))))
    return tuple(map(tuple, faces)), tuple(diffs), tuple(reps)


def _coords(s: _Mono, alpha: tuple, ideal: tuple, p: int, vec: Sequence) -> list[Fraction]:
    """Coordinates of a cycle in the chosen H^p basis at alpha."""
    faces, _, reps = _cech_alpha(s, alpha, ideal)
    img, basis = reps[p]
    n = len(faces[p])
    B = Mat.from_columns(list(basis) + list(img), n)
    x = B.solve(vec)
    if x is None:
        raise ArithmeticError("vector is not a cycle")
    return x[: len(basis)]


def _bounds(s: _Mono, r: int, ideal: tuple) -> list[int]:
    """Exclusive upper bound on alpha_j for nonzero cohomology.

    If alpha_j >= every exponent of x_j among the generators (and >= 0), the
    faces sigma and sigma ∪ {j} are alive together, so the Čech complex at
    alpha is a cone and acyclic.  Outside the ideal a pure power x_j^e
    among the generators bounds alpha_j by e.
    """
    out = []
    for j in range(r):
        if j in ideal:
            out.append(max([m[j] for m in s.gens] + [0]))
        else:
            pure = [m[j] for m in s.gens if all(m[k] == 0 for k in range(r) if k != j)]
            if not pure:
                raise ValueError(f"local cohomology is not degreewise finite: x_{j} acts freely")
            out.append(min(pure))
    return out


def _alphas(s: _Mono, r: int, ideal: tuple, weight: int):
    """Multidegrees of total weight ``weight`` that can carry cohomology."""
    ub = _bounds(s, r, ideal)
    lb = [None if j in ideal else 0 for j in range(r)]

    def rec(j, left):
        if j == r - 1:
            if (lb[j] is None or lb[j] <= left) and left < ub[j]:
                yield (left,)
            return
        lo = left - sum(u - 1 for u in ub[j + 1:])
        if lb[j] is not None:
            lo = max(lo, lb[j])
        hi = ub[j] - 1
        if all(lb[k] is not None for k in range(j + 1, r)):
            hi = min(hi, left - sum(lb[j + 1:]))
        for a in range(lo, hi + 1):
            for tail in rec(j + 1, left - a):
                yield (a,) + tail

    if r == 0:
        if weight == 0:
            yield ()
        return
    yield from rec(0, weight)


@dataclass(frozen=True)
class LocalCohomology:
    """H^i_m(M) on a window, with the multidegree label of each basis vector."""

    ring: PolyRing
    ideal: tuple
    modules: dict  # i -> WindowedModule
    labels: dict = field(compare=False)  # (i, d) -> [(summand, alpha, rep)]

    def dims(self, i: int) -> dict[int, int]:
        m = self.modules[i]
        return {d: m.dim(d) for d in m.degrees()}

    def nonzero_degrees(self) -> list[int]:
        return sorted(i for i, m in self.modules.items() if m.space.total())


def stable_koszul_lcoh(M, window: tuple[int, int], ideal: Sequence[int] | None = None) -> LocalCohomology:
    """Cohomology of M ⊗ ⊗_i [P -> P[1/x_i]] for the coordinates x_i in ``ideal``.

    ``M`` is a sum of shifted monomial quotients of P = Q[x_1..x_r]; the
    complex splits by multidegree and only finitely many multidegrees of
    a given degree can carry cohomology.
    """
    ring = _ring_of_input(M)
    r = ring.nvars
    ideal = tuple(range(r)) if ideal is None else tuple(sorted(ideal))
    parts = _summands(M, ring)
    lo, hi = window
    labels: dict = {}
    for i in range(len(ideal) + 1):
        for d in range(lo, hi + 1):
            labels[(i, d)] = []
    for k, s in enumerate(parts):
        for d in range(lo, hi + 1):
            if (s.shift - d) % 2:
                continue
            w = (s.shift - d) // 2
            for alpha in _alphas(s, r, ideal, w):
                _, _, reps = _cech_alpha(s, alpha, ideal)
                for p, (_, basis) in enumerate(reps):
                    for b in range(len(basis)):
                        labels[(p, d)].append((k, alpha, b))
    modules = {}
    for p in range(len(ideal) + 1):
        dims = {d: len(labels[(p, d)]) for d in range(lo, hi + 1)}
        below, above = _lcoh_tags(parts, r, ideal, p, lo, hi)
        space = GradedSpace.from_dict(lo, hi, dims, below, above)
        acts = []
        for v in range(r):
            blocks = {}
            for d in range(lo + 2, hi + 1):
                src, tgt = labels[(p, d)], labels[(p, d - 2)]
                m = Mat.zeros(len(tgt), len(src))
                index = {(k, a): n for n, (k, a, b) in enumerate(tgt) if b == 0}
                for c, (k, alpha, b) in enumerate(src):
                    s = parts[k]
                    beta = tuple(a + (1 if j == v else 0) for j, a in enumerate(alpha))
                    faces, _, reps = _cech_alpha(s, alpha, ideal)
                    tfaces, _, treps = _cech_alpha(s, beta, ideal)
                    if not treps[p][1]:
                        continue
                    vec = reps[p][1][b]
                    image = [Fraction(0)] * len(tfaces[p])
                    for f, x in zip(faces[p], vec):
                        if x and f in tfaces[p]:
                            image[tfaces[p].index(f)] += x
                    coords = _coords(s, beta, ideal, p, image)
                    base = index[(k, beta)]
                    for t, x in enumerate(coords):
                        m.rows[base + t][c] = x
                blocks[d] = m
            acts.append(GradedMap(space, space, -2, blocks))
        modules[p] = WindowedModule(ring, space, tuple(acts))
    return LocalCohomology(ring, ideal, modules, labels)


def _lcoh_tags(parts, r, ideal, p, lo, hi):
    """ZERO below the provable bottom; ZERO above only for finite length input."""
    bottom = min((s.shift - 2 * sum(u - 1 for u in _bounds(s, r, ideal)) for s in parts), default=lo)
    below = ZERO if lo <= bottom else UNKNOWN
    top = max((s.shift for s in parts), default=hi)
    finite = all(_finite_length(s, r) for s in parts)
    above = ZERO if finite and hi >= top else UNKNOWN
    return below, above


def _finite_length(s: _Mono, r: int) -> bool:
    return all(any(m[j] > 0 and all(m[k] == 0 for k in range(r) if k != j) for m in s.gens) for j in range(r))


def negative_monomial_count(s: int, d: int) -> int:
    """Number of x^{-a} with all a_i >= 1 in degree d (x_i of degree -2)."""
    if d % 2 or s == 0:
        return int(s == 0 and d == 0)
    w = d // 2
    return comb(w - 1, s - 1) if w >= s else 0


# --------------------------------------------------------------------------
# residues


@dataclass(frozen=True)
class ResidueDatum:
    """Residue pairing H^s_m(P)_d x P_{2s-d} -> Q on a window."""

    ring: PolyRing
    pairings: dict  # d -> Mat (rows: monomials of P, cols: H basis)

    @property
    def nondegenerate(self) -> bool:
        return all(m.nrows == m.ncols and (m.nrows == 0 or m.rank() == m.nrows) for m in self.pairings.values())


def residue(cls: dict, nvars: int) -> Fraction:
    """Total residue of a Laurent class {exponent: coeff}: its (x_1...x_s)^{-1} coefficient."""
    return Fraction(cls.get(tuple([-1] * nvars), 0))


def iterated_residue(cls: dict, order: Sequence[int]) -> dict:
    """Residues one variable at a time, in ``order``; the variable is removed."""
    cur = {e: Fraction(c) for e, c in cls.items()}
    for step, v in enumerate(order):
        nxt = {}
        for e, c in cur.items():
            if e[v] == -1:
                key = e[:v] + e[v + 1:]
                nxt[key] = nxt.get(key, 0) + c
        cur = {k: c for k, c in nxt.items() if c}
        order = [o - 1 if o > v else o for o in order]
    return cur


def _residue_pairing(lc: LocalCohomology, d: int) -> Mat:
    s = len(lc.ideal)
    labs = lc.labels[(s, d)]
    w = (d - 2 * s) // 2  # functional degree d-2s pairs with P in degree 2s-d
    mons = monomials(lc.ring.nvars, w) if (d - 2 * s) % 2 == 0 and w >= 0 else []
    m = Mat.zeros(len(mons), len(labs))
    for c, (k, alpha, b) in enumerate(labs):
        for row, e in enumerate(mons):
            prod = tuple(a + x for a, x in zip(alpha, e))
            if all(x == -1 for x in prod):
                m.rows[row][c] = Fraction(1)
    return m


# --------------------------------------------------------------------------
# Gorenstein duality


@dataclass(frozen=True)
class GorensteinReport:
    K: ConnSubgroup
    s: int
    forms: tuple
    degrees: dict  # d -> {"source": n, "target": n, "rank": n}
    layers: dict  # d -> tuple of free ranks per layer (circle case)
    denominator_exponent: dict  # d -> exponent at which stabilization was certified
    pairings: dict = field(compare=False, default_factory=dict)

    @property
    def iso(self) -> bool:
        return all(v["source"] == v["target"] == v["rank"] for v in self.degrees.values())

    def same_as(self, other: "GorensteinReport") -> bool:
        return self.degrees == other.degrees and self.layers == other.layers


def _admissible(K: ConnSubgroup, forms) -> tuple:
    forms = tuple(f if isinstance(f, LinearForm) else LinearForm(tuple(f)) for f in forms)
    if K.kind == "G":
        return forms
    ms = MultSet(K, TRIVIAL2 if K.rank == 2 else TRIVIAL1, forms) if K.kind == "circle" else None
    if K.kind == "1" and forms:
        raise DenominatorNotAllowedError("no linear form is an Euler class for the trivial subgroup")
    return ms.forms if ms else forms


def gorenstein_embed(K: ConnSubgroup, S: Sequence = (), window: tuple[int, int] = (-12, 12), layers: int = 4, max_exponent: int = 8) -> GorensteinReport:
    """Certify H^s_m(S^{-1}P) -> Σ^{2s} Γ Hom_{k_K}(S^{-1}P, k_K) on ``window``.

    * K = G: s = 0 and both sides are the localized ring; identity.
    * K = 1: S is empty, everything is degreewise finite and the residue
      pairing matrix is checked to be invertible in every degree.
    * K a circle: in coordinates (x, y) with x cutting out K, both sides
      are filtered by annihilators of x^a; the a-th layer is checked to be
      free of rank one over k_K = Q[y, 1/y] using exact power series of
      elements of S^{-1}P modulo x^A, for A up to ``layers``.
    """
    forms = _admissible(K, S)
    lo, hi = window
    if K.kind == "G":
        degs = {d: {"source": 1 - d % 2, "target": 1 - d % 2, "rank": 1 - d % 2} for d in range(lo, hi + 1)}
        return GorensteinReport(K, 0, forms, degs, {}, {})
    if K.kind == "1":
        ring = PolyRing(("c",)) if K.rank == 1 else PolyRing(("x", "y"))
        s = ring.nvars
        lc = stable_koszul_lcoh(Free(0, ring), window)
        degs, pair = {}, {}
        for d in range(lo, hi + 1):
            m = _residue_pairing(lc, d)
            target = m.nrows
            degs[d] = {"source": m.ncols, "target": target, "rank": m.rank() if m.nrows and m.ncols else 0}
            pair[d] = m
        return GorensteinReport(K, s, forms, degs, {}, {}, pair)
    return _gorenstein_circle(K, forms, window, layers, max_exponent)


def _adapted_forms(K: ConnSubgroup, forms) -> list[tuple[Fraction, Fraction]]:
    """Forms rewritten as alpha*x + beta*y in coordinates adapted to K."""
    (p, q), (a, b) = adapted_basis(K)
    out = []
    for f in forms:
        f1, f2 = f.coeffs
        alpha, beta = f1 * b - f2 * a, -f1 * q + f2 * p
        if beta == 0:
            raise DenominatorNotAllowedError(f"{f} vanishes on {K}")
        out.append((Fraction(alpha), Fraction(beta)))
    return out


def _series_inverse(alpha: Fraction, beta: Fraction, A: int) -> list[Fraction]:
    # 1/(alpha x + beta y) = sum_n (-alpha)^n / beta^(n+1) x^n y^(-1-n)
    return [(-alpha) ** n / beta ** (n + 1) for n in range(A)]


def _series_mul(u, v, A):
    out = [Fraction(0)] * A
    for i, a in enumerate(u):
        if a:
            for j, b in enumerate(v[: A - i]):
                out[i + j] += a * b
    return out


def _r_mod_xA(adapted, A: int, weight: int, E: int) -> list[list[Fraction]]:
    """Series mod x^A of x^i y^j / prod f^e (e <= E) of total weight ``weight``.

    Coefficient n is the rational multiplying x^n y^(weight-n).
    """
    invs = [_series_inverse(al, be, A) for al, be in adapted]
    vecs = []
    for es in itertools.product(range(E + 1), repeat=len(adapted)):
        den = [Fraction(1)] + [Fraction(0)] * (A - 1)
        for inv, e in zip(invs, es):
            for _ in range(e):
                den = _series_mul(den, inv, A)
        top = weight + sum(es)
        for i in range(min(A, top + 1)):
            j = top - i
            if j < 0:
                continue
            num = [Fraction(0)] * A
            num[i] = Fraction(1)
            vecs.append(_series_mul(num, den, A))
    return vecs


def _gorenstein_circle(K, forms, window, layers, max_exponent) -> GorensteinReport:
    adapted = _adapted_forms(K, forms)
    lo, hi = window
    degs, lay, expo, pair = {}, {}, {}, {}
    for d in range(lo, hi + 1):
        if d % 2:
            degs[d] = {"source": 0, "target": 0, "rank": 0}
            lay[d] = (0,) * layers
            continue
        ranks = []
        used = 0
        last = None
        for A in range(1, layers + 1):
            # x^{-A} r has degree d  <=>  r has weight A - d/2
            w = A - d // 2
            maxdim = sum(1 for n in range(A) if adapted or w - n >= 0)
            rank, E = 0, 0
            while True:
                vecs = _r_mod_xA(adapted, A, w, E)
                rank = Mat.from_columns(vecs, A).rank() if vecs else 0
                if rank == maxdim or E >= max_exponent or not adapted:
                    break
                E += 1
            if rank != maxdim:
                raise HorizonError(f"degree {d}: layer {A} did not stabilize by exponent {max_exponent}; enlarge S")
            used = max(used, E)
            # residue pairing of x^{-A} r against the k_K-basis 1, x, .., x^{A-1}
            if vecs:
                V = Mat.from_columns(vecs, A)
                P = Mat([V.rows[A - 1 - i] for i in range(A)], V.ncols)
                last = P
            ranks.append(rank)
        src = ranks[-1]
        # Hom_{k_K}(R/x^A, k_K) in degree d-2: a value in k_K for each x^i
        tgt = sum(1 for i in range(layers) if adapted or d - 2 - 2 * i <= 0)
        prk = last.rank() if last is not None and last.ncols else 0
        degs[d] = {"source": src, "target": tgt, "rank": prk}
        lay[d] = tuple(b - a for a, b in zip([0] + ranks, ranks))
        expo[d] = used
        pair[d] = last
    return GorensteinReport(K, 1, tuple(forms), degs, lay, expo, pair)


# --------------------------------------------------------------------------
# self-duality of P/m^[n]


@dataclass(frozen=True)
class KoszulDuality:
    s: int
    n: int
    shift: int
    pairings: dict  # d -> Mat, M_d x M_{shift-d} -> Q
    ann_box: tuple  # exponent tuples of the annihilator basis
    generator: tuple
    generated: bool

    @property
    def invertible(self) -> bool:
        return all(m.nrows == m.ncols and (m.nrows == 0 or m.rank() == m.nrows) for m in self.pairings.values())

    @property
    def ann_dim(self) -> int:
        return len(self.ann_box)


def koszul_self_duality(ring: PolyRing, n: int) -> KoszulDuality:
    """P/(x_i^n) ≅ Σ^a (P/(x_i^n))^∨ with a = -2s(n-1), and its image in H^s.

    The pairing multiplies into the socle (x_1...x_s)^{n-1}.  The
    annihilator of (x_i^n) in H^s_m(P) is found by brute force over the
    negative-monomial basis and checked to be generated by (x_1...x_s)^{-n}.
    """
    if n < 1:
        raise ValueError("n must be positive")
    s = ring.nvars
    shift = -2 * s * (n - 1)
    box = list(itertools.product(range(n), repeat=s))
    by_w: dict = {}
    for e in box:
        by_w.setdefault(sum(e), []).append(e)
    socle = tuple([n - 1] * s)
    pairings = {}
    for w, es in by_w.items():
        others = by_w.get(s * (n - 1) - w, [])
        m = Mat.zeros(len(es), len(others))
        for i, e in enumerate(es):
            for j, f in enumerate(others):
                if tuple(a + b for a, b in zip(e, f)) == socle:
                    m.rows[i][j] = Fraction(1)
        pairings[-2 * w] = m
    # annihilator in H^s: negative monomials x^{-a}, a_i >= 1, killed by every x_i^n
    lc_window = (2 * s, 2 * s * (n + 2))
    lc = stable_koszul_lcoh(Free(0, ring), lc_window)
    H = lc.modules[s]
    ann = []
    for d in H.degrees():
        labs = lc.labels[(s, d)]
        for c, (_, alpha, _) in enumerate(labs):
            if all(_kills(H, v, n, d, c) for v in range(s)):
                ann.append(tuple(alpha))
    gen = tuple([-n] * s)
    generated = gen in ann and _span_from(lc, H, s, gen) == len(ann)
    return KoszulDuality(s, n, shift, pairings, tuple(sorted(ann)), gen, generated)


def _span_from(lc: LocalCohomology, H: WindowedModule, s: int, alpha: tuple) -> int:
    """Dimension of the P-submodule of H generated by the class x^alpha."""
    d = -2 * sum(alpha)
    labs = lc.labels[(s, d)]
    col = next(c for c, (_, a, _) in enumerate(labs) if a == alpha)
    spans = {d: [[Fraction(int(i == col)) for i in range(H.dim(d))]]}
    total = 0
    cur = d
    while cur - 2 >= H.lo and spans.get(cur):  # H vanishes below its window
        imgs = [H.act(v, cur).apply(u) for u in spans[cur] for v in range(H.ring.nvars)]
        nz = [u for u in imgs if any(u)]
        spans[cur - 2] = Mat.from_columns(nz, H.dim(cur - 2)).colspace() if nz else []
        cur -= 2
    for vecs in spans.values():
        total += len(vecs)
    return total


def _kills(H: WindowedModule, v: int, n: int, d: int, col: int) -> bool:
    vec = [Fraction(int(i == col)) for i in range(H.dim(d))]
    cur = d
    for _ in range(n):
        vec = H.act(v, cur).apply(vec)
        cur -= 2
        if not any(vec):
            return True
    return not any(vec)


# --------------------------------------------------------------------------
# relative residues


def _torsion_vars(K: ConnSubgroup) -> int:
    return K.codim


def relative_residue(H: ConnSubgroup, K: ConnSubgroup, cls: dict | None = None, window: tuple[int, int] | None = None):
    """Structure map from level H to level K of the localized local cohomology.

    Coordinates are adapted to the flag: the first ``codim`` variables are
    the torsion variables at each level.  A Laurent class x^gamma at level
    H goes to ±x^gamma at level K when every new torsion exponent is
    negative and to zero otherwise; the sign is the Čech orientation of
    the inserted generators.

    With ``cls`` a dict {exponent: coeff} the image class is returned.  In
    rank 1 with ``window`` the map G -> 1, t -> Σ^{-2} H^1_(c)(k[c]), is
    returned as a GradedMap.
    """
    if not H.contains(K):
        raise LatticeError(f"{K} is not contained in {H}")
    sH, sK = _torsion_vars(H), _torsion_vars(K)
    if sK < sH:
        raise LatticeError("relative residues go from larger to smaller subgroups")
    if cls is not None:
        sign = 1
        for j in range(sH, sK):
            sign *= -1 if j % 2 else 1
        out = {}
        for e, c in cls.items():
            if all(e[j] < 0 for j in range(sH, sK)) and c:
                out[e] = out.get(e, 0) + sign * Fraction(c)
        return {e: c for e, c in out.items() if c}
    if window is None or H.rank != 1:
        raise ValueError("graded form is available for rank 1 with a window")
    lo, hi = window
    if sK == sH:
        dims = {d: 1 - d % 2 for d in range(lo, hi + 1)}
        sp = GradedSpace.from_dict(lo, hi, dims)
        return GradedMap(sp, sp, 0, {d: Mat.identity(dims[d]) for d in range(lo, hi + 1)})
    # t_d is spanned by c^{-d/2}; level 1 in degree d is H^1 in degree d+2
    src = GradedSpace.from_dict(lo, hi, {d: 1 - d % 2 for d in range(lo, hi + 1)})
    tdims = {d: int(d % 2 == 0 and d + 2 >= 2) for d in range(lo, hi + 1)}
    tgt = GradedSpace.from_dict(lo, hi, tdims)
    blocks = {}
    for d in range(lo, hi + 1):
        m = Mat.zeros(tdims[d], src.dim(d))
        if tdims[d] and src.dim(d):
            img = relative_residue(H, K, {(-(d // 2) - 1,): 1})
            m.rows[0][0] = Fraction(1) if img else Fraction(0)
        blocks[d] = m
    return GradedMap(src, tgt, 0, blocks)
