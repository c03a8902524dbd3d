"""Graded torsion modules on finite windows.

Atoms describe modules in closed form; :func:`realize` turns an atom into
a :class:`WindowedModule`, the degreewise data (dims plus one action
matrix per ring generator) together with honest edge tags.  Everything
else here (Matlis duality, torsion submodules, graded Hom, the text
format) works on windowed modules.

Action matrices go from degree d to degree d - 2.  Beyond a PERIODIC edge
the module repeats with period 2 and every generator acts by the identity
between repeated degrees; beyond a ZERO edge it vanishes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .kcmod import Cyc, Dual, KcModule
from .polymod import ArtinianModule, FGModule
from .qlinalg import (
    UNKNOWN,
    ZERO,
    GradedMap,
    GradedSpace,
    Mat,
    PoisonedError,
    Tag,
    complement_basis,
    periodic,
)
from .rings import LinearForm, Poly, PolyRing

__all__ = [
    "Free",
    "CyclicTorsion",
    "GradedDual",
    "Tate",
    "KoszulQuot",
    "LocCohTop",
    "Suspension",
    "Sum",
    "TruncatedFamily",
    "WindowedModule",
    "CannotDualizeError",
    "HorizonError",
    "realize",
    "oracle_of",
    "matlis_dual",
    "gamma_torsion",
    "hom_graded",
    "dumps",
    "loads",
]

KC = PolyRing(("c",))
INF = math.inf


class CannotDualizeError(ValueError):
    pass


class HorizonError(RuntimeError):
    """A computation did not stabilize within the allowed horizon."""


# --------------------------------------------------------------------------
# atoms


@dataclass(frozen=True)
class Free:
    shift: int = 0
    ring: PolyRing = KC


@dataclass(frozen=True)
class CyclicTorsion:
    shift: int
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("CyclicTorsion needs n >= 1")


@dataclass(frozen=True)
class GradedDual:
    ring: PolyRing = KC


@dataclass(frozen=True)
class Tate:
    pass


@dataclass(frozen=True)
class KoszulQuot:
    ring: PolyRing
    n: int


@dataclass(frozen=True)
class LocCohTop:
    ring: PolyRing = KC


@dataclass(frozen=True)
class Suspension:
    shift: int
    atom: object


@dataclass(frozen=True)
class Sum:
    atoms: tuple

    def __init__(self, atoms):
        object.__setattr__(self, "atoms", tuple(atoms))


@dataclass(frozen=True)
class TruncatedFamily:
    """⊕_{s=1..N} Σ^{2s} P/(x_1^s, x_2, ..., x_r) over a ring with r variables."""

    N: int
    ring: PolyRing = KC


# --------------------------------------------------------------------------
# degreewise oracles


@dataclass(frozen=True)
class _Shape:
    bottom: float  # lowest nonzero degree, -inf if unbounded
    top: float  # highest nonzero degree, inf if unbounded
    periodic_above: float  # actions are the identity between degrees >= this; inf if never
    periodic_below: float  # same for degrees <= this; -inf if never


class _KcOracle:
    def __init__(self, m: KcModule):
        self.m = m
        self.ring = KC

    def dim(self, d):
        return self.m.dim(d)

    def act(self, i, d):
        return self.m.c_block(d)

    def shape(self):
        atoms = self.m.atoms
        if not atoms:
            return _Shape(INF, -INF, -INF, INF)
        bottom = min(a.socle for a in atoms)
        if any(isinstance(a, Dual) for a in atoms):
            tops = [a.shift for a in atoms if isinstance(a, Cyc)]
            pa = max([a.shift for a in atoms if isinstance(a, Dual)] + [t + 1 for t in tops])
            return _Shape(bottom, INF, pa, bottom - 1)
        return _Shape(bottom, max(a.shift for a in atoms), -INF, bottom - 1)


class _TateOracle:
    ring = KC

    def dim(self, d):
        return 1 - d % 2

    def act(self, i, d):
        return Mat.identity(1) if d % 2 == 0 else Mat.zeros(0, 0)

    def shape(self):
        return _Shape(-INF, INF, -INF, INF)


class _FreeOracle:
    def __init__(self, shift, ring):
        self.shift, self.ring = shift, ring
        self.m = FGModule.free(ring, [shift])

    def dim(self, d):
        return self.m.dim(d)

    def act(self, i, d):
        return self.m.act(i, d)

    def shape(self):
        pb = self.shift if self.ring.nvars == 1 else -INF
        if self.ring.nvars == 0:
            return _Shape(self.shift, self.shift, self.shift + 1, self.shift - 1)
        return _Shape(-INF, self.shift, self.shift + 1, pb)


class _FGOracle:
    def __init__(self, m: FGModule):
        self.m, self.ring = m, m.ring

    def dim(self, d):
        return self.m.dim(d)

    def act(self, i, d):
        return self.m.act(i, d)

    def shape(self):
        top = self.m.top
        if self.m.is_finite_length():
            d = min(self.m.gen_degrees, default=0)
            while self.m.dim(d - 1) or self.m.dim(d - 2) or self.m.dim(d):
                d -= 1
            bottom = d + 1
            while bottom <= top and not self.m.dim(bottom):
                bottom += 1
            return _Shape(bottom, top, top + 1, bottom - 1)
        return _Shape(-INF, top, top + 1, -INF)


class _ArtinianOracle:
    def __init__(self, m: ArtinianModule, periodic_from=None):
        self.m, self.ring = m, m.ring
        self.periodic_from = periodic_from

    def dim(self, d):
        return self.m.dim(d)

    def act(self, i, d):
        return self.m.act(i, d)

    def shape(self):
        inner = _FGOracle(self.m.dual).shape()
        pa = self.periodic_from if self.periodic_from is not None else -inner.periodic_below
        return _Shape(-inner.top, -inner.bottom, pa, -inner.periodic_above)


class _LocCohOracle:
    """Top local cohomology of P on the negative-monomial basis x^{-a}, a_i >= 1."""

    def __init__(self, ring: PolyRing):
        self.ring = ring
        self.s = ring.nvars

    def basis(self, d):
        if d % 2:
            return []
        w = d // 2 - self.s
        if w < 0:
            return []
        from .rings import monomials

        return [tuple(x + 1 for x in e) for e in monomials(self.s, w)]

    def dim(self, d):
        if self.s == 0:
            return int(d == 0)
        return len(self.basis(d))

    def act(self, i, d):
        src, tgt = self.basis(d), self.basis(d - 2)
        index = {b: k for k, b in enumerate(tgt)}
        m = Mat.zeros(len(tgt), len(src))
        for col, a in enumerate(src):
            if a[i] >= 2:
                b = tuple(x - (1 if j == i else 0) for j, x in enumerate(a))
                m.rows[index[b]][col] = Fraction(1)
        return m

    def shape(self):
        start = 2 * self.s
        pa = start if self.s <= 1 else INF
        return _Shape(start, INF if self.s else 0, pa, start - 1)


class _SuspOracle:
    def __init__(self, inner, a):
        self.inner, self.a, self.ring = inner, a, inner.ring

    def dim(self, d):
        return self.inner.dim(d - self.a)

    def act(self, i, d):
        return self.inner.act(i, d - self.a)

    def shape(self):
        s = self.inner.shape()
        return _Shape(s.bottom + self.a, s.top + self.a, s.periodic_above + self.a, s.periodic_below + self.a)


class _SumOracle:
    def __init__(self, parts):
        self.parts = list(parts)
        rings = {p.ring for p in self.parts}
        if len(rings) > 1:
            raise ValueError("summands live over different rings")
        self.ring = rings.pop() if rings else KC

    def dim(self, d):
        return sum(p.dim(d) for p in self.parts)

    def act(self, i, d):
        blocks = [p.act(i, d) for p in self.parts]
        return _block_diag(blocks)

    def shape(self):
        if not self.parts:
            return _Shape(INF, -INF, -INF, INF)
        sh = [p.shape() for p in self.parts]
        pa = max(s.periodic_above if s.top == INF else min(s.periodic_above, s.top + 1) for s in sh)
        pb = min(s.periodic_below if s.bottom == -INF else max(s.periodic_below, s.bottom - 1) for s in sh)
        return _Shape(min(s.bottom for s in sh), max(s.top for s in sh), pa, pb)


def _block_diag(blocks: Sequence[Mat]) -> Mat:
    nr = sum(b.nrows for b in blocks)
    nc = sum(b.ncols for b in blocks)
    m = Mat.zeros(nr, nc)
    r = c = 0
    for b in blocks:
        for i in range(b.nrows):
            for j in range(b.ncols):
                m.rows[r + i][c + j] = b.rows[i][j]
        r += b.nrows
        c += b.ncols
    return m


def oracle_of(atom):
    """Degreewise oracle (dim/act/shape) for an atom or a module object."""
    if isinstance(atom, KcModule):
        return _KcOracle(atom)
    if isinstance(atom, FGModule):
        return _FGOracle(atom)
    if isinstance(atom, ArtinianModule):
        return _ArtinianOracle(atom)
    if isinstance(atom, WindowedModule):
        return atom
    if isinstance(atom, Free):
        return _FreeOracle(atom.shift, atom.ring)
    if isinstance(atom, CyclicTorsion):
        return _KcOracle(KcModule.of(Cyc(atom.shift, atom.n)))
    if isinstance(atom, GradedDual):
        if atom.ring == KC:
            return _KcOracle(KcModule.of(Dual(0)))
        if atom.ring.nvars == 0:
            return _FGOracle(FGModule.free(atom.ring, [0]))
        return _ArtinianOracle(ArtinianModule(FGModule.free(atom.ring, [0])))
    if isinstance(atom, Tate):
        return _TateOracle()
    if isinstance(atom, KoszulQuot):
        return _FGOracle(FGModule.koszul_quotient(atom.ring, atom.n))
    if isinstance(atom, LocCohTop):
        return _LocCohOracle(atom.ring)
    if isinstance(atom, Suspension):
        return _SuspOracle(oracle_of(atom.atom), atom.shift)
    if isinstance(atom, Sum):
        return _SumOracle([oracle_of(a) for a in atom.atoms])
    if isinstance(atom, TruncatedFamily):
        return _SumOracle([_FGOracle(_family_member(atom.ring, s)) for s in range(1, atom.N + 1)])
    raise TypeError(f"not an atom: {atom!r}")


def _family_member(ring: PolyRing, s: int) -> FGModule:
    r = ring.nvars
    gens = [tuple(s if j == 0 else 0 for j in range(r))] + [
        tuple(1 if j == i else 0 for j in range(r)) for i in range(1, r)
    ]
    return FGModule.monomial_quotient(ring, gens, 2 * s)


# --------------------------------------------------------------------------
# windowed modules


@dataclass(frozen=True, eq=False)
class WindowedModule:
    ring: PolyRing
    space: GradedSpace
    actions: tuple  # one GradedMap of shift -2 per generator

    def __post_init__(self):
        if len(self.actions) != self.ring.nvars:
            raise ValueError("need one action per ring generator")
        for a in self.actions:
            if a.shift != -2:
                raise ValueError("generator actions have shift -2")

    @property
    def lo(self) -> int:
        return self.space.lo

    @property
    def hi(self) -> int:
        return self.space.hi

    def dim(self, d: int) -> int:
        return self.space.dim(d)

    def act(self, i: int, d: int) -> Mat:
        lo, hi = self.lo, self.hi
        if lo <= d - 2 and d <= hi:
            return self.actions[i].block(d)
        if d > hi or d - 2 < lo:
            outside = d if d > hi else d - 2
            tag = self.space.above if outside > hi else self.space.below
            if tag.kind == "UNKNOWN":
                raise PoisonedError(f"action at degree {d} lies beyond an UNKNOWN edge")
            if tag.kind == "ZERO":
                return Mat.zeros(self.dim(d - 2), self.dim(d))
            return Mat.identity(self.dim(d))
        raise AssertionError

    def shape(self) -> _Shape:
        b = self.space.below
        a = self.space.above
        bottom = -INF if b.kind != "ZERO" else self.lo
        top = INF if a.kind != "ZERO" else self.hi
        return _Shape(bottom, top, self.hi if a.kind == "PERIODIC" else INF, self.lo if b.kind == "PERIODIC" else -INF)

    def degrees(self) -> range:
        return self.space.degrees

    def commutes(self) -> bool:
        """Generator actions commute on the window."""
        n = self.ring.nvars
        for d in range(self.lo + 4, self.hi + 1):
            for i in range(n):
                for j in range(i + 1, n):
                    if self.act(i, d - 2) @ self.act(j, d) != self.act(j, d - 2) @ self.act(i, d):
                        return False
        return True

    def restrict(self, lo: int, hi: int) -> "WindowedModule":
        return realize(self, (lo, hi))

    def is_zero(self) -> bool:
        return self.space.total() == 0 and UNKNOWN not in (self.space.below, self.space.above)

    def torsion_exponents(self, forms: Sequence[LinearForm]) -> dict[int, int]:
        """Per degree, the least k with (Π forms)^k killing that degree."""
        f = _product(self.ring, forms)
        out = {}
        for d in self.degrees():
            if not self.dim(d):
                continue
            k, m = 0, Mat.identity(self.dim(d))
            cur = d
            while not m.is_zero():
                m = _poly_block(self, f, cur) @ m
                cur += f.degree
                k += 1
                if k > (self.hi - self.lo) // 2 + 3:
                    raise HorizonError(f"degree {d} is not torsion within the window")
            out[d] = k
        return out

    def __repr__(self) -> str:
        return f"WindowedModule({self.ring}, {self.space.as_dict()}, below={self.space.below}, above={self.space.above})"


def _window_tags(shape: _Shape, lo: int, hi: int) -> tuple[Tag, Tag]:
    if lo <= shape.bottom:
        below = ZERO
    elif lo + 3 <= shape.periodic_below:
        below = periodic(lo)
    else:
        below = UNKNOWN
    if hi >= shape.top:
        above = ZERO
    elif hi - 3 >= shape.periodic_above:
        above = periodic(hi)
    else:
        above = UNKNOWN
    return below, above


def realize(atom, window: tuple[int, int]) -> WindowedModule:
    """Degreewise data of an atom (or module object) on ``window`` with edge tags."""
    lo, hi = window
    o = oracle_of(atom)
    below, above = _window_tags(o.shape(), lo, hi)
    dims = {d: o.dim(d) for d in range(lo, hi + 1)}
    space = GradedSpace.from_dict(lo, hi, dims, below, above)
    acts = []
    for i in range(o.ring.nvars):
        blocks = {d: o.act(i, d) for d in range(lo + 2, hi + 1)}
        acts.append(GradedMap(space, space, -2, blocks))
    return WindowedModule(o.ring, space, tuple(acts))


def direct_sum(*ms: WindowedModule) -> WindowedModule:
    lo = min(m.lo for m in ms)
    hi = max(m.hi for m in ms)
    return realize(_SumOracle(ms), (lo, hi))


# --------------------------------------------------------------------------
# duality, torsion, Hom


def _flip(tag: Tag, edge: int) -> Tag:
    if tag.kind == "PERIODIC":
        return periodic(edge)
    return tag


def matlis_dual(M):
    """Graded dual, (M^∨)_d = Hom(M_{-d}, Q) with transposed actions.

    Windowed modules are dualized on the mirrored window; an UNKNOWN edge
    cannot be dualized.  An :class:`FGModule` and an
    :class:`ArtinianModule` are exchanged.
    """
    if isinstance(M, FGModule):
        return ArtinianModule(M)
    if isinstance(M, ArtinianModule):
        return M.dual
    if not isinstance(M, WindowedModule):
        M = realize(M, _default_window(M))
    if UNKNOWN in (M.space.below, M.space.above):
        raise CannotDualizeError("module has an UNKNOWN edge; cannot dualize")
    lo, hi = -M.hi, -M.lo
    dims = {d: M.dim(-d) for d in range(lo, hi + 1)}
    space = GradedSpace.from_dict(lo, hi, dims, _flip(M.space.above, lo), _flip(M.space.below, hi))
    acts = []
    for i in range(M.ring.nvars):
        blocks = {d: M.act(i, -d + 2).T() for d in range(lo + 2, hi + 1)}
        acts.append(GradedMap(space, space, -2, blocks))
    return WindowedModule(M.ring, space, tuple(acts))


def _default_window(atom) -> tuple[int, int]:
    s = oracle_of(atom).shape()
    lo = int(s.bottom) if s.bottom != -INF else -20
    hi = int(s.top) if s.top != INF else 20
    return lo, hi


def _product(ring: PolyRing, forms: Sequence[LinearForm]) -> Poly:
    f = ring.one()
    for form in forms:
        f = f * form.poly(ring)
    return f


def _poly_block(M, f: Poly, d: int) -> Mat:
    from .polymod import poly_act

    return poly_act(M, f, d)


def _sub_kernel(M: WindowedModule, f: Poly, d: int) -> list[list[Fraction]]:
    """Elements of degree d killed by a power of f, using the edge tags."""
    if f.degree == 0:
        return [] if not f.is_zero() else Mat.identity(M.dim(d)).columns()
    below = M.space.below
    if below.kind == "UNKNOWN":
        raise PoisonedError("torsion needs the lower edge to be known")
    m, cur = Mat.identity(M.dim(d)), d
    steps = 0
    while cur + f.degree >= M.lo - 4 and steps < 10_000:
        m = _poly_block(M, f, cur) @ m
        cur += f.degree
        steps += 1
        if cur < M.lo and below.kind == "ZERO":
            break
    return m.nullspace() if m.nrows else Mat.identity(M.dim(d)).columns()


def gamma_torsion(M: WindowedModule, forms: Sequence[LinearForm]) -> WindowedModule:
    """Submodule of elements killed by a power of the product of ``forms``."""
    f = _product(M.ring, forms)
    subs = {d: _sub_kernel(M, f, d) for d in M.degrees()}
    # beyond a PERIODIC edge the module repeats with identity actions, so
    # torsion there repeats the torsion at the edge
    return submodule(M, subs, (M.space.below, M.space.above))


def submodule(M: WindowedModule, subs: dict[int, list[list[Fraction]]], tags: tuple[Tag, Tag] | None = None) -> WindowedModule:
    """Windowed submodule spanned by the given degreewise bases (must be closed).

    Edge tags default to UNKNOWN unless supplied or inherited unchanged
    from a ZERO edge.
    """
    dims = {d: len(v) for d, v in subs.items()}
    if tags is None:
        tags = tuple(t if t.kind == "ZERO" else UNKNOWN for t in (M.space.below, M.space.above))
    space = GradedSpace.from_dict(M.lo, M.hi, dims, *tags)
    acts = []
    for i in range(M.ring.nvars):
        blocks = {}
        for d in range(M.lo + 2, M.hi + 1):
            src, tgt = subs[d], subs[d - 2]
            B = Mat.from_columns(tgt, M.dim(d - 2))
            cols = []
            for v in src:
                x = B.solve(M.act(i, d).apply(v))
                if x is None:
                    raise ValueError("subspace is not closed under the action")
                cols.append(x)
            blocks[d] = Mat.from_columns(cols, len(tgt))
        acts.append(GradedMap(space, space, -2, blocks))
    return WindowedModule(M.ring, space, tuple(acts))


def _extend(M, lo, hi):
    return realize(M, (lo, hi)) if isinstance(M, WindowedModule) else realize(M, (lo, hi))


def _hom_solutions(M: WindowedModule, N: WindowedModule, degree: int, lo: int, hi: int):
    """All degree-``degree`` maps M -> N on [lo, hi] commuting with the actions."""
    degs = [e for e in range(lo, hi + 1) if M.dim(e) and N.dim(e + degree)]
    layout, off = {}, 0
    for e in degs:
        layout[e] = off
        off += M.dim(e) * N.dim(e + degree)
    eqs = []
    for e in range(lo + 2, hi + 1):
        for i in range(M.ring.nvars):
            # phi_{e-2} a^M_e = a^N_{e+deg} phi_e
            am = M.act(i, e)
            an = N.act(i, e + degree)
            rows = N.dim(e - 2 + degree)
            cols = M.dim(e)
            for r in range(rows):
                for c in range(cols):
                    v = [Fraction(0)] * off
                    if e - 2 in layout:
                        base = layout[e - 2]
                        w = M.dim(e - 2)
                        for k in range(w):
                            if am.rows[k][c]:
                                v[base + r * w + k] += am.rows[k][c]
                    if e in layout:
                        base = layout[e]
                        w = M.dim(e)
                        for k in range(N.dim(e + degree)):
                            if an.rows[r][k]:
                                v[base + k * w + c] -= an.rows[r][k]
                    if any(v):
                        eqs.append(v)
    if not off:
        return layout, []
    A = Mat(eqs, off) if eqs else Mat.zeros(0, off)
    return layout, A.nullspace()


def hom_graded(M, N, degree: int = 0, window: tuple[int, int] | None = None, horizon: int = 6) -> dict:
    """Degree-``degree`` graded module maps M -> N (raising degrees by ``degree``).

    The commutation system is solved on windows enlarged through the edge
    tags, and the solution space is restricted to the trust window.  The
    reported dimension must agree for two successive enlargements.
    """
    if window is None:
        window = (M.lo, M.hi) if isinstance(M, WindowedModule) else _default_window(M)
    lo, hi = window
    dims = []
    for pad in (2 * horizon, 4 * horizon):
        Mx = _extend(M, lo - pad, hi + pad)
        Nx = _extend(N, lo - pad + degree, hi + pad + degree)
        layout, sols = _hom_solutions(Mx, Nx, degree, lo - pad, hi + pad)
        keep = [k for e, base in layout.items() if lo <= e <= hi for k in range(base, base + Mx.dim(e) * Nx.dim(e + degree))]
        proj = Mat.from_columns([[v[k] for k in keep] for v in sols], len(keep)) if keep else Mat.zeros(0, 0)
        dims.append(proj.rank() if keep and sols else 0)
    if dims[0] != dims[1]:
        raise HorizonError(f"Hom did not stabilize: {dims}")
    return {"dim": dims[1], "trust_window": (lo, hi), "degree": degree}


# --------------------------------------------------------------------------
# text format

_HEADER = "# cousinet-v1"


def _fmt_tag(t: Tag) -> str:
    return str(t)


def _parse_tag(s: str) -> Tag:
    if s.startswith("PERIODIC("):
        period, ref = s[len("PERIODIC("):-1].split(",")
        return Tag("PERIODIC", int(period), int(ref))
    return Tag(s)


def dumps(M: WindowedModule) -> str:
    """Line-oriented text form; ``loads(dumps(M))`` reproduces M exactly."""
    lines = [_HEADER, f"module ring={','.join(M.ring.names) or '-'} lo={M.lo} hi={M.hi} "
             f"below={_fmt_tag(M.space.below)} above={_fmt_tag(M.space.above)}"]
    for d in M.degrees():
        lines.append(f"dim {d} {M.dim(d)}")
    for i, a in enumerate(M.actions):
        for d in range(M.lo + 2, M.hi + 1):
            blk = a.block(d)
            if blk.nrows and blk.ncols:
                flat = " ".join(str(x) for row in blk.rows for x in row)
                lines.append(f"act {i} {d} {blk.nrows} {blk.ncols} {flat}")
    return "\n".join(lines) + "\n"


def loads(text: str) -> WindowedModule:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != _HEADER:
        raise ValueError("missing format header")
    head = dict(kv.split("=", 1) for kv in lines[1].split()[1:])
    names = () if head["ring"] == "-" else tuple(head["ring"].split(","))
    ring = PolyRing(names)
    lo, hi = int(head["lo"]), int(head["hi"])
    dims, blocks = {}, [dict() for _ in names]
    for ln in lines[2:]:
        parts = ln.split()
        if parts[0] == "dim":
            dims[int(parts[1])] = int(parts[2])
        elif parts[0] == "act":
            i, d, r, c = map(int, parts[1:5])
            vals = [Fraction(x) for x in parts[5:]]
            blocks[i][d] = Mat([vals[k * c:(k + 1) * c] for k in range(r)], c)
        else:
            raise ValueError(f"unknown record {parts[0]!r}")
    space = GradedSpace.from_dict(lo, hi, dims, _parse_tag(head["below"]), _parse_tag(head["above"]))
    acts = tuple(GradedMap(space, space, -2, b) for b in blocks)
    return WindowedModule(ring, space, acts)


def complement(sub: list[list[Fraction]], n: int) -> list[list[Fraction]]:
    return complement_basis(sub, n)
