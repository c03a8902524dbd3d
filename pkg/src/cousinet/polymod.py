"""Finitely generated graded modules over Q[x_1..x_s] and their Matlis duals.

A :class:`FGModule` is a cokernel of a homogeneous polynomial matrix.  It
is realized one degree at a time: the degree-d piece of the free module
has a monomial basis, the relations span a subspace, and the quotient gets
the non-pivot coordinates of the reduced relation matrix as its basis.

An Artinian torsion module is stored as the graded dual of an
``FGModule`` (:class:`ArtinianModule`).  Socle, injective hull and the
cokernel of the hull all come from the free resolution of the dual.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Protocol, Sequence

from .qlinalg import Mat
from .rings import GradingError, Poly, PolyRing, monomials, syzygy_basis

__all__ = [
    "DegreewiseModule",
    "FGModule",
    "ArtinianModule",
    "FreeResolution",
    "free_resolution",
    "tor_dims",
    "betti",
    "projective_dimension",
    "hom_fg",
]


class DegreewiseModule(Protocol):
    ring: PolyRing

    def dim(self, d: int) -> int: ...

    def act(self, i: int, d: int) -> Mat: ...


def poly_act(module: DegreewiseModule, f: Poly, d: int) -> Mat:
    """Matrix of multiplication by a homogeneous polynomial, degree d -> d + deg f."""
    if f.is_zero():
        raise ValueError("zero polynomial has no degree")
    target = d + f.degree
    out = Mat.zeros(module.dim(target), module.dim(d))
    for e, c in f.terms.items():
        m = Mat.identity(module.dim(d))
        cur = d
        for i, k in enumerate(e):
            for _ in range(k):
                m = module.act(i, cur) @ m
                cur -= 2
        out = out + m.scale(c)
    return out


def _weight(parity: int, degree: int) -> int:
    return (parity - degree) // 2


@dataclass(frozen=True)
class _Piece:
    basis: tuple  # F_d basis: (generator, exponent)
    rows: Mat  # reduced relation rows
    pivots: tuple
    free: tuple  # quotient basis as positions in ``basis``


@dataclass(frozen=True, eq=False)
class FGModule:
    """Cokernel of ``relations`` on free generators in ``gen_degrees``.

    Each relation is a tuple with one homogeneous polynomial per generator.
    """

    ring: PolyRing
    gen_degrees: tuple[int, ...]
    relations: tuple[tuple[Poly, ...], ...] = ()
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "gen_degrees", tuple(self.gen_degrees))
        object.__setattr__(self, "relations", tuple(tuple(r) for r in self.relations))
        for r in self.relations:
            if len(r) != len(self.gen_degrees):
                raise ValueError("relation length does not match generator count")
        self.relation_degrees  # validates homogeneity

    # -- constructors -------------------------------------------------------

    @classmethod
    def free(cls, ring: PolyRing, degrees: Sequence[int]) -> "FGModule":
        return cls(ring, tuple(degrees), (), "free")

    @classmethod
    def monomial_quotient(cls, ring: PolyRing, gens: Sequence[tuple[int, ...]], shift: int = 0) -> "FGModule":
        """Σ^shift P/(monomials)."""
        rels = tuple((Poly(ring, {e: 1}),) for e in gens)
        return cls(ring, (shift,), rels, "monomial")

    @classmethod
    def koszul_quotient(cls, ring: PolyRing, n: int, shift: int = 0) -> "FGModule":
        """Σ^shift P/(x_1^n, ..., x_s^n)."""
        s = ring.nvars
        gens = [tuple(n if j == i else 0 for j in range(s)) for i in range(s)]
        return cls.monomial_quotient(ring, gens, shift)

    @classmethod
    def residue_field(cls, ring: PolyRing, shift: int = 0) -> "FGModule":
        return cls.koszul_quotient(ring, 1, shift)

    # -- grading ------------------------------------------------------------

    @cached_property
    def relation_degrees(self) -> tuple[int, ...]:
        out = []
        for r in self.relations:
            deg = None
            for j, f in enumerate(r):
                if f.is_zero():
                    continue
                if not f.is_homogeneous():
                    raise GradingError(f"relation entry {f} is not homogeneous")
                dj = self.gen_degrees[j] + f.degree
                if deg is None:
                    deg = dj
                elif deg != dj:
                    raise GradingError("relation is not homogeneous")
            out.append(deg if deg is not None else min(self.gen_degrees, default=0))
        return tuple(out)

    @property
    def ngens(self) -> int:
        return len(self.gen_degrees)

    @property
    def top(self) -> int:
        return max(self.gen_degrees, default=0)

    # -- degreewise realization ---------------------------------------------

    def _free_basis(self, d: int) -> tuple:
        s = self.ring.nvars
        out = []
        for j, g in enumerate(self.gen_degrees):
            if (g - d) % 2 or g < d:
                continue
            for e in monomials(s, (g - d) // 2):
                out.append((j, e))
        return tuple(out)

    @lru_cache(maxsize=None)
    def _piece(self, d: int) -> _Piece:
        basis = self._free_basis(d)
        index = {b: k for k, b in enumerate(basis)}
        vecs = []
        s = self.ring.nvars
        for r, delta in zip(self.relations, self.relation_degrees):
            if (delta - d) % 2 or delta < d:
                continue
            for e in monomials(s, (delta - d) // 2):
                v = [Fraction(0)] * len(basis)
                for j, f in enumerate(r):
                    for t, c in f.terms.items():
                        key = (j, tuple(a + b for a, b in zip(t, e)))
                        v[index[key]] += c
                vecs.append(v)
        if vecs:
            rows, piv = Mat(vecs, len(basis)).rref()
            rows = Mat(rows.rows[: len(piv)], len(basis))
        else:
            rows, piv = Mat.zeros(0, len(basis)), []
        free = tuple(k for k in range(len(basis)) if k not in set(piv))
        return _Piece(basis, rows, tuple(piv), free)

    def dim(self, d: int) -> int:
        return len(self._piece(d).free)

    def basis_labels(self, d: int) -> list[tuple[int, tuple[int, ...]]]:
        p = self._piece(d)
        return [p.basis[k] for k in p.free]

    def normal_form(self, d: int, v: Sequence) -> list[Fraction]:
        """Coordinates in the quotient basis of a vector of the free module."""
        p = self._piece(d)
        v = [Fraction(x) for x in v]
        for row, pc in zip(p.rows.rows, p.pivots):
            a = v[pc]
            if a:
                v = [x - a * y for x, y in zip(v, row)]
        return [v[k] for k in p.free]

    @lru_cache(maxsize=None)
    def act(self, i: int, d: int) -> Mat:
        """Multiplication by x_i from degree d to d - 2."""
        src = self._piece(d)
        tgt = self._piece(d - 2)
        index = {b: k for k, b in enumerate(tgt.basis)}
        cols = []
        for k in src.free:
            j, e = src.basis[k]
            e2 = tuple(a + (1 if t == i else 0) for t, a in enumerate(e))
            v = [Fraction(0)] * len(tgt.basis)
            v[index[(j, e2)]] = Fraction(1)
            cols.append(self.normal_form(d - 2, v))
        return Mat.from_columns(cols, len(tgt.free))

    def element(self, d: int, gen: int, poly: Poly) -> list[Fraction]:
        """Coordinates of poly * generator (which must land in degree d)."""
        p = self._piece(d)
        index = {b: k for k, b in enumerate(p.basis)}
        v = [Fraction(0)] * len(p.basis)
        for e, c in poly.terms.items():
            v[index[(gen, e)]] += c
        return self.normal_form(d, v)

    def suspend(self, a: int) -> "FGModule":
        return FGModule(self.ring, tuple(g + a for g in self.gen_degrees), self.relations, self.name)

    def __add__(self, other: "FGModule") -> "FGModule":
        z1 = [self.ring.zero()] * other.ngens
        z0 = [self.ring.zero()] * self.ngens
        rels = tuple(tuple(r) + tuple(z1) for r in self.relations) + tuple(
            tuple(z0) + tuple(r) for r in other.relations
        )
        return FGModule(self.ring, self.gen_degrees + other.gen_degrees, rels, "sum")

    def is_finite_length(self, probe: int = 12) -> bool:
        """True if the module vanishes ``probe`` steps below its generators."""
        lo = min(self.gen_degrees, default=0)
        return all(self.dim(lo - 2 * probe - k) == 0 for k in (0, 1))

    def __repr__(self) -> str:
        return f"FGModule({self.ring}, gens={list(self.gen_degrees)}, rels={len(self.relations)})"


@dataclass(frozen=True, eq=False)
class ArtinianModule:
    """The graded dual of a finitely generated module N.

    Degree d of the dual is the dual of N in degree -d; each generator acts
    by the transpose of its action on N.
    """

    dual: FGModule

    @property
    def ring(self) -> PolyRing:
        return self.dual.ring

    def dim(self, d: int) -> int:
        return self.dual.dim(-d)

    @lru_cache(maxsize=None)
    def act(self, i: int, d: int) -> Mat:
        return self.dual.act(i, -d + 2).T()

    @property
    def bottom(self) -> int:
        """Lowest degree that can be nonzero."""
        return -self.dual.top

    def socle_degrees(self) -> list[int]:
        """Degrees of the minimal injective hull summands (one per minimal generator of N)."""
        res = free_resolution(self.dual)
        return sorted(-d for d in res.minimal_degrees(0))

    def injective_dimension(self) -> int:
        return projective_dimension(self.dual)

    def is_injective(self) -> bool:
        return projective_dimension(self.dual) <= 0

    def suspend(self, a: int) -> "ArtinianModule":
        return ArtinianModule(self.dual.suspend(-a))

    def hull_cokernel(self) -> "ArtinianModule":
        """E(A)/A for the injective hull E(A), as the dual of the first syzygy of N."""
        res = free_resolution(self.dual)
        return ArtinianModule(res.syzygy_module(1))

    def __repr__(self) -> str:
        return f"ArtinianModule(dual={self.dual!r})"


# --------------------------------------------------------------------------
# free resolutions


@dataclass(frozen=True)
class FreeResolution:
    """F_s with generator degrees ``degrees[s]`` and maps ``maps[s]``: F_{s} -> F_{s-1}.

    ``maps[0]`` is unused (None); ``maps[s]`` has rows for F_{s-1} and
    columns for F_s.
    """

    ring: PolyRing
    degrees: tuple[tuple[int, ...], ...]
    maps: tuple

    @property
    def length(self) -> int:
        return len(self.degrees) - 1

    def minimal_degrees(self, s: int) -> list[int]:
        """Degrees of Tor_s(N, k), i.e. of a minimal F_s."""
        return [d for d, n in betti_table(self, s).items() for _ in range(n)]

    def syzygy_module(self, s: int) -> FGModule:
        """The s-th syzygy module (image of F_s in F_{s-1}) presented by F_{s+1}."""
        gens = self.degrees[s] if s < len(self.degrees) else ()
        if s + 1 < len(self.degrees):
            m = self.maps[s + 1]
            rels = tuple(tuple(m[i][j] for i in range(len(gens))) for j in range(len(self.degrees[s + 1])))
        else:
            rels = ()
        return FGModule(self.ring, gens, rels, f"syz{s}")


def _split_parity(degs):
    return {p: [j for j, d in enumerate(degs) if d % 2 == p] for p in (0, 1)}


def free_resolution(N: FGModule) -> FreeResolution:
    """Free resolution built from iterated minimal syzygies.

    F_0 is the given generators and F_1 the given relations; later terms
    come from :func:`syzygy_basis`.  Over at most two variables the second
    syzygy module is free, so the resolution stops.
    """
    return _resolve(N)


@lru_cache(maxsize=None)
def _resolve(N: FGModule) -> FreeResolution:
    ring = N.ring
    degrees = [tuple(N.gen_degrees)]
    maps = [None]
    if N.relations:
        m = [[N.relations[j][i] for j in range(len(N.relations))] for i in range(N.ngens)]
        degrees.append(tuple(N.relation_degrees))
        maps.append(m)
    while len(degrees) >= 2 and degrees[-1]:
        m = maps[-1]
        cols = degrees[-1]
        new_deg: list[int] = []
        new_cols: list[list[Poly]] = []
        for parity, idx in _split_parity(cols).items():
            if not idx:
                continue
            rows_used = [i for i in range(len(m)) if any(not m[i][j].is_zero() for j in idx)]
            sub = [[m[i][j] for j in idx] for i in rows_used] or [[ring.zero() for _ in idx]]
            weights = [_weight(parity, cols[j]) for j in idx]
            for w, col in syzygy_basis(sub, ring, weights):
                full = [ring.zero()] * len(cols)
                for j, f in zip(idx, col):
                    full[j] = f
                new_deg.append(parity - 2 * w)
                new_cols.append(full)
        if not new_cols:
            break
        degrees.append(tuple(new_deg))
        maps.append([[new_cols[j][i] for j in range(len(new_cols))] for i in range(len(cols))])
        if len(degrees) > ring.nvars + 3:
            raise ArithmeticError("free resolution failed to terminate")
    return FreeResolution(ring, tuple(degrees), tuple(maps))


def _tensor_complex_dims(res: FreeResolution, A: DegreewiseModule, s: int, t: int):
    """Matrix of F_{s} ⊗ A -> F_{s-1} ⊗ A in internal degree t."""
    src = res.degrees[s] if s < len(res.degrees) else ()
    tgt = res.degrees[s - 1] if 0 < s <= len(res.degrees) else ()
    src_dims = [A.dim(t - d) for d in src]
    tgt_dims = [A.dim(t - d) for d in tgt]
    m = Mat.zeros(sum(tgt_dims), sum(src_dims))
    if s == 0 or not src or not tgt:
        return m, sum(src_dims)
    D = res.maps[s]
    c0 = 0
    for b, db in enumerate(src):
        r0 = 0
        for a, da in enumerate(tgt):
            f = D[a][b]
            if not f.is_zero() and src_dims[b] and tgt_dims[a]:
                blk = poly_act(A, f, t - db)
                for i in range(blk.nrows):
                    for j in range(blk.ncols):
                        m.rows[r0 + i][c0 + j] += blk.rows[i][j]
            r0 += tgt_dims[a]
        c0 += src_dims[b]
    return m, sum(src_dims)


def tor_dims(res: FreeResolution, A: DegreewiseModule, s: int, t: int) -> int:
    """dim Tor_s(A, N)_t, computed as homology of A ⊗ F_•."""
    if s > res.length:
        return 0
    d_in, n = _tensor_complex_dims(res, A, s, t)
    rank_out = d_in.rank() if s > 0 else 0
    d_next, _ = _tensor_complex_dims(res, A, s + 1, t)
    rank_in = d_next.rank() if d_next.ncols and d_next.nrows else 0
    return n - rank_out - rank_in


def betti_table(res: FreeResolution, s: int) -> dict[int, int]:
    """Graded Betti numbers: dims of Tor_s(N, k) by degree."""
    if s > res.length:
        return {}
    k = FGModule.residue_field(res.ring)
    out = {}
    for t in sorted(set(res.degrees[s])):
        n = tor_dims(res, k, s, t)
        if n:
            out[t] = n
    return out


def betti(N: FGModule) -> list[dict[int, int]]:
    res = free_resolution(N)
    return [betti_table(res, s) for s in range(res.length + 1)]


def projective_dimension(N: FGModule) -> int:
    """Length of a minimal free resolution; -1 for the zero module."""
    b = betti(N)
    nz = [s for s, row in enumerate(b) if row]
    return max(nz) if nz else -1


def hom_fg(M: FGModule, N: FGModule, degree: int = 0) -> list[list[list[Fraction]]]:
    """Basis of degree-``degree`` module maps M -> N.

    A map is the list of images of M's generators (coordinates in N's
    quotient basis, generator j landing in degree gen_degrees[j] + degree).
    """
    layout = []
    for j, g in enumerate(M.gen_degrees):
        layout.append((j, g + degree, N.dim(g + degree)))
    nunk = sum(n for *_, n in layout)
    offsets = []
    acc = 0
    for _, _, n in layout:
        offsets.append(acc)
        acc += n
    eqs = []
    for r, delta in zip(M.relations, M.relation_degrees):
        tgt = delta + degree
        tdim = N.dim(tgt)
        block = [[Fraction(0)] * nunk for _ in range(tdim)]
        for j, f in enumerate(r):
            if f.is_zero():
                continue
            mat = poly_act(N, f, M.gen_degrees[j] + degree)
            for a in range(mat.nrows):
                for b in range(mat.ncols):
                    block[a][offsets[j] + b] += mat.rows[a][b]
        eqs.extend(block)
    if not nunk:
        return []
    A = Mat(eqs, nunk) if eqs else Mat.zeros(0, nunk)
    out = []
    for v in A.nullspace():
        out.append([v[offsets[j]: offsets[j] + n] for j, (_, _, n) in enumerate(layout)])
    return out
