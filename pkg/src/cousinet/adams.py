"""Algebraic images of standard spectra and the Adams E2 page.

Suspensions follow one rule, applied in :func:`_contribution`: the part
of X coming from a subgroup K is suspended by twice the codimension
dim(G/K) of K (for the homology of Borel constructions) or by dim(G/K)
for the Euler-class objects E<K>.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .atcat import AtObject, P2, Rank2Object, b_object, mk_f
from .kcmod import Cyc, Dual, KcModule
from .polymod import ArtinianModule, FGModule
from .resolve import ExtTable, ext_at, inj_res_sf_rank1, shuffle_resolution
from .rings import G1, TRIVIAL1, ConnSubgroup

__all__ = ["CatalogueEntry", "catalogue", "catalogue_names", "E2Page", "adams_e2", "UnknownEntryError"]


class UnknownEntryError(KeyError):
    pass


@dataclass(frozen=True, eq=False)
class CatalogueEntry:
    name: str
    params: tuple
    obj: object
    formula: str


def _contribution(codim: int, kind: str) -> int:
    """Suspension of the piece living at a subgroup of codimension ``codim``."""
    return 2 * codim if kind == "borel" else codim


def _rank1(name: str, n: int | None) -> CatalogueEntry:
    borel = _contribution(1, "borel")
    if name == "S0":
        obj = AtObject.make([0], KcModule.of(Dual(borel)), [[1]])
        return CatalogueEntry(name, (), obj, "t ⊗ Q -> Σ^2 k[c]^∨, q̃ the projection t -> t/k[c]")
    if name == "S":
        # S^{nz}: geometric fixed points S^0, Borel homology Σ^{2n} k[c]^∨
        obj = AtObject.make([0], KcModule.of(Dual(borel + 2 * n)), [[1]])
        return CatalogueEntry(f"S^{n}z", (n,), obj, "t ⊗ Q -> Σ^{2+2n} k[c]^∨")
    if name == "EG+":
        return CatalogueEntry(name, (), mk_f(TRIVIAL1, KcModule.of(Dual(borel))), "Σ^2 f_1(k[c]^∨)")
    if name in ("EF~", "E<G>"):
        return CatalogueEntry(name, (), mk_f(G1, 1), "f_G(Q)")
    if name == "E<1>":
        obj = mk_f(TRIVIAL1, KcModule.of(Dual(_contribution(1, "euler"))))
        return CatalogueEntry(name, (), obj, "f_1(Σ k[c]^∨)")
    if name == "G+":
        return CatalogueEntry(name, (), mk_f(TRIVIAL1, KcModule.of(Cyc(borel, 1))), "f_1(Σ^2 Q)")
    if name == "DS+":
        return CatalogueEntry(f"DS({n}z)+", (n,), mk_f(TRIVIAL1, KcModule.of(Cyc(0, n))), "f_1(k[c]/c^n)")
    raise UnknownEntryError(name)


def _rank2(name: str, K: ConnSubgroup | None, n: int | None) -> CatalogueEntry:
    if name == "E<K>":
        codim = K.codim
        s = _contribution(codim, "euler")
        if K.kind == "1":
            T = ArtinianModule(FGModule.free(P2, [0])).suspend(s)
        elif K.kind == "circle":
            T = KcModule.of(Dual(s))
        else:
            T = 1
        return CatalogueEntry(f"E<{K}>", (K,), mk_f(K, T), "f_K(Σ^{dim G/K} H_*(BG/K))")
    if name == "B":
        return CatalogueEntry(f"B_{K}({n})", (K, n), b_object(K, 0, n), "component P/m^[n]")
    raise UnknownEntryError(name)


_RANK1 = ("S0", "EG+", "EF~", "E<1>", "E<G>", "G+")
_RANK1_PARAM = ("S", "DS+")


def catalogue_names() -> list[str]:
    """Rank-1 entries, parameterized ones at a few sample values."""
    return list(_RANK1) + ["S(-1)", "S(-2)", "S(1)", "DS+(1)", "DS+(2)", "DS+(3)"]


def catalogue(name: str, *params, rank: int = 1) -> CatalogueEntry:
    """Look up an entry.  Parameterized names also parse as ``S(-2)``, ``DS+(3)``."""
    if "(" in name and not params and name.split("(")[0] in _RANK1_PARAM:
        base, arg = name[:-1].split("(", 1)
        name, params = base, (int(arg),)
    if rank == 1:
        if name in _RANK1:
            return _rank1(name, None)
        if name in _RANK1_PARAM:
            if len(params) != 1:
                raise UnknownEntryError(f"{name} takes one integer parameter")
            if name == "DS+" and params[0] < 1:
                raise UnknownEntryError("DS(nz)+ needs n >= 1")
            return _rank1(name, int(params[0]))
        raise UnknownEntryError(name)
    K = params[0] if params else None
    n = params[1] if len(params) > 1 else None
    return _rank2(name, K, n)


@dataclass
class E2Page:
    source: str
    target: str
    table: ExtTable
    rank: int
    notes: list[str] = field(default_factory=list)

    @property
    def max_s(self) -> int:
        return self.table.max_s

    def vanishes_above(self, s: int) -> bool:
        return self.max_s <= s

    def d2_candidates(self) -> list[tuple[int, int]]:
        """(0, t) with both E2^{0,t} and E2^{2,t+1} nonzero: the only room for d2."""
        d = self.table.dims
        return sorted(
            (0, t) for (s, t), n in d.items() if s == 0 and n and d.get((2, t + 1), 0)
        )

    def edge(self) -> dict[int, int]:
        """The edge Ext^0 = Hom row, which carries the d-invariant."""
        return self.table.row(0)

    def tsv(self) -> str:
        lines = ["# cousinet-v1", f"# E2 {self.source} -> {self.target} rank {self.rank}", "s\tt\tdim"]
        for (s, t), n in sorted(self.table.dims.items()):
            lines.append(f"{s}\t{t}\t{n}")
        for note in self.notes:
            lines.append(f"# {note}")
        return "\n".join(lines) + "\n"

    def pretty(self) -> str:
        dims = self.table.dims
        ts = sorted({t for _, t in dims})
        ss = sorted({s for s, _ in dims}, reverse=True)
        width = max(3, max((len(str(t)) for t in ts), default=1) + 1)
        lines = ["# cousinet-v1", f"E2 {self.source} -> {self.target} (rank {self.rank})"]
        for s in ss:
            cells = "".join(
                (str(dims.get((s, t), 0)) if dims.get((s, t), 0) else ".").rjust(width) for t in ts
            )
            lines.append(f"s={s} |{cells}")
        lines.append("     +" + "-" * (width * len(ts)))
        lines.append("   t  " + "".join(str(t).rjust(width) for t in ts))
        lines.append("edge Ext^0 (d-invariant): " + " ".join(f"{t}:{n}" for t, n in sorted(self.edge().items()) if n))
        for note in self.notes:
            lines.append(note)
        return "\n".join(lines) + "\n"


def _resolve_name(X) -> tuple[str, object]:
    if isinstance(X, str):
        e = catalogue(X)
        return e.name, e.obj
    if isinstance(X, CatalogueEntry):
        return X.name, X.obj
    return str(X), X


def adams_e2(X, Y, window: tuple[int, int] = (-10, 10), shuffle_seed: int | None = None) -> E2Page:
    """E2 = Ext(π(X), π(Y)) from an injective resolution of π(Y)."""
    xn, xo = _resolve_name(X)
    yn, yo = _resolve_name(Y)
    if isinstance(xo, Rank2Object) or isinstance(yo, Rank2Object):
        table = ext_at(xo, yo, window)
        return E2Page(xn, yn, table, 2, ["finite: s <= 2r = 4"])
    res = inj_res_sf_rank1(yo)
    if shuffle_seed is not None:
        res = shuffle_resolution(res, shuffle_seed)
    table = ext_at(xo, yo, window, resolution=res)
    table.provenance = [f"resolution of {yn}"]
    page = E2Page(xn, yn, table, 1, ["collapses at E3: only d2 : E2^{0,t} -> E2^{2,t+1} can be nonzero"])
    cands = page.d2_candidates()
    page.notes.append("d2 room: " + (" ".join(f"(0,{t})" for _, t in cands) if cands else "none"))
    return page
