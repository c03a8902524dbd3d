"""Inverse systems of finite-dimensional spaces: lim, lim¹ and completion.

A :class:`DegreeTower` is M_0 <- M_1 <- ... <- M_h together with the stage
``constant_from`` beyond which the real (infinite) tower is known to
consist of isomorphisms.  That knowledge comes from edge tags, never from
looking at the truncation.  When the horizon reaches it, lim and lim¹ of
the truncation are those of the infinite tower.

lim and lim¹ are the kernel and cokernel of

    δ : ⊕_{k<=K} M_k -> ⊕_{k<K} M_k,   δ(x)_k = x_k - f(x_{k+1}).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from .qlinalg import Mat
from .rings import LinearForm

__all__ = [
    "DegreeTower",
    "Tower",
    "LimResult",
    "tower_lim_lim1",
    "rlim_tower",
    "power_tower",
    "completion",
]


@dataclass(frozen=True)
class DegreeTower:
    dims: tuple[int, ...]
    maps: tuple[Mat, ...]  # maps[k] : M_{k+1} -> M_k
    constant_from: int | None = None

    def __post_init__(self):
        if len(self.maps) != len(self.dims) - 1:
            raise ValueError("need one map per consecutive pair of stages")
        for k, m in enumerate(self.maps):
            if m.shape != (self.dims[k], self.dims[k + 1]):
                raise ValueError(f"map {k} has shape {m.shape}")

    @property
    def horizon(self) -> int:
        return len(self.dims) - 1

    def composite(self, j: int, k: int) -> Mat:
        """M_j -> M_k for j >= k."""
        m = Mat.identity(self.dims[j])
        for i in range(j - 1, k - 1, -1):
            m = self.maps[i] @ m
        return m

    def image_dims(self, k: int = 0) -> list[int]:
        """dim im(M_j -> M_k) for j = k..h."""
        return [self.composite(j, k).rank() for j in range(k, self.horizon + 1)]

    @property
    def stabilized(self) -> bool:
        return self.constant_from is not None and self.constant_from <= self.horizon

    def is_surjective(self) -> bool:
        return all(m.rank() == m.nrows for m in self.maps)


@dataclass(frozen=True)
class LimResult:
    lim: int
    lim1: int
    stabilized: bool
    images: tuple[int, ...]


@dataclass(frozen=True)
class Tower:
    """Degreewise towers with a common horizon."""

    degrees: dict = field(default_factory=dict)

    @property
    def horizon(self) -> int:
        return min((t.horizon for t in self.degrees.values()), default=0)


def _milnor(t: DegreeTower, top: int) -> tuple[int, int]:
    src = t.dims[: top + 1]
    tgt = t.dims[:top]
    ns, nt = sum(src), sum(tgt)
    if ns == 0:
        return 0, nt
    m = Mat.zeros(nt, ns)
    so = [sum(src[:k]) for k in range(len(src))]
    to = [sum(tgt[:k]) for k in range(len(tgt))]
    for k in range(top):
        for i in range(t.dims[k]):
            m.rows[to[k] + i][so[k] + i] += 1
        f = t.maps[k]
        for i in range(f.nrows):
            for j in range(f.ncols):
                if f.rows[i][j]:
                    m.rows[to[k] + i][so[k + 1] + j] -= f.rows[i][j]
    r = m.rank() if nt else 0
    return ns - r, nt - r


def tower_lim_lim1(T: Tower | DegreeTower, min_horizon: int = 2) -> dict[int, LimResult] | LimResult:
    """lim and lim¹ per degree, with stabilization flags.

    In stabilized degrees the values are exact for the infinite tower; in
    the others they describe the truncation only.
    """
    if isinstance(T, DegreeTower):
        return _lim_one(T, min_horizon)
    return {d: _lim_one(t, min_horizon) for d, t in sorted(T.degrees.items())}


def _lim_one(t: DegreeTower, min_horizon: int) -> LimResult:
    if t.horizon < min_horizon:
        raise ValueError(f"tower horizon must be at least {min_horizon}")
    top = t.constant_from if t.stabilized else t.horizon
    lim, lim1 = _milnor(t, top)
    return LimResult(lim, lim1, t.stabilized, tuple(t.image_dims(0)))


# --------------------------------------------------------------------------
# towers from modules


def _constant_from(shape, start: int, step: int) -> int | None:
    """First stage index whose degree (start + step*k) lies in a repeating zone."""
    if step > 0:
        if shape.top != math.inf:
            return max(0, (int(shape.top) - start) // step + 1)
        if shape.periodic_above == -math.inf:
            return 0
        if shape.periodic_above != math.inf:
            return max(0, math.ceil((shape.periodic_above - start) / step))
        return None
    if shape.bottom != -math.inf:
        return max(0, (start - int(shape.bottom)) // (-step) + 1)
    if shape.periodic_below == math.inf:
        return 0
    if shape.periodic_below != -math.inf:
        return max(0, math.ceil((start - shape.periodic_below) / (-step)))
    return None


def rlim_tower(module, d: int, horizon: int) -> DegreeTower:
    """Tower M_d <- M_{d+2} <- M_{d+4} <- ... with maps c.

    Its lim and lim¹ are Hom(t, M)_d and Ext¹(t, M)_d.
    """
    from .gmod import oracle_of

    o = oracle_of(module)
    dims = tuple(o.dim(d + 2 * k) for k in range(horizon + 1))
    maps = tuple(o.act(0, d + 2 * k + 2) for k in range(horizon))
    return DegreeTower(dims, maps, _constant_from(o.shape(), d, 2))


def _power_spans(o, forms, d, horizon):
    from .gmod import _poly_block, _product

    e = _product(o.ring, forms)
    w = -e.degree
    spans = []
    for k in range(horizon + 1):
        cur = d + w * k
        m = Mat.identity(o.dim(cur))
        for _ in range(k):
            m = _poly_block(o, e, cur) @ m
            cur -= w
        spans.append(m.colspace())
    return spans, w


def power_tower(module, forms: Sequence[LinearForm], d: int, horizon: int) -> DegreeTower:
    """Subspaces (e^k M)_d with inclusions, e the product of ``forms``."""
    from .gmod import oracle_of

    o = oracle_of(module)
    spans, w = _power_spans(o, forms, d, horizon)
    return _subspace_tower(spans, o.dim(d), _constant_from(o.shape(), d, w) if w else 0)


def _subspace_tower(subs, ambient: int, constant_from) -> DegreeTower:
    dims = tuple(len(s) for s in subs)
    maps = []
    for k in range(len(subs) - 1):
        B = Mat.from_columns(subs[k], ambient)
        cols = [B.solve(v) for v in subs[k + 1]]
        if any(c is None for c in cols):
            raise ValueError("tower of subspaces is not decreasing")
        maps.append(Mat.from_columns(cols, dims[k]))
    return DegreeTower(dims, tuple(maps), constant_from)


def quotient_tower(module, forms: Sequence[LinearForm], d: int, horizon: int) -> DegreeTower:
    """(M / e^k M)_d with the projections; its lim is the completion in degree d."""
    from .gmod import oracle_of

    o = oracle_of(module)
    spans, w = _power_spans(o, forms, d, horizon)
    n = o.dim(d)
    comps = [_complement(s, n) for s in spans]
    maps = []
    for k in range(horizon):
        B = Mat.from_columns(list(comps[k]) + list(spans[k]), n)
        cols = [B.solve(v)[: len(comps[k])] for v in comps[k + 1]]
        maps.append(Mat.from_columns(cols, len(comps[k])))
    cf = _constant_from(o.shape(), d, w) if w else 0
    return DegreeTower(tuple(len(c) for c in comps), tuple(maps), cf)


def _complement(sub, n):
    from .qlinalg import complement_basis

    return complement_basis(sub, n)


@dataclass(frozen=True)
class CompletionDegree:
    degree: int
    module_dim: int
    completion_dim: int
    comparison_rank: int
    cokernel_dim: int
    stabilized: bool
    power_lim1: int
    quotient_dims: tuple[int, ...]


def completion(module, forms: Sequence[LinearForm], degrees: Sequence[int], horizon: int) -> dict[int, CompletionDegree]:
    """Degreewise completion along powers of the product of ``forms``.

    Reports M_d, lim_k (M/e^k M)_d, the comparison map's rank and
    cokernel, and lim¹ of the tower (e^k M)_d for cross-checking.
    """
    from .gmod import oracle_of

    o = oracle_of(module)
    out = {}
    for d in degrees:
        qt = quotient_tower(module, forms, d, horizon)
        pt = power_tower(module, forms, d, horizon)
        qres = _lim_one(qt, 0) if qt.horizon >= 0 else None
        pres = _lim_one(pt, 0)
        stab = qt.stabilized and pt.stabilized
        top = qt.constant_from if qt.stabilized else qt.horizon
        # comparison M_d -> (M/e^top M)_d is the projection, which is onto
        rank = qt.dims[top]
        out[d] = CompletionDegree(
            d, o.dim(d), qres.lim, rank, qres.lim - rank, stab, pres.lim1, qt.dims
        )
    return out
