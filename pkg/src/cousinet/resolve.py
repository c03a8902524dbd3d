"""Injective resolutions in At(G), Ext groups and the lower-bound witness.

Rank 1 resolutions are explicit: every stage is an object with maps
between them, and exactness is checked on both components.  Rank 2
resolutions are built one component at a time: the stage objects are
products of a_K(I), and for injective I every component of a_K(I) away
from K is injective, so only the finite components need to be tracked, and the cokernel at each subgroup splits as E(A)/A plus the
injective contributions of smaller subgroups.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .atcat import AtMorphism, AtObject, Rank2Object, direct_sum, hom_at, mk_a, zero_object
from .homalg import inj_res_kc
from .kcmod import Dual, KcMap, KcModule, hom_basis
from .polymod import ArtinianModule, FGModule, free_resolution, tor_dims
from .qlinalg import Mat
from .rings import G2, TRIVIAL2, ConnSubgroup, sample_circles
from .towers import rlim_tower, tower_lim_lim1

__all__ = [
    "InjResolution",
    "inj_res_sf_rank1",
    "shuffle_resolution",
    "ComponentResolution",
    "StageCertificate",
    "inj_res_general",
    "ExtTable",
    "ext_at",
    "WitnessReport",
    "id_lower_witness",
]


# --------------------------------------------------------------------------
# rank 1


@dataclass
class InjResolution:
    """0 -> X -> I_0 -> ... -> I_m -> 0 with ``maps[0]`` the augmentation."""

    X: AtObject
    stages: list[AtObject]
    maps: list[AtMorphism]
    cokernels: list[AtObject]
    log: list[str] = field(default_factory=list)

    @property
    def length(self) -> int:
        return len(self.stages) - 1 if self.stages else -1

    def differential(self, s: int) -> AtMorphism:
        """I_s -> I_{s+1}."""
        return self.maps[s + 1]

    def verify(self, window: tuple[int, int]) -> bool:
        """Exactness at every spot, on t ⊗ V (by parity) and on T (per degree)."""
        objs = [self.X] + self.stages
        maps = self.maps
        for a, b in zip(maps, maps[1:]):
            if not a.then(b).is_zero():
                return False
        if not all(f.is_compatible() for f in maps):
            return False
        degs = list(range(window[0], window[1] + 1))
        for part, ds in (("V", (0, 1)), ("T", degs)):
            for d in ds:
                blocks = [f.v_block(d) if part == "V" else f.t_block(d) for f in maps]
                dims = [(o.vdim(d) if part == "V" else o.T.dim(d)) for o in objs]
                ranks = [b.rank() if b.nrows and b.ncols else 0 for b in blocks]
                # 0 -> X: kernel of the first map is zero
                if ranks[0] != dims[0]:
                    return False
                for k in range(1, len(objs)):
                    out = ranks[k] if k < len(ranks) else 0
                    if ranks[k - 1] + out != dims[k]:
                        return False
        return True

    def injective_certificate(self) -> list[str]:
        return [s_log for s_log in self.log if s_log.startswith("I")]

    def dumps(self) -> str:
        lines = ["# cousinet-v1", f"X\t{self.X}"]
        for s, I in enumerate(self.stages):
            lines.append(f"I{s}\t{I}")
        for s, f in enumerate(self.maps):
            phi = Mat([list(r) for r in f.phi.coeffs], len(f.phi.coeffs[0]) if f.phi.coeffs else 0)
            lines.append(f"d{s - 1}\ttheta={f.theta.compact()}\tphi={phi.compact()}")
        return "\n".join(lines) + "\n"


def _stack(top: Mat, bottom: Mat) -> Mat:
    return Mat(top.rows + bottom.rows, top.ncols if top.nrows else bottom.ncols)


def _side(left: Mat, right: Mat) -> Mat:
    n = left.nrows if left.ncols else right.nrows
    rows = [list(left.rows[i] if left.ncols else []) + list(right.rows[i] if right.ncols else []) for i in range(n)]
    return Mat(rows, left.ncols + right.ncols)


def _tate(phi: KcMap) -> Mat:
    sd, td = phi.source.duals(), phi.target.duals()
    return Mat([[phi.coeffs[i][j] for j in sd] for i in td], len(sd))


def _a1(I: KcModule) -> AtObject:
    return mk_a("1", I)


def _aG(V) -> AtObject:
    return AtObject(tuple(V), KcModule(), Mat.zeros(0, len(V)))


def _identity_kc(T: KcModule) -> KcMap:
    return KcMap.identity(T)


def inj_res_sf_rank1(X: AtObject) -> InjResolution:
    """0 -> X -> a_1(I) ⊕ a_G(V) -> a_1(J) ⊕ a_G(I^t) -> a_G(J^t) -> 0.

    T is resolved by 0 -> T -> I -> J -> 0; the first map is T -> I at 1
    and the identity at G.
    """
    R = inj_res_kc(X.T)
    I, J, iota, pi = R.I, R.J, R.iota, R.pi
    log = [f"T = {X.T}", f"I = {I}", f"J = {J}"]
    nI, nJ, nV = len(I.duals()), len(J.duals()), len(X.V)
    it, pt = _tate(iota), _tate(pi)
    VI = tuple((I.atoms[i].shift % 2, I.atoms[i].label) for i in I.duals())
    VJ = tuple((J.atoms[i].shift % 2, J.atoms[i].label) for i in J.duals())

    I0 = direct_sum(_a1(I), _aG(X.V))
    eps = AtMorphism(X, I0, _stack(it @ X.q, Mat.identity(nV)), iota)
    X1 = AtObject(VI, J, pt)
    to_X1 = AtMorphism(I0, X1, _side(Mat.identity(nI), (it @ X.q).scale(-1)), pi)
    I1 = direct_sum(_a1(J), _aG(VI))
    into_I1 = AtMorphism(X1, I1, _stack(pt, Mat.identity(nI)), _identity_kc(J))
    X2 = _aG(VJ)
    to_X2 = AtMorphism(I1, X2, _side(Mat.identity(nJ), pt.scale(-1)), KcMap.zero(J, KcModule()))
    I2 = X2
    into_I2 = AtMorphism.identity(X2)

    stages = [I0, I1, I2]
    maps = [eps, to_X1.then(into_I1), to_X2.then(into_I2)]
    cokernels = [X, X1, X2]
    log += [
        f"I0 = a_1({I}) + a_G({len(X.V)})",
        f"I1 = a_1({J}) + a_G({nI})",
        f"I2 = a_G({nJ})",
    ]
    # drop trailing zero stages
    while stages and stages[-1].is_zero():
        stages.pop()
        maps.pop()
        cokernels.pop()
    return InjResolution(X, stages, maps, cokernels, log)


def _perm_object(X: AtObject, rng: random.Random):
    """A random relabelling X -> X' by permutations and nonzero scalings."""
    nV, nT = len(X.V), len(X.T.atoms)
    pv = list(range(nV))
    pa = list(range(nT))
    rng.shuffle(pv)
    rng.shuffle(pa)
    sv = [Fraction(rng.choice([1, 2, 3, -1, -2])) for _ in pv]
    sa = [Fraction(rng.choice([1, 2, 3, -1, -2])) for _ in pa]
    V2 = tuple(X.V[pv[k]] for k in range(nV))
    T2 = KcModule(tuple(X.T.atoms[pa[k]] for k in range(nT)))
    theta = Mat.zeros(nV, nV)
    for k in range(nV):
        theta.rows[k][pv[k]] = sv[k]
    co = [[Fraction(0)] * nT for _ in range(nT)]
    for k in range(nT):
        co[k][pa[k]] = sa[k]
    phi = KcMap(X.T, T2, tuple(map(tuple, co)))
    q2 = _tate(phi) @ X.q @ (theta.inverse() if nV else Mat.zeros(0, 0))
    X2 = AtObject(V2, T2, q2 if nV else Mat.zeros(len(T2.duals()), 0))
    fwd = AtMorphism(X, X2, theta, phi)
    inv_co = [[Fraction(0)] * nT for _ in range(nT)]
    for k in range(nT):
        inv_co[pa[k]][k] = 1 / sa[k]
    back = AtMorphism(X2, X, theta.inverse() if nV else Mat.zeros(0, 0), KcMap(T2, X.T, tuple(map(tuple, inv_co))))
    return X2, fwd, back


def _sum_map(f: AtMorphism, g: AtMorphism) -> AtMorphism:
    S, T = direct_sum(f.source, g.source), direct_sum(f.target, g.target)
    th = Mat.zeros(len(T.V), len(S.V))
    for i in range(f.theta.nrows):
        for j in range(f.theta.ncols):
            th.rows[i][j] = f.theta.rows[i][j]
    for i in range(g.theta.nrows):
        for j in range(g.theta.ncols):
            th.rows[f.theta.nrows + i][f.theta.ncols + j] = g.theta.rows[i][j]
    a, b = len(f.source.T.atoms), len(f.target.T.atoms)
    co = [[Fraction(0)] * len(S.T.atoms) for _ in T.T.atoms]
    for i in range(b):
        for j in range(a):
            co[i][j] = f.phi.coeffs[i][j]
    for i in range(len(g.target.T.atoms)):
        for j in range(len(g.source.T.atoms)):
            co[b + i][a + j] = g.phi.coeffs[i][j]
    return AtMorphism(S, T, th, KcMap(S.T, T.T, tuple(map(tuple, co))), f.degree)


def shuffle_resolution(res: InjResolution, seed: int = 0) -> InjResolution:
    """A different injective resolution of the same object.

    Each stage is relabelled by a random automorphism and a contractible
    pair a_1(k[c]^∨) -> a_1(k[c]^∨) is spliced in.
    """
    rng = random.Random(seed)
    stages, maps = list(res.stages), list(res.maps)
    new_stages, fwd, back = [], [], []
    for I in stages:
        I2, f, b = _perm_object(I, rng)
        new_stages.append(I2)
        fwd.append(f)
        back.append(b)
    new_maps = [maps[0].then(fwd[0])]
    for s in range(1, len(maps)):
        new_maps.append(back[s - 1].then(maps[s]).then(fwd[s]))
    # splice J --id--> J at positions (s, s+1)
    s = rng.randrange(max(1, len(new_stages)))
    J = mk_a("1", KcModule.of(Dual(2 * rng.randrange(-3, 4))))
    if s + 1 >= len(new_stages):
        new_stages.append(zero_object())
        new_maps.append(AtMorphism.zero(new_stages[-2], new_stages[-1]))
    Z = zero_object()
    out_maps = list(new_maps)
    out_stages = list(new_stages)
    out_stages[s] = direct_sum(new_stages[s], J)
    out_stages[s + 1] = direct_sum(new_stages[s + 1], J)
    out_maps[s] = _sum_map(new_maps[s], AtMorphism.zero(Z, J))
    out_maps[s + 1] = _sum_map(new_maps[s + 1], AtMorphism.identity(J))
    if s + 2 < len(out_maps):
        out_maps[s + 2] = _sum_map(new_maps[s + 2], AtMorphism.zero(J, Z))
    log = res.log + [f"shuffled with seed {seed}; contractible a_1 pair at {s},{s + 1}"]
    return InjResolution(res.X, out_stages, out_maps, res.cokernels, log)


# --------------------------------------------------------------------------
# rank 2, component level


@dataclass(frozen=True)
class Component:
    """A component up to isomorphism: finite part plus injective contributions.

    ``finite`` is an ArtinianModule (at 1), a KcModule (at a circle) or a
    tuple of parities (at G).  ``inherited`` lists (K, stage) for the
    injective components of a_K(I_stage(K)).
    """

    finite: object
    inherited: tuple = ()

    def finite_zero(self) -> bool:
        f = self.finite
        if f is None:
            return True
        if isinstance(f, ArtinianModule):
            return not any(f.dual.dim(g) for g in f.dual.gen_degrees)
        if isinstance(f, KcModule):
            return f.is_zero()
        return not f

    def is_zero(self) -> bool:
        return self.finite_zero() and not self.inherited

    def injective_dimension(self) -> int:
        if self.is_zero():
            return -1
        f = self.finite
        fin = -1
        if not self.finite_zero():
            fin = f.injective_dimension() if isinstance(f, (ArtinianModule, KcModule)) else 0
        return max(fin, 0 if self.inherited else -1)

    def describe(self) -> str:
        f = "0" if self.finite_zero() else (
            f"A[{self.finite.dual}]" if isinstance(self.finite, ArtinianModule) else str(self.finite)
        )
        inh = "".join(f" + W({K}@{s})" for K, s in self.inherited)
        return f + inh


@dataclass(frozen=True)
class StageCertificate:
    stage: int
    phase: int
    ids: dict
    ok: bool
    note: str


@dataclass
class ComponentResolution:
    subgroups: tuple
    X: list  # X_s as dict subgroup -> Component
    I: list  # I_s as dict subgroup -> description
    certificates: list
    exact: bool
    r: int = 2

    @property
    def length(self) -> int:
        return len(self.I) - 1

    @property
    def terminated(self) -> bool:
        return all(c.is_zero() for c in self.X[-1].values())

    @property
    def certified(self) -> bool:
        return self.terminated and self.exact and all(c.ok for c in self.certificates) and self.length <= 2 * self.r


def _hull(finite, window):
    """(injective hull, hull cokernel, exact on window?) of a finite part."""
    lo, hi = window
    if isinstance(finite, ArtinianModule):
        if finite.is_injective():
            return finite, None, True
        res = free_resolution(finite.dual)
        F0 = FGModule.free(finite.ring, res.degrees[0])
        E = ArtinianModule(F0)
        C = ArtinianModule(res.syzygy_module(1))
        ok = all(E.dim(d) == finite.dim(d) + C.dim(d) for d in range(lo, hi + 1))
        return E, C, ok
    if isinstance(finite, KcModule):
        if finite.is_injective():
            return finite, None, True
        R = inj_res_kc(finite)
        return R.I, R.J, R.verify(lo, hi)
    return finite, None, True


def _rank2_components(X: Rank2Object, circles) -> dict:
    comps = {TRIVIAL2: Component(X.one)}
    for K in circles:
        comps[K] = Component(X.circle(K))
    comps[G2] = Component(tuple(X.V))
    return comps


def inj_res_general(X, window: tuple[int, int] = (-12, 12), circles: Sequence[ConnSubgroup] | None = None):
    """Injective resolution of length at most 2r (two phases).

    Rank 1 objects get the explicit resolution; rank 2 objects are
    resolved at component level over a finite universe of circles.
    """
    if isinstance(X, AtObject):
        return inj_res_sf_rank1(X)
    universe = list(circles) if circles is not None else list(sample_circles())
    universe += [K for K, _ in X.circles if K not in universe]
    if X.family is not None:
        return _shortcut_resolution(X, window)
    subgroups = (TRIVIAL2, *universe, G2)
    r = 2
    Xs = [_rank2_components(X, universe)]
    Is, certs = [], []
    exact = True
    for s in range(2 * r + 2):
        cur = Xs[-1]
        if all(c.is_zero() for c in cur.values()):
            break
        stage_I, nxt = {}, {}
        nonzero = {}
        cok = {}
        for H in subgroups:
            c = cur[H]
            if c.is_zero():
                nonzero[H] = False
                cok[H] = None
                stage_I[H] = "0"
                continue
            nonzero[H] = True
            if c.finite_zero() or c.injective_dimension() == 0:
                stage_I[H] = c.describe()
                cok[H] = None
            else:
                E, C, ok = _hull(c.finite, window)
                exact = exact and ok
                stage_I[H] = Component(E, c.inherited).describe()
                cok[H] = C
        for H in subgroups:
            inh = tuple((K, s) for K in subgroups if K != H and H.contains(K) and nonzero[K])
            nxt[H] = Component(cok[H], inh)
        Is.append(stage_I)
        Xs.append(nxt)
        certs.append(_certify(s, cur, nxt, r, subgroups))
    return ComponentResolution(subgroups, Xs, Is, certs, exact, r)


def _shortcut_resolution(X: Rank2Object, window) -> ComponentResolution:
    """a_L(I_•) for an injective resolution I_• of T (exact for Artinian T)."""
    _, L, T = X.family
    lo, hi = window
    Xs, Is, certs = [], [], []
    exact = True
    if L.kind == "1":
        res = free_resolution(T.dual)
        for j in range(res.length + 1):
            syz = ArtinianModule(res.syzygy_module(j)) if j else T
            Xs.append({L: Component(syz)})
            Is.append({L: f"a_1 of the dual of F_{j} on generators {list(res.degrees[j])}"})
        Xs.append({L: Component(None)})
        # the free resolution is exact: alternating sum of dims is dim N
        for d in range(lo, hi + 1):
            chi = sum((-1) ** j * sum(FGModule.free(T.ring, [g]).dim(-d) for g in res.degrees[j]) for j in range(res.length + 1))
            exact = exact and chi == T.dim(d)
    elif L.kind == "circle":
        R = inj_res_kc(T)
        Xs = [{L: Component(T)}, {L: Component(R.J)}, {L: Component(None)}][: 1 + (R.length + 1)]
        Is = [{L: f"a_{L}({R.I})"}] + ([{L: f"a_{L}({R.J})"}] if R.length else [])
        if not R.length:
            Xs = [{L: Component(T)}, {L: Component(None)}]
        exact = R.verify(lo, hi)
    else:
        Xs = [{L: Component(tuple(T))}, {L: Component(None)}]
        Is = [{L: f"a_G({len(T)})"}]
    for s in range(len(Is)):
        certs.append(StageCertificate(s, 0, {str(L): Xs[s][L].injective_dimension()}, True, "a_L of an injective of L"))
    return ComponentResolution((L,), Xs, Is, certs, exact)


def _certify(s: int, cur: dict, nxt: dict, r: int, subgroups) -> StageCertificate:
    ids = {str(H): cur[H].injective_dimension() for H in subgroups}
    if s <= r:
        ok = all(
            c.injective_dimension() <= 0 or c.injective_dimension() <= H.codim - s
            for H, c in cur.items()
        )
        # id(X_{s+1}(K)) = id(X_s(K)) - 1 when X_s(K) is not injective
        dec = all(
            cur[H].injective_dimension() <= 0
            or nxt[H].finite_zero()
            or nxt[H].injective_dimension() == cur[H].injective_dimension() - 1
            for H in subgroups
        )
        return StageCertificate(s, 1, ids, ok and dec, "component injective dimensions decrease")
    i = s - r
    ok = all(cur[H].injective_dimension() <= 0 for H in subgroups) and all(
        cur[H].is_zero() for H in subgroups if H.dim < i
    )
    return StageCertificate(s, 2, ids, ok, f"components vanish below dimension {i}")


# --------------------------------------------------------------------------
# Ext


@dataclass
class ExtTable:
    dims: dict  # (s, t) -> dim
    window: tuple[int, int]
    provenance: list[str]

    def row(self, s: int) -> dict[int, int]:
        return {t: n for (ss, t), n in self.dims.items() if ss == s}

    def nonzero(self) -> dict:
        return {k: v for k, v in self.dims.items() if v}

    @property
    def max_s(self) -> int:
        return max((s for (s, _), n in self.dims.items() if n), default=-1)

    def tsv(self) -> str:
        lines = ["# cousinet-v1", "s\tt\tdim"]
        for (s, t), n in sorted(self.dims.items()):
            lines.append(f"{s}\t{t}\t{n}")
        return "\n".join(lines) + "\n"


def _ext_rank1(X: AtObject, res: InjResolution, t: int) -> list[int]:
    homs = [hom_at(X, I, t) for I in res.stages]
    ranks = []
    for s, H in enumerate(homs):
        if s + 1 >= len(homs) or not H.basis:
            ranks.append(0)
            continue
        d = res.differential(s)
        imgs = [f.then(d).coords() for f in H.basis]
        n = len(imgs[0])
        ranks.append(Mat.from_columns(imgs, n).rank() if n else 0)
    out = []
    for s, H in enumerate(homs):
        prev = ranks[s - 1] if s else 0
        out.append(H.dim - ranks[s] - prev)
    return out


def ext_at(X, Y, window: tuple[int, int] = (-10, 10), resolution=None) -> ExtTable:
    """Ext^{s,t}(X, Y) as cohomology of Hom^t(X, I_•) for an injective resolution of Y."""
    lo, hi = window
    if isinstance(X, AtObject) and isinstance(Y, AtObject):
        res = resolution or inj_res_sf_rank1(Y)
        dims = {}
        for t in range(lo, hi + 1):
            for s, n in enumerate(_ext_rank1(X, res, t)):
                dims[(s, t)] = n
            for s in range(len(res.stages), 3):
                dims[(s, t)] = 0
        # rows s <= 2r always; a longer (non-minimal) resolution only adds zero rows
        dims = {k: n for k, n in dims.items() if k[0] <= 2 or n}
        return ExtTable(dims, window, res.log)
    return _ext_rank2(X, Y, window)


def _ext_rank2(X: Rank2Object, Y: Rank2Object, window) -> ExtTable:
    """Ext into a_L(T): Hom(X, a_L(I_j)) = Hom(X(L), I_j) along the
    resolution a_L(I_•) of the shortcut for Artinian T."""
    if Y.family is None:
        raise ValueError("rank-2 Ext is computed into a_L(T)")
    _, L, T = Y.family
    lo, hi = window
    dims = {}
    src = X.component(L)
    if L.kind == "1":
        res = free_resolution(T.dual)
        length = res.length
        for t in range(lo, hi + 1):
            for s in range(0, 5):
                # Hom^t(A, F_s^∨) is dual to (A ⊗ F_s) in degree -t
                dims[(s, t)] = tor_dims(res, src, s, -t) if src is not None else 0
        prov = [f"a_1 of the dual of a free resolution of length {length}"]
    elif L.kind == "circle":
        R = inj_res_kc(T)
        A = src if src is not None else KcModule()
        for t in range(lo, hi + 1):
            h0 = hom_basis(A, R.I, t)
            h1 = hom_basis(A, R.J, t)
            rk = _compose_rank(A, R, t, h0, h1)
            dims[(0, t)] = len(h0) - rk
            dims[(1, t)] = len(h1) - rk
            for s in range(2, 5):
                dims[(s, t)] = 0
        prov = [f"a_{L} of {R.I} -> {R.J}"]
    else:
        for t in range(lo, hi + 1):
            dims[(0, t)] = sum(1 for p in T for q in (src or ()) if p == (q + t) % 2)
            for s in range(1, 5):
                dims[(s, t)] = 0
        prov = ["a_G is injective"]
    return ExtTable(dims, window, prov)


def _compose_rank(A: KcModule, R, t: int, h0, h1) -> int:
    if not h0 or not h1:
        return 0
    As = A.suspend(t)
    cols = []
    for i, j in h0:
        co = [[Fraction(0)] * len(As.atoms) for _ in R.I.atoms]
        co[i][j] = Fraction(1)
        f = KcMap(As, R.I, tuple(map(tuple, co))).then(R.pi)
        cols.append([f.coeffs[a][b] for a, b in h1])
    return Mat.from_columns(cols, len(h1)).rank()


# --------------------------------------------------------------------------
# lower bound witness


@dataclass
class WitnessReport:
    r: int
    degree: int
    horizon: int
    images: dict  # N -> image dims of M_{d+2k} -> M_d
    lim1: dict  # N -> lim¹ of the truncated tower
    stabilized: dict  # N -> bool at this horizon
    required_horizon: dict  # N -> first horizon at which the tower is constant
    control_lim1: int
    annihilated_by: tuple[str, ...]
    interval: tuple[int, int]

    def growth(self, N: int) -> list[int]:
        return list(self.images[N])


def id_lower_witness(r: int, Ns: Sequence[int], horizon: int, degree: int = 2) -> WitnessReport:
    """Finite shadows of M = ⊕_n Σ^{2n} k[c_1]/c_1^n.

    For each truncation M_N the c-tower in ``degree`` has images of
    dimension max(0, N - k); it only becomes constant after N steps, so
    no finite horizon certifies the whole family.  M is killed by
    c_2, ..., c_r, which adds r - 1 to the lower bound.
    """
    if r not in (1, 2):
        raise ValueError("only ranks 1 and 2")
    from .gmod import GradedDual, KC, TruncatedFamily

    images, lim1, stab, req = {}, {}, {}, {}
    for N in Ns:
        t = rlim_tower(TruncatedFamily(N), degree, horizon)
        res = tower_lim_lim1(t, min_horizon=0)
        images[N] = tuple(t.image_dims(0))
        lim1[N] = res.lim1
        stab[N] = res.stabilized
        req[N] = t.constant_from
    control = tower_lim_lim1(rlim_tower(GradedDual(KC), degree, horizon), min_horizon=0)
    ann = tuple(f"c{i}" for i in range(2, r + 1))
    return WitnessReport(r, degree, horizon, images, lim1, stab, req, control.lim1, ann, (r + 1, 2 * r))
