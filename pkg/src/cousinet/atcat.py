"""The abelian torsion category At(G) in ranks 1 and 2.

Rank 1
------
A rank-1 object is a map of O_F-modules t ⊗ V -> T with V a graded
vector space and T a torsion k[c]-module.  It is stored in adjoint form

    q̃ : V -> T^t = Hom(t, T).

Because t = k[c, 1/c] is periodic, t ⊗ V only depends on V up to
2-periodicity, so V is recorded as a list of basis parities.  Hom(t, T)
has one t-string per ``Dual`` atom of T, hence q̃ is a constant matrix
(dual atoms × V basis) whose entries vanish unless parities match.

A degree-d morphism X -> Y is a pair (θ, φ): θ is a parity-compatible
matrix V_X -> V_Y (each entry standing for a suitable power of c) and φ
is a k[c]-map Σ^d T_X -> T_Y, subject to q̃_Y θ = φ^t q̃_X.

Rank 2
------
For the two-torus the explicit objects carry components at G (parities
again), at finitely many circles (torsion k[z]-modules) and at the
trivial subgroup (an Artinian Q[x,y]-module), with horizontal data from
G to each circle in the same adjoint form.  Standard objects f_K(T) and
a_L(T) are handled through their adjunctions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .kcmod import Cyc, Dual, KcMap, KcModule, TorsionRequiredError, hom_basis
from .polymod import ArtinianModule, FGModule, poly_act
from .qlinalg import Mat
from .rings import G1, G2, TRIVIAL1, TRIVIAL2, ConnSubgroup, EulerClass, PolyRing

__all__ = [
    "AtObject",
    "AtMorphism",
    "Rank2Object",
    "HomSpace",
    "InvariantReport",
    "IsotropyMismatchError",
    "mk_f",
    "mk_a",
    "zero_object",
    "direct_sum",
    "hom_at",
    "hom_dims",
    "hom_by_adjunction",
    "c_k_cokernel",
    "phi_fixed",
    "product",
    "b_object",
    "b_transition",
    "eval_via_colim",
    "EvalCertificate",
    "P2",
]

P2 = PolyRing(("x", "y"))


class IsotropyMismatchError(ValueError):
    pass


def _parity(d: int) -> int:
    return d % 2


# --------------------------------------------------------------------------
# rank 1 objects


@dataclass(frozen=True, eq=False)
class AtObject:
    """Rank-1 object (q̃ : V -> T^t) in adjoint form.

    ``V`` lists (parity, label) per basis vector of V; ``q`` has one row
    per dual atom of T (in atom order) and one column per basis vector.
    """

    V: tuple[tuple[int, str], ...]
    T: KcModule
    q: Mat

    def __post_init__(self):
        T = self.T
        if not isinstance(T, KcModule):
            raise TorsionRequiredError("the component at 1 must be a torsion k[c]-module")
        V = tuple((int(p) % 2, str(lab)) for p, lab in self.V)
        object.__setattr__(self, "V", V)
        duals = T.duals()
        if self.q.shape != (len(duals), len(V)):
            raise ValueError(f"q has shape {self.q.shape}, expected {(len(duals), len(V))}")
        for r, i in enumerate(duals):
            a = T.atoms[i]
            for j, (p, lab) in enumerate(V):
                if self.q.rows[r][j] and ((a.shift - p) % 2 or a.label != lab):
                    raise ValueError(f"q pairs {a} with a basis vector of parity {p} at {lab}")

    @classmethod
    def make(cls, V: Sequence = (), T: KcModule | None = None, q=None) -> "AtObject":
        V = tuple((p, "1") if isinstance(p, int) else tuple(p) for p in V)
        T = T if T is not None else KcModule()
        nd = len(T.duals())
        if q is None:
            q = Mat.zeros(nd, len(V))
        elif not isinstance(q, Mat):
            q = Mat([[Fraction(x) for x in row] for row in q], len(V)) if nd else Mat.zeros(0, len(V))
        return cls(V, T, q)

    @property
    def rank(self) -> int:
        return 1

    @property
    def mode(self) -> str:
        labels = {lab for _, lab in self.V} | {a.label for a in self.T.atoms}
        return "semifree" if labels <= {"1"} else "full"

    def vdim(self, d: int) -> int:
        """dim of (t ⊗ V)_d."""
        return sum(1 for p, _ in self.V if p == _parity(d))

    def v_basis(self, d: int) -> list[int]:
        return [j for j, (p, _) in enumerate(self.V) if p == _parity(d)]

    def component(self, K: ConnSubgroup | str):
        k = K if isinstance(K, str) else K.kind
        return self.V if k == "G" else self.T

    def support(self) -> set[str]:
        s = set()
        if self.V:
            s.add("G")
        if not self.T.is_zero():
            s.add("1")
        return s

    def is_zero(self) -> bool:
        return not self.V and self.T.is_zero()

    def suspend(self, a: int) -> "AtObject":
        V = tuple(((p + a) % 2, lab) for p, lab in self.V)
        return AtObject(V, self.T.suspend(a), self.q)

    def q_block(self, d: int) -> Mat:
        """q̃ in degree d: (t ⊗ V)_d -> (T^t)_d."""
        rows = [self.T.duals().index(i) for i in self.T.tate_basis(d)]
        cols = self.v_basis(d)
        return Mat([[self.q.rows[r][c] for c in cols] for r in rows], len(cols))

    def structure_map(self, d: int) -> Mat:
        """The horizontal map (t ⊗ V)_d -> T_d, i.e. evaluation after q̃."""
        return self.T.evaluation(d) @ self.q_block(d)

    def dims(self, lo: int, hi: int) -> dict[str, dict[int, int]]:
        return {
            "G": {d: self.vdim(d) for d in range(lo, hi + 1)},
            "1": {d: self.T.dim(d) for d in range(lo, hi + 1)},
        }

    def same_as(self, other: "AtObject") -> bool:
        return self.V == other.V and self.T == other.T and self.q == other.q

    def invariants(self) -> "InvariantReport":
        return InvariantReport(
            torsion=isinstance(self.T, KcModule),
            cochain=True,  # a single horizontal map has no composites
            locally_finite=True,
            cotoral=True,  # 1 is cotoral in G
            support=tuple(sorted(self.support())),
        )

    def __str__(self) -> str:
        par = "".join(str(p) for p, _ in self.V) or "-"
        return f"At1[V={par}; T={self.T}; q={self.q.compact()}]"


@dataclass(frozen=True)
class InvariantReport:
    torsion: bool
    cochain: bool
    locally_finite: bool
    cotoral: bool
    support: tuple

    @property
    def ok(self) -> bool:
        return self.torsion and self.cochain and self.locally_finite and self.cotoral


def zero_object() -> AtObject:
    return AtObject.make()


def _tate_matrix(phi: KcMap) -> Mat:
    """φ^t on all strings: rows target duals, columns source duals."""
    sd, td = phi.source.duals(), phi.target.duals()
    return Mat([[phi.coeffs[i][j] for j in sd] for i in td], len(sd))


@dataclass(frozen=True, eq=False)
class AtMorphism:
    """Degree-``degree`` map: θ on V and φ : Σ^degree T_X -> T_Y."""

    source: AtObject
    target: AtObject
    theta: Mat
    phi: KcMap
    degree: int = 0

    def __post_init__(self):
        X, Y, d = self.source, self.target, self.degree
        if self.theta.shape != (len(Y.V), len(X.V)):
            raise ValueError("θ has the wrong shape")
        for i, (pi, li) in enumerate(Y.V):
            for j, (pj, lj) in enumerate(X.V):
                if self.theta.rows[i][j] and (pi != (pj + d) % 2 or li != lj):
                    raise ValueError("θ mixes parities or labels")
        if self.phi.source != X.T.suspend(d) or self.phi.target != Y.T:
            raise ValueError("φ has the wrong source or target")

    @classmethod
    def zero(cls, X: AtObject, Y: AtObject, degree: int = 0) -> "AtMorphism":
        return cls(X, Y, Mat.zeros(len(Y.V), len(X.V)), KcMap.zero(X.T.suspend(degree), Y.T), degree)

    @classmethod
    def identity(cls, X: AtObject) -> "AtMorphism":
        return cls(X, X, Mat.identity(len(X.V)), KcMap.identity(X.T), 0)

    def is_compatible(self) -> bool:
        lhs = self.target.q @ self.theta
        rhs = _tate_matrix(self.phi) @ self.source.q
        return lhs == rhs

    def then(self, g: "AtMorphism") -> "AtMorphism":
        """Composite g∘self."""
        if g.source is not self.target and not g.source.same_as(self.target):
            raise ValueError("maps are not composable")
        shifted = KcMap(self.phi.source.suspend(g.degree), self.phi.target.suspend(g.degree), self.phi.coeffs)
        return AtMorphism(self.source, g.target, g.theta @ self.theta, shifted.then(g.phi), self.degree + g.degree)

    def __add__(self, other: "AtMorphism") -> "AtMorphism":
        return AtMorphism(self.source, self.target, self.theta + other.theta, self.phi + other.phi, self.degree)

    def scale(self, k) -> "AtMorphism":
        return AtMorphism(self.source, self.target, self.theta.scale(k), self.phi.scale(k), self.degree)

    def is_zero(self) -> bool:
        return self.theta.is_zero() and all(not x for r in self.phi.coeffs for x in r)

    def v_block(self, d: int) -> Mat:
        """θ as a map (t ⊗ V_X)_d -> (t ⊗ V_Y)_{d+degree}."""
        rows = self.target.v_basis(d + self.degree)
        cols = self.source.v_basis(d)
        return Mat([[self.theta.rows[i][j] for j in cols] for i in rows], len(cols))

    def t_block(self, d: int) -> Mat:
        """φ as a map (T_X)_d -> (T_Y)_{d+degree}."""
        return self.phi.block(d + self.degree)

    def coords(self) -> list[Fraction]:
        return [x for r in self.theta.rows for x in r] + [x for r in self.phi.coeffs for x in r]


# --------------------------------------------------------------------------
# constructors


def _as_kc(T) -> KcModule:
    if isinstance(T, KcModule):
        return T
    from .homalg import as_kc

    return as_kc(T)


def mk_f(K, T) -> "AtObject | Rank2Object":
    """The skyscraper f_K(T): T at K and nothing else."""
    K = _subgroup(K)
    if K.rank == 2:
        return Rank2Object.skyscraper(K, T)
    if K.kind == "G":
        V = T if isinstance(T, (tuple, list)) else _parities_of(T)
        return AtObject.make(V)
    return AtObject.make((), _as_kc(T))


def mk_a(L, T) -> "AtObject | Rank2Object":
    """Right adjoint to evaluation at L.

    a_G(V) = f_G(V); a_1(T) = (ev : t ⊗ T^t -> T), so its adjoint form
    is the identity of T^t.
    """
    L = _subgroup(L)
    if L.rank == 2:
        return Rank2Object.injective_family(L, T)
    if L.kind == "G":
        return mk_f(L, T)
    T = _as_kc(T)
    duals = T.duals()
    V = tuple((T.atoms[i].shift % 2, T.atoms[i].label) for i in duals)
    return AtObject.make(V, T, Mat.identity(len(duals)))


def _parities_of(V) -> tuple[tuple[int, str], ...]:
    """Parities of a graded vector space given as {degree: dim} or an int."""
    if isinstance(V, int):
        return ((0, "1"),) * V
    if isinstance(V, dict):
        return tuple((d % 2, "1") for d, n in sorted(V.items()) for _ in range(n))
    raise TypeError(f"cannot read a graded vector space from {V!r}")


def _subgroup(K) -> ConnSubgroup:
    if isinstance(K, ConnSubgroup):
        return K
    return {"G": G1, "1": TRIVIAL1}[str(K)]


def direct_sum(*Xs: AtObject) -> AtObject:
    V, atoms = [], []
    blocks = []
    for X in Xs:
        V.extend(X.V)
        atoms.extend(X.T.atoms)
        blocks.append(X.q)
    T = KcModule(tuple(atoms))
    nr = sum(b.nrows for b in blocks)
    nc = sum(b.ncols for b in blocks)
    q = Mat.zeros(nr, nc)
    r0 = c0 = 0
    for b in blocks:
        for i in range(b.nrows):
            for j in range(b.ncols):
                q.rows[r0 + i][c0 + j] = b.rows[i][j]
        r0, c0 = r0 + b.nrows, c0 + b.ncols
    return AtObject(tuple(V), T, q)


# --------------------------------------------------------------------------
# Hom


@dataclass
class HomSpace:
    """Degree-d maps X -> Y with a basis and coordinates in the unknown space."""

    source: AtObject
    target: AtObject
    degree: int
    basis: list[AtMorphism]
    _layout: tuple = field(repr=False, default=())

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coordinates(self, f: AtMorphism) -> list[Fraction] | None:
        """Coordinates of f in the basis, or None if f is not in the span."""
        if not self.basis:
            return [] if f.is_zero() else None
        B = Mat.from_columns([b.coords() for b in self.basis], len(self.basis[0].coords()))
        return B.solve(f.coords())


def _unknowns(X: AtObject, Y: AtObject, d: int):
    theta = [
        (i, j)
        for i, (pi, li) in enumerate(Y.V)
        for j, (pj, lj) in enumerate(X.V)
        if pi == (pj + d) % 2 and li == lj
    ]
    phi = hom_basis(X.T, Y.T, d)
    return theta, phi


def hom_at(X, Y, degree: int = 0) -> HomSpace:
    """Degree-``degree`` morphisms X -> Y by solving the commutation system."""
    if isinstance(X, Rank2Object) or isinstance(Y, Rank2Object):
        raise TypeError("rank-2 Hom goes through hom_by_adjunction")
    d = degree
    theta_u, phi_u = _unknowns(X, Y, d)
    n = len(theta_u) + len(phi_u)
    XT = X.T.suspend(d)
    xd, yd = XT.duals(), Y.T.duals()
    # q̃_Y θ - φ^t q̃_X = 0, one equation per (dual of Y, basis vector of X)
    eqs = []
    for r in range(len(yd)):
        for col in range(len(X.V)):
            row = [Fraction(0)] * n
            for u, (i, j) in enumerate(theta_u):
                if j == col and Y.q.rows[r][i]:
                    row[u] += Y.q.rows[r][i]
            for u, (i, j) in enumerate(phi_u):
                if i == yd[r] and j in xd:
                    row[len(theta_u) + u] -= X.q.rows[xd.index(j)][col]
            if any(row):
                eqs.append(row)
    A = Mat(eqs, n) if eqs else Mat.zeros(0, n)
    basis = []
    for v in A.nullspace() if n else []:
        th = Mat.zeros(len(Y.V), len(X.V))
        for u, (i, j) in enumerate(theta_u):
            th.rows[i][j] = v[u]
        co = [[Fraction(0)] * len(XT.atoms) for _ in Y.T.atoms]
        for u, (i, j) in enumerate(phi_u):
            co[i][j] = v[len(theta_u) + u]
        phi = KcMap(XT, Y.T, tuple(tuple(r) for r in co))
        basis.append(AtMorphism(X, Y, th, phi, d))
    return HomSpace(X, Y, d, basis, (theta_u, phi_u))


def hom_dims(X, Y, window: tuple[int, int]) -> dict[int, int]:
    return {d: hom_at(X, Y, d).dim for d in range(window[0], window[1] + 1)}


def _kc_hom_dim(A: KcModule, B: KcModule, d: int) -> int:
    return len(hom_basis(A, B, d))


def hom_by_adjunction(X, Y, degree: int = 0) -> int:
    """dim Hom via the adjunctions, for Y = f_K(T) or a_L(T) (rank 1)
    or the rank-2 standard objects.

    Rank 1: Hom(X, a_1 T) = Hom(T_X, T); Hom(X, f_1 T) = Hom(C_1 X, T);
    Hom(X, f_G W) = Hom(V_X, W).
    """
    if isinstance(Y, Rank2Object):
        return _rank2_hom_dim(X, Y, degree)
    kind = _standard_kind(Y)
    if kind is None:
        raise ValueError("target is not in standard form")
    if kind == "zero":
        return 0
    if kind == "fG":
        return sum(1 for pi, li in Y.V for pj, lj in X.V if pi == (pj + degree) % 2 and li == lj)
    if kind == "a1":
        return _kc_hom_dim(X.T, Y.T, degree)
    C = c_k_cokernel(X, "1")
    return _kc_hom_dim(C, Y.T, degree)


def _standard_kind(Y: AtObject) -> str | None:
    if Y.is_zero():
        return "zero"
    if Y.T.is_zero():
        return "fG"
    if not Y.V:
        return "f1"
    a = mk_a("1", Y.T)
    if a.same_as(Y):
        return "a1"
    return None


def c_k_cokernel(X, K) -> KcModule | tuple:
    """C_K X: the cokernel of everything mapping into the component at K.

    For rank 1, C_G X = V_X and C_1 X = T / image(t ⊗ V).  The image of
    the string through q̃(v) is the whole dual atom, so the cokernel keeps
    exactly the atoms of T outside the support of q̃ (up to a change of
    basis on the dual atoms, found by column reduction).
    """
    if isinstance(X, Rank2Object):
        return X.c_k(K)
    k = K if isinstance(K, str) else K.kind
    if k == "G":
        return X.V
    return _kc_cokernel_of_strings(X.T, X.q, X.V)


def _kc_cokernel_of_strings(T: KcModule, q: Mat, V=None) -> KcModule:
    """T modulo the submodule generated by the strings in the image of q̃.

    Within one parity and label, reduce the image vectors pivoting on the
    dual atom of lowest shift.  A reduced vector then generates a copy of
    its pivot atom (the other entries receive canonical maps from it), so
    exactly the pivot atoms are killed.
    """
    duals = T.duals()
    groups: dict = {}
    for j in range(q.ncols):
        key = V[j] if V is not None else None
        groups.setdefault(key, []).append([q.rows[r][j] for r in range(q.nrows)])
    order = sorted(range(len(duals)), key=lambda r: (T.atoms[duals[r]].shift, r))
    killed = set()
    for cols in groups.values():
        vecs = [list(v) for v in Mat.from_columns(cols, len(duals)).colspace()] if duals else []
        for r in order:
            piv = next((v for v in vecs if v[r]), None)
            if piv is None:
                continue
            killed.add(r)
            vecs.remove(piv)
            for w in vecs:
                if w[r]:
                    f = w[r] / piv[r]
                    for i in range(len(w)):
                        w[i] -= f * piv[i]
    keep = [a for i, a in enumerate(T.atoms) if not (i in duals and duals.index(i) in killed)]
    return KcModule(tuple(keep))


def phi_fixed(X, K) -> object:
    """Geometric fixed points: the part of X at subgroups containing K."""
    if isinstance(X, Rank2Object):
        return X.phi_fixed(K)
    k = K if isinstance(K, str) else K.kind
    if k == "1":
        return X
    return AtObject.make(X.V)


def product(Xs: Sequence[AtObject]) -> AtObject:
    """Finite products are direct sums; Γ is the identity at finite support."""
    Xs = list(Xs)
    if not Xs:
        return zero_object()
    modes = {X.mode for X in Xs if not X.is_zero()}
    if len(modes) > 1:
        raise IsotropyMismatchError("cannot mix isotropy modes in a product")
    if len(Xs) == 1:
        return Xs[0]
    return direct_sum(*Xs)


def projections(Xs: Sequence[AtObject]) -> list[AtMorphism]:
    P = product(Xs)
    out = []
    vo = to = 0
    for X in Xs:
        th = Mat.zeros(len(X.V), len(P.V))
        for j in range(len(X.V)):
            th.rows[j][vo + j] = Fraction(1)
        co = [[Fraction(int(j == to + i)) for j in range(len(P.T.atoms))] for i in range(len(X.T.atoms))]
        out.append(AtMorphism(P, X, th, KcMap(P.T, X.T, tuple(map(tuple, co)))))
        vo += len(X.V)
        to += len(X.T.atoms)
    return out


# --------------------------------------------------------------------------
# B objects and evaluation as a colimit


def b_object(K, V: EulerClass | int, n: int):
    """B_K(V, n), ind-corepresenting evaluation at K.

    Rank 1: B_1(0, n) = f_1(k[c]/c^n); for K = G and V = mz (m >= 1)
    the object is (t ⊗ Q -> Σ^{2-2m} k[c]^∨) with q̃ the identity string,
    i.e. the algebraic image of S^{-mz}.  Rank 2 returns the component
    data at K (P/m^[n] suspended by -|V^K| = 0).
    """
    K = _subgroup(K)
    m = V.real_dim // 2 if isinstance(V, EulerClass) else int(V)
    if isinstance(V, EulerClass) and V.fixed_dim(K) and K.kind != "G":
        raise ValueError("V^K must vanish")
    if n <= 0:
        return zero_object() if K.rank == 1 else Rank2Object()
    if K.rank == 2:
        return Rank2Object.b_component(K, n)
    if K.kind == "1":
        if m:
            raise ValueError("V^K must vanish")
        return mk_f(K, KcModule.of(Cyc(0, n)))
    if m < 1:
        raise ValueError("B_G needs a nontrivial representation")
    return AtObject.make([0], KcModule.of(Dual(2 - 2 * m)), [[1]])


def b_transition(K, m: int, n: int) -> AtMorphism:
    """The structure map B_K(V ⊕ z, n + 1) -> B_K(V, n) of the colimit system."""
    K = _subgroup(K)
    src, tgt = b_object(K, m + (K.kind == "G"), n + 1), b_object(K, m, n)
    phi = KcMap(src.T, tgt.T, ((Fraction(1),),))
    return AtMorphism(src, tgt, Mat.identity(len(tgt.V)), phi)


@dataclass
class EvalCertificate:
    K: str
    window: tuple[int, int]
    component: dict[int, int]
    recovered: dict[int, int]
    kernel: dict[int, int]
    required: int | None
    horizon: int
    transitions_commute: bool

    @property
    def iso(self) -> bool:
        return (
            self.required is not None
            and self.required <= self.horizon
            and self.component == self.recovered
            and not any(self.kernel.values())
            and self.transitions_commute
        )


def _evaluate(f: AtMorphism, K: str, d: int) -> list[Fraction]:
    """e(θ) = θ at G/K applied to the generator ι of B."""
    if K == "G":
        return [row[0] for row in f.v_block(0).rows] if f.source.V else []
    # the generator of Cyc(d, n) sits in degree d
    return [row[0] for row in f.t_block(0).rows]


def eval_via_colim(X, K, window: tuple[int, int], horizon: int = 16) -> EvalCertificate:
    """Recover X at K from Hom(B_K(V, n), X), with the map e and its certificate."""
    if isinstance(X, Rank2Object):
        return X.eval_via_colim(K, window, horizon)
    K = _subgroup(K)
    k = K.kind
    lo, hi = window
    comp = {d: (X.vdim(d) if k == "G" else X.T.dim(d)) for d in range(lo, hi + 1)}
    required = None
    recovered, kernel = {}, {}
    for stage in range(1, horizon + 1):
        B = b_object(K, stage, stage) if k == "G" else b_object(K, 0, stage)
        rec, ker = {}, {}
        for d in range(lo, hi + 1):
            H = hom_at(B, X, d)
            vals = [_evaluate(f, k, d) for f in H.basis]
            dimt = comp[d]
            r = Mat.from_columns(vals, dimt).rank() if vals and dimt else 0
            rec[d], ker[d] = r, H.dim - r
        recovered, kernel = rec, ker
        if rec == comp and not any(ker.values()):
            required = stage
            break
    commute = _transitions_commute(X, k, window, required or horizon)
    return EvalCertificate(k, window, comp, recovered, kernel, required, horizon, commute)


def _transitions_commute(X: AtObject, k: str, window, stage: int) -> bool:
    """e(θ ∘ β) = e(θ) for the transition β from the next stage."""
    K = _subgroup(k)
    beta = b_transition(K, stage if k == "G" else 0, stage)
    for d in range(window[0], window[1] + 1):
        for f in hom_at(beta.target, X, d).basis:
            g = beta.then(f)
            if _evaluate(g, k, d) != _evaluate(f, k, d):
                return False
    return True


# --------------------------------------------------------------------------
# rank 2


@dataclass(frozen=True, eq=False)
class Rank2Object:
    """Explicit object for the two-torus (connected-simple mode).

    ``V`` gives parities at G; ``circles`` maps circles to torsion k[z]
    modules; ``one`` is the Artinian component at 1 (or None); ``q``
    holds the adjoint horizontal data V -> T_K^t for each circle.
    ``family`` marks a_L(T) for L != G; its components away from L are
    injective (coinduced from an injective) and are kept implicit.
    """

    V: tuple[int, ...] = ()
    circles: tuple[tuple[ConnSubgroup, KcModule], ...] = ()
    one: ArtinianModule | None = None
    q: tuple[tuple[ConnSubgroup, Mat], ...] = ()
    family: tuple[str, ConnSubgroup, object] | None = None
    b_n: int | None = None

    def __post_init__(self):
        for K, T in self.circles:
            if K.kind != "circle" or K.rank != 2:
                raise ValueError(f"{K} is not a circle of the two-torus")
            if not isinstance(T, KcModule):
                raise TorsionRequiredError("circle components are torsion k[z]-modules")
        for K, m in self.q:
            T = self.circle(K)
            if m.shape != (len(T.duals()), len(self.V)):
                raise ValueError(f"horizontal data at {K} has the wrong shape")

    @property
    def rank(self) -> int:
        return 2

    @property
    def mode(self) -> str:
        return "connected"

    @classmethod
    def skyscraper(cls, K: ConnSubgroup, T) -> "Rank2Object":
        if K.kind == "G":
            V = T if isinstance(T, tuple) else tuple(p for p, _ in _parities_of(T))
            return cls(V=V)
        if K.kind == "circle":
            return cls(circles=((K, _as_kc(T)),))
        if isinstance(T, FGModule):
            raise TorsionRequiredError("the component at 1 must be Artinian (torsion)")
        return cls(one=T)

    @classmethod
    def injective_family(cls, L: ConnSubgroup, T) -> "Rank2Object":
        if L.kind == "G":
            return cls.skyscraper(L, T)
        base = cls.skyscraper(L, T)
        return cls(base.V, base.circles, base.one, (), ("a", L, T))

    @classmethod
    def b_component(cls, K: ConnSubgroup, n: int) -> "Rank2Object":
        if K.kind == "1":
            T = ArtinianModule(FGModule.koszul_quotient(P2, n))
            return cls(one=T, b_n=n)
        if K.kind == "circle":
            return cls(circles=((K, KcModule.of(Cyc(0, n))),), b_n=n)
        return cls(V=(0,), b_n=n)

    def circle(self, K: ConnSubgroup) -> KcModule:
        for L, T in self.circles:
            if L == K:
                return T
        return KcModule()

    def support(self) -> set:
        s = set()
        if self.V:
            s.add(G2)
        s.update(K for K, T in self.circles if not T.is_zero())
        if self.one is not None and any(self.one.dual.dim(g) for g in self.one.dual.gen_degrees):
            s.add(TRIVIAL2)
        return s

    def component(self, K: ConnSubgroup):
        if K.kind == "G":
            return self.V
        if K.kind == "circle":
            return self.circle(K)
        return self.one

    def c_k(self, K) -> object:
        K = K if isinstance(K, ConnSubgroup) else {"G": G2, "1": TRIVIAL2}[K]
        if K.kind == "G":
            return self.V
        if K.kind == "circle":
            T = self.circle(K)
            q = dict(self.q).get(K)
            return _kc_cokernel_of_strings(T, q, tuple((p, "1") for p in self.V)) if q is not None else T
        return self.one

    def phi_fixed(self, K: ConnSubgroup) -> object:
        """Components at subgroups containing K, re-indexed over G/K."""
        if K.kind == "1":
            return self
        if K.kind == "G":
            return AtObject.make(self.V)
        T = self.circle(K)
        q = dict(self.q).get(K, Mat.zeros(len(T.duals()), len(self.V)))
        return AtObject.make(self.V, T, q)

    def invariants(self) -> InvariantReport:
        torsion = all(isinstance(T, KcModule) for _, T in self.circles) and (
            self.one is None or isinstance(self.one, (ArtinianModule,))
        )
        return InvariantReport(
            torsion=torsion,
            cochain=True,  # no data into 1, so no composite G -> K -> 1
            locally_finite=len(self.circles) < float("inf"),
            cotoral=all(K.kind == "circle" for K, _ in self.q),
            support=tuple(sorted(map(str, self.support()))),
        )

    def eval_via_colim(self, K, window, horizon) -> EvalCertificate:
        """Hom(B_K(V, n), f_K T) = ann(m^[n], T), evaluated at the generator."""
        K = K if isinstance(K, ConnSubgroup) else {"G": G2, "1": TRIVIAL2}[K]
        lo, hi = window
        if K.kind == "G":
            comp = {d: sum(1 for p in self.V if p == d % 2) for d in range(lo, hi + 1)}
            return EvalCertificate("G", window, comp, dict(comp), {d: 0 for d in comp}, 1, horizon, True)
        if K.kind == "circle":
            T = self.circle(K)
            comp = {d: T.dim(d) for d in range(lo, hi + 1)}

            def ann(d, n):
                return T.ann_dim(d, n)
        else:
            A = self.one
            comp = {d: (A.dim(d) if A is not None else 0) for d in range(lo, hi + 1)}

            def ann(d, n):
                return _ann_dim(A, d, n) if A is not None else 0
        required, rec = None, {}
        for n in range(1, horizon + 1):
            rec = {d: ann(d, n) for d in range(lo, hi + 1)}
            if rec == comp:
                required = n
                break
        # e is injective: a map out of a cyclic module is fixed by the image of 1
        return EvalCertificate(K.kind, window, comp, rec, {d: 0 for d in comp}, required, horizon, True)


def _ann_dim(A, d: int, n: int) -> int:
    """dim of {a in A_d : x_i^n a = 0 for all i}."""
    ring = A.ring
    mats = []
    for i in range(ring.nvars):
        f = ring.gen(i) ** n
        mats.append(poly_act(A, f, d))
    rows = [r for m in mats for r in m.rows]
    dim = A.dim(d)
    if not dim:
        return 0
    if not rows:
        return dim
    return dim - Mat(rows, dim).rank()


def _rank2_hom_dim(X, Y: Rank2Object, degree: int) -> int:
    """Hom into a standard rank-2 object through the adjunctions."""
    from .polymod import hom_fg

    if Y.family is not None:
        _, L, T = Y.family
        src = X.component(L) if isinstance(X, Rank2Object) else None
    elif sum(bool(x) for x in (Y.V, Y.circles, Y.one is not None)) == 1:
        L = G2 if Y.V else (Y.circles[0][0] if Y.circles else TRIVIAL2)
        T = Y.component(L)
        src = X.c_k(L)
    else:
        raise ValueError("target is not in standard form")
    if L.kind == "G":
        return sum(1 for p in T for r in (src or ()) if p == (r + degree) % 2)
    if L.kind == "circle":
        return _kc_hom_dim(src or KcModule(), T, degree)
    if src is None:
        return 0
    # Hom(M^∨, N^∨) = Hom(N, M) for Artinian modules
    return len(hom_fg(T.dual, src.dual, degree))
