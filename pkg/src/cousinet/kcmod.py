"""Graded torsion modules over k[c] as finite sums of indecomposables.

Every finitely described torsion k[c]-module used by the rank-1 model is a
sum of two kinds of atom:

``Cyc(a, n)``
    the cyclic module Σ^a k[c]/c^n, basis ``c^j g`` in degree ``a - 2j``
    for ``0 <= j < n``;
``Dual(b)``
    the injective hull Σ^b k[c]^∨, basis ``f_m`` in degree ``b + 2m`` with
    ``c f_m = f_{m-1}`` and ``c f_0 = 0``.

Between two atoms there is at most one degree-0 map up to scalar (the
*canonical* map), so a module map is a matrix of rationals indexed by
(target atom, source atom).  Atoms carry a ``label`` naming the idempotent
piece they live in (the finite subgroup in the full-isotropy variant);
maps between different labels vanish.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .qlinalg import UNKNOWN, ZERO, GradedMap, GradedSpace, Mat, periodic

__all__ = [
    "Cyc",
    "Dual",
    "KcModule",
    "KcMap",
    "TorsionRequiredError",
    "canonical_exists",
    "decompose_finite",
]


class TorsionRequiredError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Cyc:
    shift: int
    n: int
    label: str = "1"

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("cyclic torsion needs n >= 1")

    def degrees(self) -> list[int]:
        return [self.shift - 2 * j for j in range(self.n)]

    def suspend(self, d: int) -> "Cyc":
        return Cyc(self.shift + d, self.n, self.label)

    @property
    def socle(self) -> int:
        return self.shift - 2 * (self.n - 1)

    def __str__(self) -> str:
        s = f"cyc({self.shift},{self.n})"
        return s if self.label == "1" else f"{s}@{self.label}"


@dataclass(frozen=True, order=True)
class Dual:
    shift: int
    label: str = "1"

    def suspend(self, d: int) -> "Dual":
        return Dual(self.shift + d, self.label)

    @property
    def socle(self) -> int:
        return self.shift

    def __str__(self) -> str:
        s = f"dual({self.shift})"
        return s if self.label == "1" else f"{s}@{self.label}"


Atom = Cyc | Dual


def canonical_exists(src: Atom, tgt: Atom) -> bool:
    """Whether a nonzero degree-0 k[c]-map src -> tgt exists."""
    if src.label != tgt.label:
        return False
    if isinstance(src, Cyc) and isinstance(tgt, Cyc):
        diff = tgt.shift - src.shift
        if diff % 2:
            return False
        j = diff // 2
        return 0 <= j <= tgt.n - 1 and src.n + j >= tgt.n
    if isinstance(src, Cyc) and isinstance(tgt, Dual):
        diff = src.shift - tgt.shift
        return diff % 2 == 0 and 0 <= diff // 2 <= src.n - 1
    if isinstance(src, Dual) and isinstance(tgt, Dual):
        diff = tgt.shift - src.shift
        return diff % 2 == 0 and diff >= 0
    return False


def _basis_in_degree(atom: Atom, d: int) -> bool:
    if isinstance(atom, Cyc):
        return (atom.shift - d) % 2 == 0 and 0 <= (atom.shift - d) // 2 < atom.n
    return (d - atom.shift) % 2 == 0 and d >= atom.shift


def _canonical_value(src: Atom, tgt: Atom, d: int) -> bool:
    """Does the canonical map send the basis vector of ``src`` in degree d
    to the basis vector of ``tgt`` in degree d (rather than to zero)?"""
    if not (_basis_in_degree(src, d) and _basis_in_degree(tgt, d)):
        return False
    return canonical_exists(src, tgt)


@dataclass(frozen=True)
class KcModule:
    """Finite direct sum of atoms."""

    atoms: tuple[Atom, ...] = ()

    @classmethod
    def of(cls, *atoms: Atom) -> "KcModule":
        return cls(tuple(atoms))

    def __add__(self, other: "KcModule") -> "KcModule":
        return KcModule(self.atoms + other.atoms)

    def __len__(self) -> int:
        return len(self.atoms)

    def suspend(self, d: int) -> "KcModule":
        return KcModule(tuple(a.suspend(d) for a in self.atoms))

    def is_zero(self) -> bool:
        return not self.atoms

    def is_finite_length(self) -> bool:
        return all(isinstance(a, Cyc) for a in self.atoms)

    def is_injective(self) -> bool:
        return all(isinstance(a, Dual) for a in self.atoms)

    def injective_dimension(self) -> int:
        if self.is_zero():
            return -1
        return 0 if self.is_injective() else 1

    def duals(self) -> list[int]:
        return [i for i, a in enumerate(self.atoms) if isinstance(a, Dual)]

    # -- degreewise realization ------------------------------------------

    def basis(self, d: int) -> list[int]:
        """Indices of atoms having a basis vector in degree d."""
        return [i for i, a in enumerate(self.atoms) if _basis_in_degree(a, d)]

    def dim(self, d: int) -> int:
        return len(self.basis(d))

    def space(self, lo: int, hi: int) -> GradedSpace:
        """Degreewise dimensions on [lo, hi] with honest edge tags."""
        dims = {d: self.dim(d) for d in range(lo, hi + 1)}
        if not self.atoms:
            return GradedSpace.from_dict(lo, hi, dims)
        bottom = min(a.socle for a in self.atoms)
        top = max(a.shift for a in self.atoms)
        below = ZERO if lo <= bottom else UNKNOWN
        if self.is_finite_length():
            above = ZERO if hi >= top else UNKNOWN
        else:
            above = periodic(hi) if hi - 1 >= top else UNKNOWN
        return GradedSpace.from_dict(lo, hi, dims, below, above)

    def c_block(self, d: int) -> Mat:
        """Matrix of c : M_d -> M_{d-2}."""
        src, tgt = self.basis(d), self.basis(d - 2)
        m = Mat.zeros(len(tgt), len(src))
        for col, i in enumerate(src):
            if i in tgt:
                m.rows[tgt.index(i)][col] = Fraction(1)
        return m

    def c_power_rank(self, d: int, k: int) -> int:
        """Rank of c^k : M_d -> M_{d-2k}."""
        return sum(1 for i in self.basis(d) if i in self.basis(d - 2 * k))

    def ann_dim(self, d: int, n: int) -> int:
        """Dimension in degree d of the submodule killed by c^n."""
        return sum(1 for i in self.basis(d) if i not in self.basis(d - 2 * n))

    # -- Tate-Hom -----------------------------------------------------------

    def tate_basis(self, d: int) -> list[int]:
        """Basis of Hom(t, M) in degree d: one vector per dual atom of matching parity."""
        return [i for i in self.duals() if (d - self.atoms[i].shift) % 2 == 0]

    def tate_dim(self, d: int) -> int:
        return len(self.tate_basis(d))

    def evaluation(self, d: int) -> Mat:
        """ev : Hom(t, M)_d -> M_d, evaluation at 1 in t."""
        src, tgt = self.tate_basis(d), self.basis(d)
        m = Mat.zeros(len(tgt), len(src))
        for col, i in enumerate(src):
            if i in tgt:
                m.rows[tgt.index(i)][col] = Fraction(1)
        return m

    def __str__(self) -> str:
        return "0" if not self.atoms else " + ".join(map(str, self.atoms))


@dataclass(frozen=True)
class KcMap:
    """Degree-0 map between atom sums.

    ``coeffs[i][j]`` scales the canonical map from source atom j to target
    atom i; it must vanish where no canonical map exists.
    """

    source: KcModule
    target: KcModule
    coeffs: tuple[tuple[Fraction, ...], ...] = field(default=())

    def __post_init__(self):
        if not self.coeffs:
            object.__setattr__(
                self,
                "coeffs",
                tuple(tuple(Fraction(0) for _ in self.source.atoms) for _ in self.target.atoms),
            )
        rows = tuple(tuple(Fraction(x) for x in r) for r in self.coeffs)
        object.__setattr__(self, "coeffs", rows)
        if len(rows) != len(self.target.atoms) or any(len(r) != len(self.source.atoms) for r in rows):
            raise ValueError("coefficient matrix has the wrong shape")
        for i, t in enumerate(self.target.atoms):
            for j, s in enumerate(self.source.atoms):
                if rows[i][j] and not canonical_exists(s, t):
                    raise ValueError(f"no module map {s} -> {t}")

    @classmethod
    def identity(cls, m: KcModule) -> "KcMap":
        n = len(m.atoms)
        return cls(m, m, tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)))

    @classmethod
    def zero(cls, s: KcModule, t: KcModule) -> "KcMap":
        return cls(s, t)

    def then(self, g: "KcMap") -> "KcMap":
        """Composite g∘self."""
        if g.source != self.target:
            raise ValueError("maps are not composable")
        src, tgt, mid = self.source.atoms, g.target.atoms, self.target.atoms
        out = []
        for i, t in enumerate(tgt):
            row = []
            for j, s in enumerate(src):
                if not canonical_exists(s, t):
                    row.append(Fraction(0))
                    continue
                acc = Fraction(0)
                for k, m in enumerate(mid):
                    if g.coeffs[i][k] and self.coeffs[k][j]:
                        acc += g.coeffs[i][k] * self.coeffs[k][j]
                row.append(acc)
            out.append(tuple(row))
        return KcMap(self.source, g.target, tuple(out))

    def __add__(self, other: "KcMap") -> "KcMap":
        rows = tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.coeffs, other.coeffs))
        return KcMap(self.source, self.target, rows)

    def scale(self, k) -> "KcMap":
        return KcMap(self.source, self.target, tuple(tuple(k * a for a in r) for r in self.coeffs))

    def block(self, d: int) -> Mat:
        src, tgt = self.source.basis(d), self.target.basis(d)
        m = Mat.zeros(len(tgt), len(src))
        for c, j in enumerate(src):
            for r, i in enumerate(tgt):
                if self.coeffs[i][j] and _canonical_value(self.source.atoms[j], self.target.atoms[i], d):
                    m.rows[r][c] = self.coeffs[i][j]
        return m

    def tate_block(self, d: int) -> Mat:
        """The induced map Hom(t, source)_d -> Hom(t, target)_d."""
        src, tgt = self.source.tate_basis(d), self.target.tate_basis(d)
        m = Mat.zeros(len(tgt), len(src))
        for c, j in enumerate(src):
            for r, i in enumerate(tgt):
                m.rows[r][c] = self.coeffs[i][j]
        return m

    def graded(self, lo: int, hi: int) -> GradedMap:
        s = GradedSpace.from_dict(lo, hi, {d: self.source.dim(d) for d in range(lo, hi + 1)})
        t = GradedSpace.from_dict(lo, hi, {d: self.target.dim(d) for d in range(lo, hi + 1)})
        return GradedMap(s, t, 0, {d: self.block(d) for d in range(lo, hi + 1)})


def hom_basis(source: KcModule, target: KcModule, degree: int = 0) -> list[tuple[int, int]]:
    """(target atom, source atom) pairs spanning Hom of the given degree.

    A degree-d map raises degrees by d, i.e. it is a degree-0 map from the
    d-fold suspension of the source.
    """
    src = source.suspend(degree)
    return [
        (i, j)
        for i, t in enumerate(target.atoms)
        for j, s in enumerate(src.atoms)
        if canonical_exists(s, t)
    ]


def decompose_finite(dims: dict[int, int], c_blocks: dict[int, Mat], label: str = "1") -> KcModule:
    """Atoms of a finite-dimensional graded k[c]-module given degreewise.

    ``c_blocks[d]`` is the matrix of c from degree d to d-2.  Multiplicities
    come from ranks of powers of c.
    """
    degs = sorted(d for d, n in dims.items() if n)
    if not degs:
        return KcModule()

    def rho(d: int, k: int) -> int:
        if dims.get(d, 0) == 0:
            return 0
        if k == 0:
            return dims[d]
        m = Mat.identity(dims[d])
        for step in range(k):
            e = d - 2 * step
            if dims.get(e - 2, 0) == 0:
                return 0
            m = c_blocks[e] @ m
        return m.rank()

    atoms = []
    span = (degs[-1] - degs[0]) // 2 + 2
    for a in degs:
        for n in range(1, span + 1):
            mult = (rho(a, n - 1) - rho(a + 2, n)) - (rho(a, n) - rho(a + 2, n + 1))
            if mult < 0:
                raise ArithmeticError("inconsistent c-action")
            atoms.extend(Cyc(a, n, label) for _ in range(mult))
    return KcModule(tuple(sorted(atoms, reverse=True)))
