"""Exact rational linear algebra and windowed graded vector spaces.

Matrices are lists of rows of :class:`fractions.Fraction`.  A matrix with no
rows still needs a column count, so most helpers take the shape explicitly
through the :class:`Mat` wrapper.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

__all__ = [
    "Mat",
    "MalformedMapError",
    "NotAComplexError",
    "PoisonedError",
    "Tag",
    "ZERO",
    "UNKNOWN",
    "periodic",
    "GradedSpace",
    "GradedMap",
    "rank_kernel",
    "cokernel",
    "homology_at",
]


class MalformedMapError(ValueError):
    """Block dimensions disagree with the source/target spaces."""


class NotAComplexError(ValueError):
    """Raised by :func:`homology_at` when g∘f is nonzero."""

    def __init__(self, degree: int):
        super().__init__(f"composite is nonzero in degree {degree}")
        self.degree = degree


class PoisonedError(ValueError):
    """An operation needs off-window data but the edge tag is UNKNOWN."""


def _q(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class Mat:
    """Dense exact matrix with an explicit shape."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        rows = [[_q(x) for x in r] for r in rows]
        if ncols is None:
            if not rows:
                raise MalformedMapError("empty matrix needs an explicit column count")
            ncols = len(rows[0])
        for r in rows:
            if len(r) != ncols:
                raise MalformedMapError("ragged matrix")
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = ncols

    @classmethod
    def zeros(cls, m: int, n: int) -> "Mat":
        return cls([[Fraction(0)] * n for _ in range(m)], n)

    @classmethod
    def identity(cls, n: int) -> "Mat":
        return cls([[Fraction(int(i == j)) for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], nrows: int) -> "Mat":
        return cls([[c[i] for c in cols] for i in range(nrows)], len(cols))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other) -> bool:
        return isinstance(other, Mat) and self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.shape, tuple(tuple(r) for r in self.rows)))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in r) for r in self.rows)
        return f"Mat({self.nrows}x{self.ncols}: {body})"

    def compact(self) -> str:
        """``[[1,-1/2],[0,3]]``, the form the object grammar reads."""
        return "[" + ",".join("[" + ",".join(str(x) for x in r) + "]" for r in self.rows) + "]"

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.ncols != other.nrows:
            raise MalformedMapError(f"cannot compose {self.shape} with {other.shape}")
        cols = list(zip(*other.rows)) if other.nrows else [()] * other.ncols
        out = []
        for r in self.rows:
            out.append([sum((a * b for a, b in zip(r, c) if a and b), Fraction(0)) for c in cols])
        return Mat(out, other.ncols)

    def __add__(self, other: "Mat") -> "Mat":
        if self.shape != other.shape:
            raise MalformedMapError("shape mismatch in sum")
        return Mat([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols)

    def __neg__(self) -> "Mat":
        return Mat([[-a for a in r] for r in self.rows], self.ncols)

    def __sub__(self, other: "Mat") -> "Mat":
        return self + (-other)

    def scale(self, k) -> "Mat":
        k = _q(k)
        return Mat([[k * a for a in r] for r in self.rows], self.ncols)

    def T(self) -> "Mat":
        return Mat([[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)], self.nrows)

    def column(self, j: int) -> list[Fraction]:
        return [r[j] for r in self.rows]

    def columns(self) -> list[list[Fraction]]:
        return [self.column(j) for j in range(self.ncols)]

    def apply(self, v: Sequence) -> list[Fraction]:
        return [sum((a * _q(b) for a, b in zip(r, v) if a and b), Fraction(0)) for r in self.rows]

    def is_zero(self) -> bool:
        return all(a == 0 for r in self.rows for a in r)

    def hstack(self, other: "Mat") -> "Mat":
        if self.nrows != other.nrows:
            raise MalformedMapError("row mismatch in hstack")
        return Mat([r + s for r, s in zip(self.rows, other.rows)], self.ncols + other.ncols)

    def vstack(self, other: "Mat") -> "Mat":
        if self.ncols != other.ncols:
            raise MalformedMapError("column mismatch in vstack")
        return Mat(self.rows + other.rows, self.ncols)

    def rref(self) -> tuple["Mat", list[int]]:
        """Reduced row echelon form and pivot columns."""
        a = [list(r) for r in self.rows]
        pivots: list[int] = []
        i = 0
        for j in range(self.ncols):
            p = next((k for k in range(i, self.nrows) if a[k][j] != 0), None)
            if p is None:
                continue
            a[i], a[p] = a[p], a[i]
            piv = a[i][j]
            if piv != 1:
                a[i] = [x / piv for x in a[i]]
            for k in range(self.nrows):
                if k != i and a[k][j] != 0:
                    f = a[k][j]
                    a[k] = [x - f * y for x, y in zip(a[k], a[i])]
            pivots.append(j)
            i += 1
            if i == self.nrows:
                break
        return Mat(a, self.ncols), pivots

    def rank(self) -> int:
        if self.nrows == 0 or self.ncols == 0:
            return 0
        return len(self.rref()[1])

    def nullspace(self) -> list[list[Fraction]]:
        """Basis of {v : self v = 0}."""
        r, piv = self.rref()
        free = [j for j in range(self.ncols) if j not in piv]
        basis = []
        for f in free:
            v = [Fraction(0)] * self.ncols
            v[f] = Fraction(1)
            for row, p in enumerate(piv):
                v[p] = -r.rows[row][f]
            basis.append(v)
        return basis

    def colspace(self) -> list[list[Fraction]]:
        """Basis of the column space drawn from the original columns."""
        _, piv = self.rref()
        return [self.column(j) for j in piv]

    def solve(self, b: Sequence) -> list[Fraction] | None:
        """One solution of self x = b, or None."""
        aug = self.hstack(Mat([[_q(x)] for x in b], 1))
        r, piv = aug.rref()
        if self.ncols in piv:
            return None
        x = [Fraction(0)] * self.ncols
        for row, p in enumerate(piv):
            x[p] = r.rows[row][self.ncols]
        return x

    def inverse(self) -> "Mat":
        if self.nrows != self.ncols:
            raise MalformedMapError("inverse of a non-square matrix")
        n = self.nrows
        r, piv = self.hstack(Mat.identity(n)).rref()
        if piv[:n] != list(range(n)):
            raise ZeroDivisionError("singular matrix")
        return Mat([row[n:] for row in r.rows], n)


def complement_basis(sub: Sequence[Sequence], n: int) -> list[list[Fraction]]:
    """Standard basis vectors completing the span of ``sub`` to all of Q^n."""
    chosen = [list(map(_q, v)) for v in sub]
    rank = Mat.from_columns(chosen, n).rank() if chosen else 0
    out = []
    for i in range(n):
        e = [Fraction(int(k == i)) for k in range(n)]
        trial = chosen + out + [e]
        if Mat.from_columns(trial, n).rank() > rank + len(out):
            out.append(e)
        if rank + len(out) == n:
            break
    return out


# --------------------------------------------------------------------------
# graded spaces


@dataclass(frozen=True)
class Tag:
    kind: str  # "ZERO" | "PERIODIC" | "UNKNOWN"
    period: int = 0
    reference: int | None = None

    def __str__(self) -> str:
        if self.kind == "PERIODIC":
            return f"PERIODIC({self.period},{self.reference})"
        return self.kind


ZERO = Tag("ZERO")
UNKNOWN = Tag("UNKNOWN")


def periodic(reference: int, period: int = 2) -> Tag:
    return Tag("PERIODIC", period, reference)


@dataclass(frozen=True)
class GradedSpace:
    """Graded Q-vector space known exactly on ``[lo, hi]``."""

    lo: int
    hi: int
    dims: tuple[int, ...]
    below: Tag = ZERO
    above: Tag = ZERO

    def __post_init__(self):
        if self.lo > self.hi + 1:
            raise ValueError("window must satisfy lo <= hi")
        if len(self.dims) != self.hi - self.lo + 1:
            raise ValueError("dims must cover the window exactly")
        if any(d < 0 for d in self.dims):
            raise ValueError("negative dimension")
        for tag, edge in ((self.below, "below"), (self.above, "above")):
            if tag.kind == "PERIODIC" and self.dims:
                top = self.hi if edge == "above" else self.lo
                step = -tag.period if edge == "above" else tag.period
                if self.lo <= top + step <= self.hi and self.dim(top) != self.dim(top + step):
                    raise ValueError(f"PERIODIC tag {edge} inconsistent with window dims")

    @classmethod
    def from_dict(cls, lo: int, hi: int, dims: dict[int, int], below: Tag = ZERO, above: Tag = ZERO):
        return cls(lo, hi, tuple(dims.get(d, 0) for d in range(lo, hi + 1)), below, above)

    @property
    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def dim(self, d: int) -> int:
        if self.lo <= d <= self.hi:
            return self.dims[d - self.lo]
        tag = self.above if d > self.hi else self.below
        if tag.kind == "ZERO":
            return 0
        if tag.kind == "UNKNOWN":
            raise PoisonedError(f"degree {d} lies beyond an UNKNOWN edge")
        while not (self.lo <= d <= self.hi):
            d += -tag.period if d > self.hi else tag.period
        return self.dims[d - self.lo]

    def total(self) -> int:
        return sum(self.dims)

    def as_dict(self) -> dict[int, int]:
        return {d: n for d, n in zip(self.degrees, self.dims) if n}


def _block_ok(m: Mat, rows: int, cols: int) -> bool:
    return m.nrows == rows and m.ncols == cols


@dataclass(frozen=True)
class GradedMap:
    """Map with blocks ``M_d : source_d -> target_{d+shift}``.

    Missing blocks are zero.  Blocks are checked against the dims.
    """

    source: GradedSpace
    target: GradedSpace
    shift: int = 0
    blocks: dict = field(default_factory=dict, hash=False, compare=False)

    def __post_init__(self):
        for d, m in self.blocks.items():
            if not self.source.lo <= d <= self.source.hi:
                raise MalformedMapError(f"block at {d} outside source window")
            rows = self.target.dim(d + self.shift) if self.target.lo <= d + self.shift <= self.target.hi else 0
            if not _block_ok(m, rows, self.source.dim(d)):
                raise MalformedMapError(
                    f"block at degree {d} has shape {m.shape}, expected {(rows, self.source.dim(d))}"
                )

    def block(self, d: int) -> Mat:
        if d in self.blocks:
            return self.blocks[d]
        td = d + self.shift
        rows = self.target.dim(td) if self.target.lo <= td <= self.target.hi else 0
        cols = self.source.dim(d) if self.source.lo <= d <= self.source.hi else 0
        return Mat.zeros(rows, cols)

    def then(self, g: "GradedMap") -> "GradedMap":
        """Composite g∘self."""
        blocks = {}
        for d in self.source.degrees:
            blocks[d] = g.block(d + self.shift) @ self.block(d)
        return GradedMap(self.source, g.target, self.shift + g.shift, blocks)

    def is_zero(self) -> bool:
        return all(self.block(d).is_zero() for d in self.source.degrees)


def identity_map(space: GradedSpace) -> GradedMap:
    return GradedMap(space, space, 0, {d: Mat.identity(space.dim(d)) for d in space.degrees})


def rank_kernel(m: GradedMap) -> tuple[dict[int, int], dict[int, list[list[Fraction]]]]:
    """Per-degree rank and kernel basis."""
    ranks, kernels = {}, {}
    for d in m.source.degrees:
        b = m.block(d)
        if b.ncols != m.source.dim(d):
            raise MalformedMapError(f"degree {d}: block has {b.ncols} columns")
        ranks[d] = b.rank()
        kernels[d] = b.nullspace()
        assert ranks[d] + len(kernels[d]) == m.source.dim(d)
    return ranks, kernels


def cokernel(m: GradedMap) -> tuple[GradedSpace, GradedMap]:
    """Cokernel space and the projection ``target -> coker``."""
    dims, blocks = {}, {}
    tgt = m.target
    for e in tgt.degrees:
        d = e - m.shift
        b = m.block(d) if m.source.lo <= d <= m.source.hi else Mat.zeros(tgt.dim(e), 0)
        n = tgt.dim(e)
        img = b.colspace()
        comp = complement_basis(img, n)
        # coordinates in the basis img + comp, keep the comp part
        basis = Mat.from_columns(img + comp, n) if n else Mat.zeros(0, 0)
        proj = basis.inverse() if n else Mat.zeros(0, 0)
        k = len(img)
        dims[e] = n - k
        blocks[e] = Mat(proj.rows[k:], n)
    space = GradedSpace.from_dict(tgt.lo, tgt.hi, dims, tgt.below, tgt.above)
    return space, GradedMap(tgt, space, 0, blocks)


@dataclass(frozen=True)
class Homology:
    space: GradedSpace
    cycles: dict = field(compare=False, hash=False)  # degree -> list of cycle representatives


def homology_at(f: GradedMap, g: GradedMap) -> Homology:
    """ker g / im f degreewise; representatives are lifts into the middle."""
    mid = g.source
    dims, reps = {}, {}
    for d in mid.degrees:
        gb = g.block(d)
        fd = d - f.shift
        fb = f.block(fd) if f.source.lo <= fd <= f.source.hi else Mat.zeros(mid.dim(d), 0)
        if fb.nrows != mid.dim(d):
            raise MalformedMapError(f"f lands in dimension {fb.nrows}, middle has {mid.dim(d)} in degree {d}")
        if not (gb @ fb).is_zero():
            raise NotAComplexError(d)
        ker = gb.nullspace()
        img = fb.colspace()
        r_img = len(img)
        extra = []
        for v in ker:
            trial = img + extra + [v]
            if Mat.from_columns(trial, mid.dim(d)).rank() > r_img + len(extra):
                extra.append(v)
        dims[d] = len(extra)
        reps[d] = extra
    return Homology(GradedSpace.from_dict(mid.lo, mid.hi, dims), reps)
