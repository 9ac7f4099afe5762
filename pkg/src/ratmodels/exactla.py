"""Exact linear algebra over the rationals and Smith normal form over the integers."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from ratmodels.kernels import echelon


class DimensionMismatch(ValueError):
    """Operands have incompatible shapes."""


def _q(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class RationalMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise DimensionMismatch(f"entries do not form a {self.rows}x{self.cols} grid")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "RationalMatrix":
        rows = [tuple(_q(x) for x in r) for r in rows]
        if cols is None:
            if not rows:
                raise DimensionMismatch("column count required for a matrix without rows")
            cols = len(rows[0])
        return cls(len(rows), cols, tuple(rows))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "RationalMatrix":
        cols = [tuple(_q(x) for x in c) for c in columns]
        if any(len(c) != rows for c in cols):
            raise DimensionMismatch("column length differs from row count")
        return cls(rows, len(cols), tuple(tuple(c[i] for c in cols) for i in range(rows)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        z = Fraction(0)
        return cls(rows, cols, tuple((z,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(n, n, tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def column(self, j: int) -> list[Fraction]:
        return [r[j] for r in self.entries]

    def columns(self) -> list[list[Fraction]]:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(self.cols, self.rows, tuple(tuple(c) for c in self.columns()))

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        ocols = other.columns()
        return RationalMatrix(
            self.rows,
            other.cols,
            tuple(tuple(sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in ocols)
                  for r in self.entries),
        )

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot subtract {other.shape} from {self.shape}")
        return RationalMatrix(self.rows, self.cols, tuple(
            tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)))

    def apply(self, v: Sequence) -> list[Fraction]:
        if len(v) != self.cols:
            raise DimensionMismatch(f"vector of length {len(v)} for {self.shape} matrix")
        return [sum((a * _q(b) for a, b in zip(r, v)), Fraction(0)) for r in self.entries]

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.entries for x in r)

    def rank(self) -> int:
        return len(echelon(self.entries, self.cols)[1])

    def to_lists(self) -> list[list[str]]:
        return [[str(x) for x in r] for r in self.entries]


@dataclass(frozen=True)
class SubspaceBasis:
    ambient_dim: int
    vectors: tuple[tuple[Fraction, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.vectors)


@dataclass(frozen=True)
class RowReduction:
    rref: RationalMatrix
    rank: int
    pivots: tuple[int, ...]
    kernel: SubspaceBasis
    image: SubspaceBasis


def kernel_from_rref(rref_rows: list[list[Fraction]], pivots: Sequence[int], ncols: int):
    """Null-space basis read off a reduced echelon form, one vector per free column."""
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(rref_rows, pivots):
            if row[f]:
                v[p] = -row[f]
        basis.append(tuple(v))
    return basis


def row_reduce(m: RationalMatrix) -> RowReduction:
    rows, pivots = echelon(m.entries, m.cols)
    full = [tuple(r) for r in rows] + [(Fraction(0),) * m.cols] * (m.rows - len(rows))
    kernel = kernel_from_rref(rows, pivots, m.cols)
    image = tuple(tuple(m.column(p)) for p in pivots)
    return RowReduction(
        rref=RationalMatrix(m.rows, m.cols, tuple(full)),
        rank=len(pivots),
        pivots=tuple(pivots),
        kernel=SubspaceBasis(m.cols, tuple(kernel)),
        image=SubspaceBasis(m.rows, image),
    )


def solve_linear(m: RationalMatrix, b: Sequence):
    """Solve ``m x = b``.

    Returns ``(x, kernel_basis)`` or ``None`` if ``b`` is not in the image.
    Raises ``DimensionMismatch`` when ``b`` has the wrong length.
    """
    if len(b) != m.rows:
        raise DimensionMismatch(f"right-hand side of length {len(b)} for {m.rows} rows")
    aug = [list(r) + [_q(x)] for r, x in zip(m.entries, b)]
    rows, pivots = echelon(aug, m.cols + 1)
    if pivots and pivots[-1] == m.cols:
        return None
    x = [Fraction(0)] * m.cols
    for row, p in zip(rows, pivots):
        x[p] = row[m.cols]
    coeff_rows = [r[: m.cols] for r in rows]
    kernel = kernel_from_rref(coeff_rows, pivots, m.cols)
    return x, SubspaceBasis(m.cols, tuple(kernel))


def span_rank(vectors: Iterable[Sequence], ambient_dim: int) -> int:
    return len(echelon(list(vectors), ambient_dim)[1])


class QuotientSpace:
    """Basis of ``cycles / boundaries`` inside a coordinate space.

    Representatives are the reduced echelon form of the cycle space after
    reduction modulo the echelonised boundaries, so they vanish on every
    boundary pivot column. ``reduce`` returns coordinates of a cycle.
    """

    def __init__(self, ambient_dim: int, cycles: Sequence[Sequence], boundaries: Sequence[Sequence]):
        self.ambient_dim = ambient_dim
        self._bnd, self._bpiv = echelon(list(boundaries), ambient_dim)
        self.boundary_rank = len(self._bpiv)
        reduced = [self._normal_form(list(map(_q, z))) for z in cycles]
        self.cycle_rank = span_rank(cycles, ambient_dim)
        reps, self._rpiv = echelon(reduced, ambient_dim)
        self.representatives = [tuple(r) for r in reps]

    @property
    def dim(self) -> int:
        return len(self.representatives)

    def _normal_form(self, v: list[Fraction]) -> list[Fraction]:
        for row, p in zip(self._bnd, self._bpiv):
            c = v[p]
            if c:
                v = [a - c * b for a, b in zip(v, row)]
        return v

    def reduce(self, v: Sequence) -> list[Fraction]:
        if len(v) != self.ambient_dim:
            raise DimensionMismatch(f"vector of length {len(v)} in dimension {self.ambient_dim}")
        nf = self._normal_form([_q(x) for x in v])
        coords = [nf[p] for p in self._rpiv]
        for rep, c in zip(self.representatives, coords):
            if c:
                nf = [a - c * b for a, b in zip(nf, rep)]
        if any(nf):
            raise ValueError("vector is not a cycle of this quotient")
        return coords


# ---------------------------------------------------------------- integers


@dataclass(frozen=True)
class IntegerMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntegerMatrix":
        rows = [tuple(int(x) for x in r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise DimensionMismatch("ragged integer matrix")
        return cls(len(rows), cols, tuple(rows))

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        oc = list(zip(*other.entries)) if other.rows else [()] * other.cols
        return IntegerMatrix(self.rows, other.cols, tuple(
            tuple(sum(a * b for a, b in zip(r, c)) for c in oc) for r in self.entries))

    def determinant(self) -> int:
        if self.rows != self.cols:
            raise DimensionMismatch("determinant of a non-square matrix")
        return int(_bareiss_det([list(r) for r in self.entries]))


def _bareiss_det(a: list[list[int]]) -> int:
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


@dataclass(frozen=True)
class SmithForm:
    invariants: tuple[int, ...]
    rank: int
    left: IntegerMatrix
    right: IntegerMatrix


def smith_normal_form(m: IntegerMatrix) -> SmithForm:
    """Smith normal form with unimodular ``left @ m @ right = diag(invariants, 0...)``.

    Pivot is the entry of least nonzero absolute value in the active block,
    ties broken by (row, col).
    """
    a = [list(r) for r in m.entries]
    nr, nc = m.rows, m.cols
    u = [[int(i == j) for j in range(nr)] for i in range(nr)]
    v = [[int(i == j) for j in range(nc)] for i in range(nc)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):  # row_dst += f * row_src
        a[dst] = [x + f * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + f * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, f):
        for row in a:
            row[dst] += f * row[src]
        for row in v:
            row[dst] += f * row[src]

    t = 0
    while t < min(nr, nc):
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                x = a[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, nr):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, nc):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    if a[t][j]:
                        dirty = True
            if not dirty:
                bad = next(((i, j) for i in range(t + 1, nr) for j in range(t + 1, nc)
                            if a[i][j] % p), None)
                if bad is None:
                    break
                add_row(t, bad[0], 1)
                continue
            best = None
            for i in range(t, nr):
                for j in range(t, nc):
                    if (i == t or j == t) and a[i][j]:
                        if best is None or abs(a[i][j]) < best[0]:
                            best = (abs(a[i][j]), i, j)
            _, i, j = best
            swap_rows(t, i)
            swap_cols(t, j)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    invariants = tuple(a[i][i] for i in range(t))
    return SmithForm(
        invariants=invariants,
        rank=t,
        left=IntegerMatrix.from_rows(u, nr),
        right=IntegerMatrix.from_rows(v, nc),
    )
