"""Whitehead exact sequence of a Sullivan model.

Row ``k`` carries ``V^k --b^k--> H^{k+1}(LV^{<=k-1}) --j--> H^{k+1}(LV) --p--> V^{k+1}``
where ``j`` is induced by inclusion and ``p`` takes the linear part of a
cocycle (well defined for minimal models).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ratmodels.cdga import SullivanModel, truncate
from ratmodels.cohomology import cohomology_basis
from ratmodels.exactla import RationalMatrix


class ExactnessError(RuntimeError):
    def __init__(self, message: str, degree: int):
        super().__init__(f"degree {degree}: {message}")
        self.degree = degree


def b_map(m: SullivanModel, q: int, trunc: int | None = None) -> RationalMatrix:
    """Matrix of ``v -> [d v]`` from V^q into H^{q+1} of the truncation (default q-1)."""
    if q < 2:
        raise ValueError("b-map needs q >= 2")
    t = q - 1 if trunc is None else trunc
    low = truncate(m, t)
    h = cohomology_basis(low, q + 1)
    cols = []
    for g in m.in_degree(q):
        dv = m.differential[g.name]
        missing = dv.generators() - {x.name for x in low.generators}
        if missing:
            raise ValueError(f"d({g.name}) leaves the truncation at {t}")
        cols.append(h.reduction(dv))
    return RationalMatrix.from_columns(cols, h.dim)


def classification(b: RationalMatrix) -> str:
    r = b.rank()
    if b.rows == b.cols and r == b.cols:
        return "iso"
    if r == 0:
        return "zero"
    if r == b.cols:
        return "injective"
    if r == b.rows:
        return "surjective"
    return "other"


def _inclusion_matrix(m: SullivanModel, k: int) -> RationalMatrix:
    """H^{k+1}(LV^{<=k-1}) -> H^{k+1}(LV)."""
    src = cohomology_basis(truncate(m, k - 1), k + 1)
    tgt = cohomology_basis(m, k + 1)
    cols = [tgt.reduction(r) for r in src.representatives]
    return RationalMatrix.from_columns(cols, tgt.dim)


def _linear_part_matrix(m: SullivanModel, k: int) -> RationalMatrix:
    """H^k(LV) -> V^k."""
    h = cohomology_basis(m, k)
    gens = m.in_degree(k)
    cols = []
    for r in h.representatives:
        cols.append([r.terms.get(((g.degree, g.name, 1),), Fraction(0)) for g in gens])
    return RationalMatrix.from_columns(cols, len(gens))


@dataclass(frozen=True)
class WhiteheadRow:
    k: int
    v_dim: int
    b_matrix: RationalMatrix
    h_trunc_dim: int
    h_full_dim: int
    exact: dict = field(default_factory=dict, compare=False)

    @property
    def classification(self) -> str:
        return classification(self.b_matrix)


def _check(name: str, k: int, first: RationalMatrix, second: RationalMatrix) -> bool:
    """Exactness of  . --first--> X --second--> .  at X."""
    if first.cols and second.rows:
        if not (second @ first).is_zero():
            raise ExactnessError(f"composite through {name} is nonzero", k)
    nullity = second.cols - second.rank()
    if first.rank() != nullity:
        raise ExactnessError(f"image != kernel at {name} (rank {first.rank()} vs nullity {nullity})", k)
    return True


def whitehead_table(m: SullivanModel, k_max: int) -> list[WhiteheadRow]:
    if k_max < 2:
        raise ValueError("k_max must be at least 2")
    rows = []
    b_next = b_map(m, 2)
    for k in range(2, k_max + 1):
        b = b_next
        j = _inclusion_matrix(m, k)
        p = _linear_part_matrix(m, k + 1)
        b_next = b_map(m, k + 1)
        exact = {
            "at_truncation": _check("H^{k+1}(trunc)", k, b, j),
            "at_full": _check("H^{k+1}(full)", k, j, p),
            "at_V_next": _check("V^{k+1}", k, p, b_next),
        }
        rows.append(WhiteheadRow(
            k=k, v_dim=len(m.in_degree(k)), b_matrix=b,
            h_trunc_dim=b.rows, h_full_dim=j.rows, exact=exact,
        ))
    return rows


@dataclass(frozen=True)
class BClassification:
    q: int
    n: int
    expected: str
    actual: str
    b_matrix: RationalMatrix

    @property
    def consistent(self) -> bool:
        if self.expected == "zero":
            return self.b_matrix.rank() == 0
        return self.actual == "iso"


def classify_b(m: SullivanModel, n: int, q: int) -> BClassification:
    if q <= n:
        raise ValueError("classification only applies above the formal dimension")
    b = b_map(m, q)
    expected = "iso" if q % 2 else "zero"
    actual = classification(b)
    return BClassification(q, n, expected, actual, b)
