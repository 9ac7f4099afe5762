"""Ellipticity diagnostics for Sullivan models.

Nothing here decides ellipticity. The structural conditions are necessary
ones; cohomology windows only corroborate a claimed formal dimension.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from ratmodels.cdga import SullivanModel
from ratmodels.cohomology import cohomology_dim


def formal_dimension(m: SullivanModel) -> int:
    """Sum of odd degrees minus sum of (even degree - 1)."""
    if not m.generators:
        raise ValueError("formal dimension of an empty model")
    odd = sum(g.degree for g in m.generators if g.odd)
    even = sum(g.degree - 1 for g in m.generators if not g.odd)
    return odd - even


@dataclass
class Condition:
    ok: bool
    detail: str
    witness: object = None


@dataclass
class EllipticReport:
    formal_dimension_formula: int
    odd_at_least_even: Condition
    degree_sums: Condition
    below_2n: Condition
    no_even_above_n: Condition
    window_checks: list[tuple[int, int]] = field(default_factory=list)
    top_degree_dim: int | None = None

    @property
    def violations(self) -> list[str]:
        names = []
        for label, c in (("dim V^odd >= dim V^even", self.odd_at_least_even),
                         ("degree sums bounded by n", self.degree_sums),
                         ("V^i = 0 for i >= 2n", self.below_2n),
                         ("V^i = 0 for even i > n", self.no_even_above_n)):
            if not c.ok:
                names.append(f"{label}: {c.detail}")
        if self.top_degree_dim is not None and self.top_degree_dim != 1:
            names.append(f"dim H^n = {self.top_degree_dim}, expected 1")
        for k, d in self.window_checks:
            if d:
                names.append(f"dim H^{k} = {d} above the formal dimension")
        return names

    @property
    def verdict(self) -> str:
        return "inconsistent" if self.violations else "consistent"


def check_structure(m: SullivanModel) -> EllipticReport:
    n = formal_dimension(m)
    odd = [g for g in m.generators if g.odd]
    even = [g for g in m.generators if not g.odd]
    c1 = Condition(len(odd) >= len(even), f"{len(odd)} odd vs {len(even)} even",
                   None if len(odd) >= len(even) else [g.name for g in even])
    sum_even = sum(g.degree for g in even)
    sum_odd = sum(g.degree for g in odd)
    bad3 = []
    if sum_even > n:
        bad3.append(f"sum of even degrees {sum_even} > {n}")
    if sum_odd > 2 * n - 1:
        bad3.append(f"sum of odd degrees {sum_odd} > {2 * n - 1}")
    c3 = Condition(not bad3, "; ".join(bad3) or f"{sum_even} <= {n}, {sum_odd} <= {2 * n - 1}",
                   bad3 or None)
    high = [g.name for g in m.generators if g.degree >= 2 * n]
    c4 = Condition(not high, f"generators of degree >= {2 * n}: {high}" if high else "none",
                   high or None)
    even_high = [g.name for g in even if g.degree > n]
    cc3 = Condition(not even_high, f"even generators above {n}: {even_high}" if even_high else "none",
                    even_high or None)
    return EllipticReport(n, c1, c3, c4, cc3)


def vanishing_window(m: SullivanModel, start: int, stop: int) -> list[tuple[int, int]]:
    """``(k, dim H^k)`` for ``start <= k <= stop``."""
    if start > stop:
        raise ValueError("empty window")
    return [(k, cohomology_dim(m, k)) for k in range(start, stop + 1)]


def default_window(m: SullivanModel) -> int:
    return m.max_degree + 1


def elliptic_report(m: SullivanModel, window: int | None = None, n: int | None = None) -> EllipticReport:
    """Structural conditions plus dim H^n and vanishing on (n, n + window]."""
    rep = check_structure(m)
    n = rep.formal_dimension_formula if n is None else n
    w = default_window(m) if window is None else window
    if n >= 0:
        rep.top_degree_dim = cohomology_dim(m, n)
        if w > 0:
            rep.window_checks = vanishing_window(m, n + 1, n + w)
    return rep


def odd_truncation_dim(m: SullivanModel, k: int) -> int:
    """dim H^{2k+1}(LV^{<=2k-1}); zero whenever 2k exceeds the formal dimension."""
    from ratmodels.cdga import truncate

    return cohomology_dim(truncate(m, 2 * k - 1), 2 * k + 1)
