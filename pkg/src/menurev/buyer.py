"""Buyer best response, exact expected revenue, and revenue-monotonicity audits."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .model import (
    Bundle,
    JointDistribution,
    Menu,
    Valuation,
    all_bundles,
    bundle_value,
)


@dataclass(frozen=True)
class BuyerOutcome:
    bundle: Bundle  # () means nothing bought
    payment: Fraction
    utility: Fraction


def buyer_choice(m: Menu, v: Valuation) -> BuyerOutcome:
    """Utility-maximizing bundle for valuation v.

    Ties break toward the higher payment, then the larger bundle, then the
    lexicographically smallest item set, so the choice is deterministic.
    """
    if len(v) != m.n:
        raise ValueError(f"valuation has {len(v)} entries for a {m.n}-item menu")
    best: Tuple[Fraction, Fraction, int, Bundle] = (Fraction(0), Fraction(0), 0, ())
    best_bundle: Bundle = ()
    for bundle, price in zip(all_bundles(m.n), m.prices):
        u = bundle_value(v, bundle) - price
        cand = (u, price, len(bundle), bundle)
        if _prefer(cand, best):
            best = cand
            best_bundle = bundle
    return BuyerOutcome(best_bundle, best[1], best[0])


def _prefer(cand, incumbent) -> bool:
    if cand[0] != incumbent[0]:
        return cand[0] > incumbent[0]
    if cand[1] != incumbent[1]:
        return cand[1] > incumbent[1]
    if cand[2] != incumbent[2]:
        return cand[2] > incumbent[2]
    return cand[3] < incumbent[3]


def revenue_at(m: Menu, v: Valuation) -> Fraction:
    """Seller payment at a single valuation."""
    return buyer_choice(m, v).payment


def expected_revenue(m: Menu, dist: JointDistribution) -> Fraction:
    if m.n != dist.n:
        raise ValueError(f"menu has {m.n} items but distribution has {dist.n}")
    return sum((p * revenue_at(m, v) for v, p in dist.atoms), Fraction(0))


def sale_probabilities(m: Menu, dist: JointDistribution) -> Dict[Bundle, Fraction]:
    """Probability that each bundle (including ()) is the one sold."""
    if m.n != dist.n:
        raise ValueError(f"menu has {m.n} items but distribution has {dist.n}")
    out: Dict[Bundle, Fraction] = {(): Fraction(0)}
    for b in all_bundles(m.n):
        out[b] = Fraction(0)
    for v, p in dist.atoms:
        out[buyer_choice(m, v).bundle] += p
    return out


# ---------------------------------------------------------------------------
# Revenue monotonicity
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MonotonicityViolation:
    low: Valuation
    high: Valuation
    revenue_low: Fraction
    revenue_high: Fraction


@dataclass(frozen=True)
class MonotonicityReport:
    violations: Tuple[MonotonicityViolation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def check_monotone(m: Menu, grid: Sequence[Valuation]) -> MonotonicityReport:
    """Audit revenue monotonicity over every coordinatewise-comparable grid pair."""
    points = sorted(set(tuple(v) for v in grid))
    revenues = [revenue_at(m, v) for v in points]
    violations: List[MonotonicityViolation] = []
    for i, lo in enumerate(points):
        for j, hi in enumerate(points):
            if i == j or not all(x <= y for x, y in zip(lo, hi)):
                continue
            if revenues[j] < revenues[i]:
                violations.append(MonotonicityViolation(lo, hi, revenues[i], revenues[j]))
    return MonotonicityReport(tuple(violations))


def monotonicity_grid(m: Menu, support: Optional[Sequence[Iterable[Fraction]]] = None,
                      offset: Optional[Fraction] = None) -> List[Valuation]:
    """Audit grid for a 2-item menu: region corner coordinates (and optional
    per-item support values), each plus/minus a small rational offset.

    Revenue is piecewise constant with breakpoints at the region boundaries,
    so violations always show up at corner points nudged across a boundary.
    """
    if m.n != 2:
        raise ValueError("monotonicity_grid is defined for 2-item menus")
    a, b, c = m.prices
    base = {Fraction(0), a, b, c, c - a, c - b, a + b}
    axes: List[set] = [set(base), set(base)]
    if support is not None:
        for i, values in enumerate(support):
            axes[i] |= {Fraction(x) for x in values}
    grid_points: List[Valuation] = []
    per_axis: List[List[Fraction]] = []
    for axis in axes:
        coords = sorted(x for x in axis if x >= 0)
        gaps = [y - x for x, y in zip(coords, coords[1:]) if y > x]
        delta = offset if offset is not None else (min(gaps) / 2 if gaps else Fraction(1, 2))
        expanded = set(coords)
        for x in coords:
            expanded.add(x + delta)
            if x - delta >= 0:
                expanded.add(x - delta)
        expanded.add(max(coords) + 1 if coords else Fraction(1))
        per_axis.append(sorted(expanded))
    for x in per_axis[0]:
        for y in per_axis[1]:
            grid_points.append((x, y))
    return grid_points
