"""Valuation-space partition induced by a 2-item menu, plus SVG/ASCII rendering.

The four closed regions below are derived from the menu geometry alone; they
must agree pointwise with buyer_choice, which the test suite checks on dense
random grids including boundary points.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .buyer import buyer_choice
from .model import Bundle, Menu, Valuation, is_normalized2

# A half-plane constraint (a1, a2, op, rhs) means  a1*v1 + a2*v2  op  rhs,
# with op one of ">=", "<=".
HalfPlane = Tuple[Fraction, Fraction, str, Fraction]

_F0 = Fraction(0)
Point = Tuple[Fraction, Fraction]


def _hp(a1, a2, op, rhs) -> HalfPlane:
    return (Fraction(a1), Fraction(a2), op, Fraction(rhs))


def _satisfies(hp: HalfPlane, v: Valuation) -> bool:
    lhs = hp[0] * v[0] + hp[1] * v[1]
    return lhs >= hp[3] if hp[2] == ">=" else lhs <= hp[3]


@dataclass(frozen=True)
class RegionPartition2:
    """Partition of the nonnegative quadrant into the four purchase regions.

    Boundary points belong to the neighboring region with the higher payment
    (then the larger bundle, then lexicographic order), matching the buyer's
    tie-breaking.
    """

    menu: Menu
    kind: str  # "submodular" | "supermodular" | "additive"
    corners: Tuple[Tuple[str, Point], ...]
    constraints: Dict[Bundle, Tuple[HalfPlane, ...]]

    def region_of(self, v: Valuation) -> Bundle:
        for bundle in self._priority():
            if all(_satisfies(hp, v) for hp in self.constraints[bundle]):
                return bundle
        return ()

    def _priority(self) -> List[Bundle]:
        price = self.menu.as_dict()
        price[()] = _F0
        order = [(1, 2), (1,), (2,), ()]
        order.sort(key=lambda b: (-price[b], -len(b), b))
        return order

    def polygons(self, frame: Fraction) -> Dict[Bundle, List[Point]]:
        """Closed polygon outline of each region clipped to [0, frame]^2."""
        a, b, c = self.menu.prices
        h = frame

        def pt(x, y) -> Point:
            return (min(Fraction(x), h), min(Fraction(y), h))

        if self.kind == "supermodular":
            return {
                (): [pt(0, 0), pt(a, 0), pt(a, b), pt(0, b)],
                (1,): [pt(a, 0), pt(h, 0), pt(h, c - a), pt(c - b, c - a), pt(a, b)],
                (2,): [pt(0, b), pt(a, b), pt(c - b, c - a), pt(c - b, h), pt(0, h)],
                (1, 2): [pt(c - b, c - a), pt(h, c - a), pt(h, h), pt(c - b, h)],
            }
        if self.kind == "submodular":
            return {
                (): [pt(0, 0), pt(a, 0), pt(a, c - a), pt(c - b, b), pt(0, b)],
                (1,): [pt(a, 0), pt(h, 0), pt(h, c - a), pt(a, c - a)],
                (2,): [pt(0, b), pt(c - b, b), pt(c - b, h), pt(0, h)],
                (1, 2): [pt(c - b, h), pt(c - b, b), pt(a, c - a), pt(h, c - a), pt(h, h)],
            }
        return {
            (): [pt(0, 0), pt(a, 0), pt(a, b), pt(0, b)],
            (1,): [pt(a, 0), pt(h, 0), pt(h, b), pt(a, b)],
            (2,): [pt(0, b), pt(a, b), pt(a, h), pt(0, h)],
            (1, 2): [pt(a, b), pt(h, b), pt(h, h), pt(a, h)],
        }


def region_partition_2(m: Menu) -> RegionPartition2:
    if m.n != 2:
        raise ValueError("region geometry is defined for 2-item menus")
    if not is_normalized2(m):
        raise ValueError("menu must be normalized (pair price >= each item price)")
    a, b, c = m.prices
    if c > a + b:
        kind = "supermodular"
    elif c < a + b:
        kind = "submodular"
    else:
        kind = "additive"

    constraints: Dict[Bundle, Tuple[HalfPlane, ...]] = {
        (1, 2): (_hp(1, 1, ">=", c), _hp(1, 0, ">=", c - b), _hp(0, 1, ">=", c - a)),
        (1,): (_hp(1, 0, ">=", a), _hp(0, 1, "<=", c - a), _hp(-1, 1, "<=", b - a)),
        (2,): (_hp(0, 1, ">=", b), _hp(1, 0, "<=", c - b), _hp(1, -1, "<=", a - b)),
        (): (_hp(1, 0, "<=", a), _hp(0, 1, "<=", b), _hp(1, 1, "<=", c)),
    }

    if kind == "supermodular":
        corners = (
            ("a", (a, _F0)),
            ("b", (_F0, b)),
            ("diag-low", (a, b)),
            ("diag-high", (c - b, c - a)),
            ("c-b", (c - b, _F0)),
            ("c-a", (_F0, c - a)),
        )
    elif kind == "submodular":
        corners = (
            ("a", (a, _F0)),
            ("b", (_F0, b)),
            ("diag-low", (a, c - a)),
            ("diag-high", (c - b, b)),
            ("c-b", (c - b, _F0)),
            ("c-a", (_F0, c - a)),
        )
    else:
        corners = (
            ("a", (a, _F0)),
            ("b", (_F0, b)),
            ("corner", (a, b)),
        )
    return RegionPartition2(m, kind, corners, constraints)


def verify_against_buyer(part: RegionPartition2, points: Sequence[Valuation]) -> List[Valuation]:
    """Return the points where the geometric region disagrees with buyer_choice."""
    return [v for v in points if part.region_of(v) != buyer_choice(part.menu, v).bundle]


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------

_REGION_LABELS = {(): "0", (1,): "1", (2,): "2", (1, 2): "B"}
_REGION_COLORS = {(): "#f5f5f5", (1,): "#9ecae1", (2,): "#a1d99b", (1, 2): "#fdae6b"}


def _frame(part: RegionPartition2) -> Fraction:
    a, b, c = part.menu.prices
    hi = max(a, b, c - a, c - b, Fraction(1))
    return hi * Fraction(5, 4)


def _centroid(poly: List[Point]) -> Point:
    n = len(poly)
    return (sum(p[0] for p in poly) / n, sum(p[1] for p in poly) / n)


def render_svg(part: RegionPartition2, width: int = 420) -> str:
    """Standalone SVG: one polygon per region, with the a / b / c-a / c-b marks."""
    frame = _frame(part)
    scale = Fraction(width) / frame
    margin = 48
    total = width + 2 * margin

    def sx(x: Fraction) -> float:
        return float(margin + x * scale)

    def sy(y: Fraction) -> float:
        return float(margin + width - y * scale)

    parts: List[str] = []
    for bundle, poly in part.polygons(frame).items():
        pts = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in poly)
        parts.append(f'<polygon points="{pts}" fill="{_REGION_COLORS[bundle]}" '
                     f'stroke="black" stroke-width="1"/>')
        cx, cy = _centroid(poly)
        parts.append(f'<text x="{sx(cx):.2f}" y="{sy(cy):.2f}" text-anchor="middle" '
                     f'font-size="15">{_REGION_LABELS[bundle]}</text>')

    a, b, c = part.menu.prices
    marks = [("a", a, "x"), ("c-b", c - b, "x"), ("b", b, "y"), ("c-a", c - a, "y")]
    seen = set()
    for name, coord, axis in marks:
        if not (0 <= coord <= frame) or (axis, coord) in seen:
            continue
        seen.add((axis, coord))
        if axis == "x":
            parts.append(f'<line x1="{sx(coord):.2f}" y1="{sy(_F0):.2f}" '
                         f'x2="{sx(coord):.2f}" y2="{sy(_F0) + 6:.2f}" stroke="black"/>')
            parts.append(f'<text x="{sx(coord):.2f}" y="{sy(_F0) + 20:.2f}" '
                         f'text-anchor="middle" font-size="12">{name}</text>')
        else:
            parts.append(f'<line x1="{sx(_F0):.2f}" y1="{sy(coord):.2f}" '
                         f'x2="{sx(_F0) - 6:.2f}" y2="{sy(coord):.2f}" stroke="black"/>')
            parts.append(f'<text x="{sx(_F0) - 9:.2f}" y="{sy(coord) + 4:.2f}" '
                         f'text-anchor="end" font-size="12">{name}</text>')

    title = f"menu ({a}, {b}, {c}) - {part.kind}"
    key = (f'<text x="{margin}" y="{total - 12}" font-size="12">'
           f"0 = no sale, 1 = item 1, 2 = item 2, B = both</text>")
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{total}" height="{total}" '
        f'viewBox="0 0 {total} {total}">\n'
        f"<title>{title}</title>\n" + "\n".join(parts) + "\n" + key + "\n</svg>\n"
    )


def render_ascii(part: RegionPartition2, size: int = 24) -> str:
    frame = _frame(part)
    cell = frame / size
    rows = []
    for j in range(size - 1, -1, -1):
        row = []
        for i in range(size):
            mid = ((i + Fraction(1, 2)) * cell, (j + Fraction(1, 2)) * cell)
            row.append(_REGION_LABELS[part.region_of(mid)])
        rows.append("".join(row))
    a, b, c = part.menu.prices
    header = f"menu ({a}, {b}, {c})  [{part.kind}]  frame [0, {frame}]^2"
    return header + "\n" + "\n".join(rows) + "\n"
