import random
from fractions import Fraction as F

import pytest

from menurev import menu2
from menurev.instances import random_fraction
from menurev.regions import (
    region_partition_2,
    render_ascii,
    render_svg,
    verify_against_buyer,
)


def _sample_points(m, rng, count):
    a, b, c = m.prices
    specials = sorted({F(0), a, b, c, c - a, c - b, a + b})
    pts = [(x, y) for x in specials for y in specials if x >= 0 and y >= 0]
    hi = max(c, a + b, F(1)) * 2
    for _ in range(count):
        pts.append((random_fraction(rng, int(hi) + 1, 6), random_fraction(rng, int(hi) + 1, 6)))
    # points sliding along each boundary segment
    for x in specials:
        if x < 0:
            continue
        for t in range(8):
            y = hi * F(t, 8)
            pts.append((x, y))
            pts.append((y, x))
    return pts


def test_kinds():
    assert region_partition_2(menu2(15, 45, 80)).kind == "supermodular"
    assert region_partition_2(menu2(27, 70, 85)).kind == "submodular"
    assert region_partition_2(menu2(2, 3, 5)).kind == "additive"


def test_requires_normalized_menu():
    with pytest.raises(ValueError, match="normalized"):
        region_partition_2(menu2(5, 1, 3))


def test_reference_points():
    supermod = region_partition_2(menu2(15, 45, 80))
    assert supermod.region_of((F(50), F(60))) == (1,)
    submod = region_partition_2(menu2(27, 70, 85))
    assert submod.region_of((F(27), F(0))) == (1,)  # boundary owned by the sale
    additive = region_partition_2(menu2(2, 3, 5))
    assert additive.region_of((F(2), F(3))) == (1, 2)
    assert additive.region_of((F(2), F(1))) == (1,)


def test_agreement_with_buyer_reference_menus(rng):
    # 10k points per menu, boundary segments included
    for m in (menu2(15, 45, 80), menu2(27, 70, 85), menu2(2, 3, 5)):
        part = region_partition_2(m)
        pts = _sample_points(m, rng, 10_000)
        assert len(pts) >= 10_000
        assert verify_against_buyer(part, pts) == []
    for m in (menu2(0, 0, 0), menu2(5, 5, 5), menu2(4, 4, 4)):
        part = region_partition_2(m)
        assert verify_against_buyer(part, _sample_points(m, rng, 400)) == []


def test_agreement_with_buyer_random_menus():
    rng = random.Random(20260809)
    total = 0
    for _ in range(60):
        a = random_fraction(rng, 20, 3)
        b = random_fraction(rng, 20, 3)
        c = max(a, b) + random_fraction(rng, 25, 3)
        part = region_partition_2(menu2(a, b, c))
        pts = _sample_points(part.menu, rng, 160)
        total += len(pts)
        assert verify_against_buyer(part, pts) == []
    assert total > 10_000


def test_corner_labels():
    part = region_partition_2(menu2(15, 45, 80))
    corners = dict(part.corners)
    assert corners["a"] == (F(15), F(0))
    assert corners["c-a"] == (F(0), F(65))
    assert corners["diag-high"] == (F(35), F(65))


def test_svg_has_one_polygon_per_region():
    svg = render_svg(region_partition_2(menu2(15, 45, 80)))
    assert svg.count("<polygon") == 4
    assert "c-b" in svg and "c-a" in svg
    svg_sub = render_svg(region_partition_2(menu2(27, 70, 85)))
    assert svg_sub.count("<polygon") == 4


def test_ascii_shapes():
    art = render_ascii(region_partition_2(menu2(2, 3, 5)), size=10)
    assert "B" in art and "0" in art and "1" in art and "2" in art
