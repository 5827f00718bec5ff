"""Reproduction targets: each runs a computation and compares it against the
bundled expected-value table, yielding one PASS/FAIL row per check.

Two table entries are knowingly contradicted by exact recomputation and are
kept as stated so the discrepancy stays visible (see the notes on the rows
named "false-name deviation near 2-decimal reference" and "submodular search
upper bound"); every other row is expected to pass.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional

from .buyer import expected_revenue
from .model import Menu, is_submodular, is_symmetric_menu
from .constructions import submodularize2, symmetrize2, three_halves_decomposition
from .continuous import er_cap_sweep, numeric_gap_er, solve_w, NumericParams
from .instances import (
    load_distribution,
    load_menu,
    load_randomized_menu,
    random_correlated_joint,
    random_product_instance,
    random_single_item,
    random_submodular_menu,
    random_supermodular_menu,
)
from .randomized import (
    best_false_name_deviation,
    false_name_utility,
    lp_optimal,
    menu_expected_payment,
    rchoice,
)
from .search import candidate_grid, search_optimal

TARGETS = (
    "example-4",
    "example-5",
    "example-6",
    "example-7",
    "theorem-3-1-property",
    "theorem-4-1-property",
    "lemma-5-property",
    "er-gap",
    "w-constant",
)


@dataclass(frozen=True)
class CheckRow:
    name: str
    expected: str
    actual: str
    ok: bool
    note: str = ""


def _row(name: str, expected, actual, ok: bool, note: str = "") -> CheckRow:
    return CheckRow(name, str(expected), str(actual), bool(ok), note)


def run_target(target: str, trials: int = 1000, seed: int = 20260809,
               params: Optional[NumericParams] = None, rule: str = "independent",
               k: int = 2) -> List[CheckRow]:
    if target not in TARGETS:
        raise KeyError(f"unknown reproduction target {target!r}; expected one of {TARGETS}")
    fn: Callable[..., List[CheckRow]] = _RUNNERS[target]
    if target in ("theorem-3-1-property", "theorem-4-1-property", "lemma-5-property"):
        return fn(trials=trials, seed=seed)
    if target == "er-gap":
        return fn(params=params)
    if target == "example-7":
        return fn(rule=rule, k=k)
    return fn()


def _example4() -> List[CheckRow]:
    dist = load_distribution("example4_distribution")
    rows = [_row("joint support size", 125, len(dist.atoms), len(dist.atoms) == 125)]
    named = {
        "unrestricted": ((6, 6, 6, 7, 7, 8, 9), Fraction(6293, 1000)),
        "symmetric": ((6, 6, 6, 7, 7, 7, 9), Fraction(6291, 1000)),
        "submodular": ((5, 6, 6, 7, 7, 8, 9), Fraction(6292, 1000)),
        "symmetric-and-submodular": ((5, 5, 5, 7, 7, 7, 9), Fraction(6288, 1000)),
    }
    for constraint, (prices, want) in named.items():
        menu = Menu.from_sequence(3, prices)
        rev = expected_revenue(menu, dist)
        in_class = {
            "unrestricted": True,
            "symmetric": is_symmetric_menu(menu),
            "submodular": is_submodular(menu),
            "symmetric-and-submodular": is_symmetric_menu(menu) and is_submodular(menu),
        }[constraint]
        rows.append(_row(f"named {constraint} menu {prices} evaluates and qualifies",
                         want, rev, rev == want and in_class))
    rows.append(_row("named unrestricted optimum is not submodular", False,
                     is_submodular(Menu.from_sequence(3, (6, 6, 6, 7, 7, 8, 9))),
                     not is_submodular(Menu.from_sequence(3, (6, 6, 6, 7, 7, 8, 9)))))
    grid = candidate_grid(dist, "integer-grid")
    for constraint, (_, want) in named.items():
        res = search_optimal(dist, constraint, grid)
        rows.append(_row(f"integer-grid optimum ({constraint})", want, res.revenue,
                         res.revenue == want))
    return rows


def _example5() -> List[CheckRow]:
    dist = load_distribution("example5_eps100")
    high = load_menu("example5_menu")  # (4, 4, 100)
    rows = []
    rev = expected_revenue(high, dist)
    rows.append(_row("revenue of (4,4,100)", "592/100", rev, rev == Fraction(592, 100)))
    additive, bundle_only = three_halves_decomposition(high)
    rev_add = expected_revenue(additive, dist)
    rev_bun = expected_revenue(bundle_only, dist)
    rows.append(_row("revenue of (4,4,8)", "408/100", rev_add, rev_add == Fraction(408, 100)))
    rows.append(_row("revenue of (192,192,192)", "384/100", rev_bun,
                     rev_bun == Fraction(384, 100)))
    margin = rev_add + rev_bun / 2 - rev
    rows.append(_row("decomposition margin", "8/100", margin, margin == Fraction(8, 100)))
    grid = candidate_grid(dist, "support-sums")
    drev = search_optimal(dist, "unrestricted", grid).revenue
    smdrev = search_optimal(dist, "submodular", grid).revenue
    rows.append(_row("searched drev >= 592/100", ">= 592/100", drev,
                     drev >= Fraction(592, 100)))
    rows.append(_row("submodular search upper bound", "<= 404/100", smdrev,
                     smdrev <= Fraction(404, 100),
                     note="reference bound is inconsistent with the table's own "
                          "value 408/100 for the in-grid submodular menu (4,4,8)"))
    rows.append(_row("drev/smdrev > 1.42", "> 1.42", drev / smdrev,
                     drev / smdrev > Fraction(142, 100)))
    return rows


def _example6() -> List[CheckRow]:
    dist = load_distribution("example6_eps10")
    asym = load_menu("example6_menu")  # (1, 10, 100)
    rows = []
    rev = expected_revenue(asym, dist)
    rows.append(_row("revenue of (1,10,100)", "61/25", rev, rev == Fraction(61, 25)))
    grid = candidate_grid(dist, "support-sums")
    sym = search_optimal(dist, "symmetric", grid).revenue
    rows.append(_row("symmetric search <= 21/10", "<= 21/10", sym, sym <= Fraction(21, 10)))
    return rows


def _example7(rule: str = "independent", k: int = 2) -> List[CheckRow]:
    menu = load_randomized_menu("example7_menu")
    dist = load_distribution("example7_distribution")
    v = (Fraction(46), Fraction(80))
    rows = []
    choice = rchoice(menu, v)
    rows.append(_row("truthful utility at (46,80)", "1152/1187", choice.utility,
                     choice.utility == Fraction(1152, 1187)))
    picks = _mirror_pair_picks(menu)
    deviation = false_name_utility(menu, v, picks, rule)
    rows.append(_row("two-pick deviation beats truthful", "> 1152/1187", deviation,
                     deviation > Fraction(1152, 1187)))
    rows.append(_row("false-name deviation near 2-decimal reference",
                     "within 0.01 of 1.46", float(deviation),
                     abs(float(deviation) - 1.46) <= 0.01,
                     note="exact two-pick utility is 27243584/15498659 ~ 1.7578; the "
                          "2-decimal reference follows from reusing the first pick's "
                          "item-1 probability for both picks"))
    _, best_u = best_false_name_deviation(menu, v, rule, k)
    rows.append(_row("best deviation beats truthful", "> 1152/1187", best_u,
                     best_u > choice.utility))
    lp = lp_optimal(dist)
    want = menu_expected_payment(menu, dist)
    rows.append(_row("LP revenue equals menu expected payment", want, lp.revenue,
                     lp.revenue == want))
    return rows


def _mirror_pair_picks(menu) -> List[int]:
    """Indices of the two mirrored fractional entries with the lowest payment."""
    paid = [(e.payment, i) for i, e in enumerate(menu.entries) if e.payment > 0]
    lowest = min(p for p, _ in paid)
    return [i for p, i in paid if p == lowest]


def _theorem31(trials: int = 1000, seed: int = 20260809) -> List[CheckRow]:
    rng = random.Random(seed)
    worst = None
    for _ in range(trials):
        d1, d2 = random_product_instance(rng)
        menu = random_supermodular_menu(rng)
        cert = submodularize2(menu, d1, d2)
        if worst is None or cert.margin < worst:
            worst = cert.margin
    return [_row(f"submodularization margin >= 0 on {trials} random product instances",
                 ">= 0", worst, worst >= 0)]


def _theorem41(trials: int = 1000, seed: int = 20260809) -> List[CheckRow]:
    rng = random.Random(seed)
    worst = None
    identity_checks = 0
    for _ in range(trials):
        f = random_single_item(rng)
        menu = random_submodular_menu(rng, require_asymmetric=True)
        cert = symmetrize2(menu, f)  # raises if the averaging identity fails
        if cert.branch == "c<=2a":
            identity_checks += 1
        if worst is None or cert.margin < worst:
            worst = cert.margin
    return [
        _row(f"symmetrization margin >= 0 on {trials} random IID instances",
             ">= 0", worst, worst >= 0),
        _row("averaging-identity branch exercised", "> 0", identity_checks,
             identity_checks > 0),
    ]


def _lemma5(trials: int = 1000, seed: int = 20260809) -> List[CheckRow]:
    rng = random.Random(seed)
    worst = None
    for _ in range(trials):
        dist = random_correlated_joint(rng)
        menu = random_supermodular_menu(rng)
        additive, bundle_only = three_halves_decomposition(menu)
        slack = (expected_revenue(additive, dist)
                 + expected_revenue(bundle_only, dist) / 2
                 - expected_revenue(menu, dist))
        if worst is None or slack < worst:
            worst = slack
    return [_row(f"additive + half bundle-only covers supermodular revenue "
                 f"({trials} correlated instances)", ">= 0", worst, worst >= 0)]


def _er_gap(params: Optional[NumericParams] = None) -> List[CheckRow]:
    params = params or NumericParams(cap=1e4, grid_points=2400)
    w = solve_w()
    report = numeric_gap_er(1.0, 1.0, params)
    rows = [
        _row("srev analytic", 2.0, report.srev, report.srev == 2.0),
        _row("brev within 1% of 2w", f"~{2 * w:.4f}", report.brev,
             abs(report.brev - 2 * w) <= 0.01 * 2 * w),
        _row("drev within tolerance of brev", f"+-{report.tolerance:.4f}",
             abs(report.drev - report.brev),
             abs(report.drev - report.brev) <= report.tolerance),
    ]
    sweep = er_cap_sweep(1.0, 1.0)
    ratios = [r.brev_over_srev for r in sweep]
    rows.append(_row("brev/srev climbs toward w across caps",
                     f"increasing, < {w:.4f}", [round(x, 5) for x in ratios],
                     all(x < y for x, y in zip(ratios, ratios[1:]))
                     and all(x < w for x in ratios)))
    return rows


def _w_constant() -> List[CheckRow]:
    import math
    w = solve_w()
    residual = abs((w - 1) * math.exp(w) - 1)
    return [
        _row("w in (1.2784, 1.2785)", "(1.2784, 1.2785)", w, 1.2784 < w < 1.2785),
        _row("defining-equation residual < 1e-12", "< 1e-12", residual, residual < 1e-12),
    ]


_RUNNERS: Dict[str, Callable[..., List[CheckRow]]] = {
    "example-4": _example4,
    "example-5": _example5,
    "example-6": _example6,
    "example-7": _example7,
    "theorem-3-1-property": _theorem31,
    "theorem-4-1-property": _theorem41,
    "lemma-5-property": _lemma5,
    "er-gap": _er_gap,
    "w-constant": _w_constant,
}
