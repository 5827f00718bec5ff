"""Exhaustive grid search for revenue-optimal menus under structural constraints.

The search is exact: results are reported as Fractions and the winning menu's
revenue is re-verified against the rational evaluator. Internally the engine
scales values and prices to int64 and evaluates menu blocks with numpy; when
atom probabilities have denominators too large for exact integer weights, the
block scores use float64 screening and every near-optimal candidate is
re-scored exactly before the winner is declared. Menus are enumerated in
lexicographic price order (singletons first, then pairs, then larger bundles)
and ties break toward the lexicographically smallest price vector.

Bundle-monotone pruning (p(S) <= p(T) for S within T) is applied only when the
candidate grids are closed under price monotonization, which holds for integer
grids; otherwise pruning is skipped so no grid optimum can be lost.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct
from typing import Callable, Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from .buyer import expected_revenue
from .model import (
    Bundle,
    JointDistribution,
    Menu,
    all_bundles,
    bundle_value,
    is_submodular,
    is_symmetric_menu,
)
from .rational import RationalLike, decimal_with_flag, format_rational, parse_nonnegative

GRID_MODES = ("integer-grid", "support-sums", "explicit")

CONSTRAINTS = (
    "unrestricted",
    "symmetric",
    "submodular",
    "symmetric-and-submodular",
    "additive",
    "bundle-only",
)
_CONSTRAINT_ALIASES = {"symmetric-submodular": "symmetric-and-submodular"}

_INT64_BUDGET = 1 << 62
_CELL_BUDGET = 6_000_000  # per evaluation chunk, int64 cells
_PURE_LIMIT = 500_000  # menu cap for the slow exact fallback
_WINDOW_CAP = 20_000


class SearchError(ValueError):
    pass


def canonical_constraint(name: str) -> str:
    resolved = _CONSTRAINT_ALIASES.get(name, name)
    if resolved not in CONSTRAINTS:
        raise SearchError(f"unknown constraint {name!r}; expected one of {CONSTRAINTS}")
    return resolved


@dataclass(frozen=True)
class CandidateGrid:
    """Per-bundle candidate price sets, in canonical bundle order, each sorted."""

    n: int
    mode: str
    prices: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self):
        if self.mode not in GRID_MODES:
            raise SearchError(f"unknown grid mode {self.mode!r}")
        if len(self.prices) != (1 << self.n) - 1:
            raise SearchError("grid must supply one price set per nonempty bundle")
        for b, ps in zip(all_bundles(self.n), self.prices):
            if not ps:
                raise SearchError(f"empty candidate set for bundle {b}")
            if list(ps) != sorted(set(ps)):
                raise SearchError(f"candidate set for bundle {b} must be sorted and duplicate-free")
            if ps[0] < 0:
                raise SearchError(f"negative candidate price for bundle {b}")

    def bundle_prices(self, bundle: Bundle) -> Tuple[Fraction, ...]:
        return self.prices[all_bundles(self.n).index(bundle)]


def candidate_grid(dist: JointDistribution, mode: str = "integer-grid",
                   explicit: Optional[Mapping[Iterable[int], Sequence[RationalLike]]] = None,
                   max_price: Optional[RationalLike] = None) -> CandidateGrid:
    """Build candidate price sets for every bundle.

    integer-grid: {0, 1, ..., ceil(max v(S))} per bundle; requires integer
    support values. support-sums: all sums of per-item support values (each
    item contributing one of its support values or 0). explicit: caller-given
    sets. `max_price` caps every bundle's candidates.
    """
    order = all_bundles(dist.n)
    cap = parse_nonnegative(max_price, "max_price") if max_price is not None else None
    sets: List[Tuple[Fraction, ...]] = []
    if mode == "integer-grid":
        for i in range(dist.n):
            for v in dist.support_values(i + 1):
                if v.denominator != 1:
                    raise SearchError(f"integer-grid requested but item {i + 1} has "
                                      f"non-integer support value {v}")
        for bundle in order:
            top = max(bundle_value(v, bundle) for v, _ in dist.atoms)
            hi = int(math.ceil(top))
            if cap is not None:
                hi = min(hi, int(cap))
            sets.append(tuple(Fraction(k) for k in range(hi + 1)))
    elif mode == "support-sums":
        supports = [tuple(dist.support_values(i + 1)) + (Fraction(0),) for i in range(dist.n)]
        for bundle in order:
            sums = {Fraction(0)}
            for combo in iproduct(*(supports[i - 1] for i in bundle)):
                sums.add(sum(combo, Fraction(0)))
            if cap is not None:
                sums = {s for s in sums if s <= cap} | {Fraction(0)}
            sets.append(tuple(sorted(sums)))
    elif mode == "explicit":
        if explicit is None:
            raise SearchError("explicit mode requires candidate sets")
        table = {tuple(sorted(set(b))): ps for b, ps in explicit.items()}
        for bundle in order:
            if bundle not in table:
                raise SearchError(f"explicit grid missing bundle {bundle}")
            ps = sorted({parse_nonnegative(p, f"grid price for {bundle}") for p in table[bundle]})
            if cap is not None:
                ps = [p for p in ps if p <= cap] or [Fraction(0)]
            sets.append(tuple(ps))
    else:
        raise SearchError(f"unknown grid mode {mode!r}")
    return CandidateGrid(dist.n, mode, tuple(sets))


@dataclass(frozen=True)
class SearchResult:
    best: Menu
    revenue: Fraction
    examined: int
    constraint: str
    grid_mode: str
    elapsed: float
    pruned: bool

    def to_json_dict(self) -> Dict[str, object]:
        dec = decimal_with_flag(self.revenue)
        return {
            "constraint": self.constraint,
            "grid": self.grid_mode,
            "menu": [format_rational(p) for p in self.best.prices],
            "revenue": format_rational(self.revenue),
            "revenue_decimal": dec,
            "menus_examined": self.examined,
            "wall_time_s": round(self.elapsed, 6),
        }


# ---------------------------------------------------------------------------
# Scaled instance
# ---------------------------------------------------------------------------

class _Instance:
    def __init__(self, dist: JointDistribution, grid: CandidateGrid):
        self.dist = dist
        self.grid = grid
        self.order = all_bundles(dist.n)
        denoms = {p.denominator for ps in grid.prices for p in ps}
        denoms |= {x.denominator for v, _ in dist.atoms for x in v}
        self.L = math.lcm(*denoms) if denoms else 1
        max_single = [int(ps[-1] * self.L) for ps, b in zip(grid.prices, self.order) if len(b) == 1]
        max_grid = max(int(ps[-1] * self.L) for ps in grid.prices)
        # additive menus price bundles at sums of single prices, which can
        # exceed every grid value, so K must cover them too
        self.K = max(max_grid, sum(max_single)) + 1
        max_val = max(
            (int(bundle_value(v, self.order[-1]) * self.L) for v, _ in dist.atoms), default=0)
        self.int_keys = (max_val + self.K + 1) * self.K < _INT64_BUDGET
        wden = math.lcm(*{p.denominator for _, p in dist.atoms})
        self.int_weights = self.int_keys and wden * self.K < _INT64_BUDGET
        self.W = wden if self.int_weights else None
        if self.int_keys:
            self.values = np.array(
                [[int(bundle_value(v, b) * self.L) for b in self.order] for v, _ in dist.atoms],
                dtype=np.int64)
        if self.int_weights:
            self.weights = np.array([int(p * self.W) for _, p in dist.atoms], dtype=np.int64)
        else:
            self.weights = np.array([float(p) for _, p in dist.atoms], dtype=np.float64)

    def scaled_grid(self, bundle_idx: int) -> np.ndarray:
        return np.array([int(p * self.L) for p in self.grid.prices[bundle_idx]], dtype=np.int64)

    def menu_from_scaled(self, row: Sequence[int]) -> Menu:
        return Menu(self.dist.n, tuple(Fraction(int(p), self.L) for p in row))


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------

def _monotone_closure_holds(grid: CandidateGrid) -> bool:
    """Grids closed under lowering a price to a superset bundle's price."""
    order = all_bundles(grid.n)
    sets = [set(ps) for ps in grid.prices]
    for i, s in enumerate(order):
        cap = max(grid.prices[i])
        ss = set(s)
        for j, t in enumerate(order):
            if ss < set(t):
                if any(p <= cap and p not in sets[i] for p in grid.prices[j]):
                    return False
    return True


def _axis_groups(inst: _Instance, constraint: str) -> Tuple[List[List[int]], List[np.ndarray], bool]:
    """Inner enumeration axes: (columns sharing each axis, axis candidate values).

    Returns (column groups, scaled candidate arrays, feasible). Columns are
    indices into the canonical bundle order, excluding singletons.
    """
    order = inst.order
    n = inst.dist.n
    higher = [i for i, b in enumerate(order) if len(b) > 1]
    if constraint in ("unrestricted", "submodular", "additive", "bundle-only"):
        groups = [[i] for i in higher]
        axes = [inst.scaled_grid(i) for i in higher]
        return groups, axes, True
    # symmetric variants share one axis per cardinality
    groups_by_size: Dict[int, List[int]] = {}
    for i in higher:
        groups_by_size.setdefault(len(order[i]), []).append(i)
    groups, axes = [], []
    for size in sorted(groups_by_size):
        cols = groups_by_size[size]
        shared = set(inst.grid.prices[cols[0]])
        for c in cols[1:]:
            shared &= set(inst.grid.prices[c])
        if not shared:
            return [], [], False
        groups.append(cols)
        axes.append(np.array(sorted(int(p * inst.L) for p in shared), dtype=np.int64))
    return groups, axes, True


def _single_combos(inst: _Instance, constraint: str) -> Iterator[Tuple[int, ...]]:
    n = inst.dist.n
    grids = [inst.scaled_grid(i) for i in range(n)]
    if constraint in ("symmetric", "symmetric-and-submodular") and n > 1:
        shared = set(grids[0].tolist())
        for g in grids[1:]:
            shared &= set(g.tolist())
        for q in sorted(shared):
            yield (q,) * n
        return
    if constraint == "bundle-only":
        # prices of all bundles equal the grand-bundle price; no free singles
        yield ()
        return
    for combo in iproduct(*(g.tolist() for g in grids)):
        yield combo


_INCOMPARABLE_CACHE: Dict[int, List[Tuple[int, int, int, int]]] = {}


def _incomparable_pairs(n: int) -> List[Tuple[int, int, int, int]]:
    """Index quadruples (i, j, i_and_j, i_or_j) for submodularity masks; -1 is empty."""
    if n in _INCOMPARABLE_CACHE:
        return _INCOMPARABLE_CACHE[n]
    order = all_bundles(n)
    index = {b: i for i, b in enumerate(order)}
    out = []
    for i, s in enumerate(order):
        ss = set(s)
        for j in range(i + 1, len(order)):
            ts = set(order[j])
            if ss <= ts or ts <= ss:
                continue
            inter = tuple(sorted(ss & ts))
            union = tuple(sorted(ss | ts))
            out.append((i, j, index[inter] if inter else -1, index[union]))
    _INCOMPARABLE_CACHE[n] = out
    return out


def _subset_pairs(n: int) -> List[Tuple[int, int]]:
    order = all_bundles(n)
    return [(i, j) for i, s in enumerate(order) for j, t in enumerate(order)
            if set(s) < set(t)]


def _enumerate_rows(inst: _Instance, constraint: str, prune: bool) -> Iterator[np.ndarray]:
    """Yield scaled menu rows (chunk, n_bundles) int64 in lexicographic order."""
    order = inst.order
    n = inst.dist.n
    n_bundles = len(order)

    if constraint == "bundle-only":
        grand = inst.scaled_grid(n_bundles - 1)
        rows = np.repeat(grand[:, None], n_bundles, axis=1)
        yield rows
        return

    if constraint == "additive":
        grids = [inst.scaled_grid(i).tolist() for i in range(n)]
        combos = np.array(list(iproduct(*grids)), dtype=np.int64).reshape(-1, n)
        rows = np.empty((combos.shape[0], n_bundles), dtype=np.int64)
        for i, b in enumerate(order):
            rows[:, i] = sum(combos[:, item - 1] for item in b)
        yield rows
        return

    groups, axes, feasible = _axis_groups(inst, constraint)
    if not feasible:
        return
    want_submodular = constraint in ("submodular", "symmetric-and-submodular")
    inc_pairs = _incomparable_pairs(n) if want_submodular else []
    sub_pairs = _subset_pairs(n) if prune else []

    mesh_cells = math.prod(len(a) for a in axes) if axes else 1
    if mesh_cells > 50_000_000:
        raise SearchError("candidate grid too large; supply a smaller explicit grid")

    for singles in _single_combos(inst, constraint):
        cols: List[object] = [0] * n_bundles
        for i in range(n):
            cols[i] = int(singles[i])
        if axes:
            mesh = np.meshgrid(*axes, indexing="ij")
        else:
            mesh = []
        for group, arr in zip(groups, mesh):
            for c in group:
                cols[c] = arr
        mask = np.ones(mesh[0].shape if mesh else (1,), dtype=bool)
        if prune:
            for i, j in sub_pairs:
                term = cols[j] >= cols[i] if (isinstance(cols[j], np.ndarray)
                                              or isinstance(cols[i], np.ndarray)) else \
                    (cols[j] >= cols[i])
                mask &= term
        if want_submodular:
            for i, j, k, u in inc_pairs:
                pk = 0 if k == -1 else cols[k]
                mask &= (cols[i] + cols[j]) >= (pk + cols[u])
        if not mask.any():
            continue
        idx = np.nonzero(mask.ravel())[0]
        rows = np.empty((idx.size, n_bundles), dtype=np.int64)
        for c in range(n_bundles):
            col = cols[c]
            if isinstance(col, np.ndarray):
                rows[:, c] = col.ravel()[idx]
            else:
                rows[:, c] = col
        yield rows


def _enumerate_pure(grid: CandidateGrid, constraint: str, prune: bool) -> Iterator[Tuple[Fraction, ...]]:
    """Slow exact enumeration used when int64 scaling would overflow or n > 3."""
    order = all_bundles(grid.n)
    n_bundles = len(order)
    pred = _constraint_predicate(constraint, grid.n)
    sub_pairs = _subset_pairs(grid.n) if prune else []

    if constraint == "bundle-only":
        for q in grid.prices[-1]:
            yield tuple(q for _ in range(n_bundles))
        return
    if constraint == "additive":
        singles = [grid.prices[i] for i in range(grid.n)]
        for combo in iproduct(*singles):
            yield tuple(sum((combo[i - 1] for i in b), Fraction(0)) for b in order)
        return

    if constraint in ("symmetric", "symmetric-and-submodular"):
        by_size: Dict[int, List[int]] = {}
        for i, b in enumerate(order):
            by_size.setdefault(len(b), []).append(i)
        shared = []
        for size in sorted(by_size):
            s = set(grid.prices[by_size[size][0]])
            for c in by_size[size][1:]:
                s &= set(grid.prices[c])
            if not s:
                return
            shared.append(sorted(s))
        for combo in iproduct(*shared):
            row = [Fraction(0)] * n_bundles
            for size_idx, size in enumerate(sorted(by_size)):
                for c in by_size[size]:
                    row[c] = combo[size_idx]
            menu = tuple(row)
            if all(menu[j] >= menu[i] for i, j in sub_pairs) and pred(menu):
                yield menu
        return

    for combo in iproduct(*grid.prices):
        if all(combo[j] >= combo[i] for i, j in sub_pairs) and pred(combo):
            yield combo


def _constraint_predicate(constraint: str, n: int) -> Callable[[Tuple[Fraction, ...]], bool]:
    if constraint == "unrestricted":
        return lambda prices: True
    if constraint == "submodular":
        return lambda prices: is_submodular(Menu(n, prices))
    if constraint == "symmetric":
        return lambda prices: is_symmetric_menu(Menu(n, prices))
    if constraint == "symmetric-and-submodular":
        return lambda prices: (is_symmetric_menu(Menu(n, prices))
                               and is_submodular(Menu(n, prices)))
    if constraint == "additive":
        return lambda prices: True
    if constraint == "bundle-only":
        return lambda prices: True
    raise SearchError(f"unknown constraint {constraint!r}")


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------

def _eval_chunk(rows: np.ndarray, values: np.ndarray, weights: np.ndarray, k: int,
                int_scores: bool) -> np.ndarray:
    util = values[None, :, :] - rows[:, None, :]
    util *= k
    util += rows[:, None, :]
    key = util.max(axis=2)
    np.maximum(key, 0, out=key)
    pay = np.mod(key, k)
    if int_scores:
        return pay @ weights
    return pay.astype(np.float64) @ weights


def search_optimal(dist: JointDistribution, constraint: str, grid: CandidateGrid,
                   prune: bool = True) -> SearchResult:
    """Maximize exact expected revenue over all constraint-satisfying grid menus."""
    t0 = time.perf_counter()
    constraint = canonical_constraint(constraint)
    if grid.n != dist.n:
        raise SearchError(f"grid is for {grid.n} items but distribution has {dist.n}")

    inst = _Instance(dist, grid)
    effective_prune = prune and _monotone_closure_holds(grid)

    if not inst.int_keys or dist.n > 3:
        result = _search_pure(dist, constraint, grid, effective_prune)
    else:
        result = _search_vectorized(inst, constraint, effective_prune)
    best_menu, best_rev, examined = result
    if best_menu is None:
        raise SearchError(f"empty feasible set under constraint {constraint!r}")
    # the rational evaluator is the final authority on the reported revenue
    check = expected_revenue(best_menu, dist)
    if check != best_rev:
        raise AssertionError(f"internal revenue mismatch: {check} != {best_rev}")
    return SearchResult(best_menu, best_rev, examined, constraint, grid.mode,
                        time.perf_counter() - t0, effective_prune)


def _search_pure(dist, constraint, grid, prune):
    best_menu, best_rev, examined = None, None, 0
    for prices in _enumerate_pure(grid, constraint, prune):
        examined += 1
        if examined > _PURE_LIMIT:
            raise SearchError("search space too large for the exact fallback path; "
                              "reduce the grid")
        menu = Menu(dist.n, prices)
        rev = expected_revenue(menu, dist)
        if best_rev is None or rev > best_rev:
            best_menu, best_rev = menu, rev
    return best_menu, best_rev, examined


def _search_vectorized(inst: _Instance, constraint: str, prune: bool):
    values, weights, k = inst.values, inst.weights, inst.K
    int_scores = inst.int_weights
    n_types, n_bundles = values.shape
    chunk_rows = max(1, _CELL_BUDGET // (n_types * n_bundles))

    examined = 0
    best_score = None
    best_row: Optional[np.ndarray] = None
    window: List[Tuple[float, Tuple[int, ...]]] = []

    need_pred = constraint in ("submodular", "symmetric-and-submodular")

    for rows in _enumerate_rows(inst, constraint, prune):
        for lo in range(0, rows.shape[0], chunk_rows):
            chunk = rows[lo:lo + chunk_rows]
            scores = _eval_chunk(chunk, values, weights, k, int_scores)
            examined += chunk.shape[0]
            if int_scores:
                i = int(np.argmax(scores))
                s = int(scores[i])
                if best_score is None or s > best_score:
                    best_score, best_row = s, chunk[i].copy()
            else:
                mx = float(scores.max())
                tol = 1e-9 * (abs(mx) + 1.0)
                if best_score is None or mx > best_score:
                    best_score = mx
                keep = np.nonzero(scores >= mx - tol)[0]
                for i in keep.tolist():
                    window.append((float(scores[i]), tuple(int(x) for x in chunk[i])))
                if len(window) > _WINDOW_CAP:
                    cut = best_score - 1e-9 * (abs(best_score) + 1.0)
                    window = [w for w in window if w[0] >= cut]
                    if len(window) > _WINDOW_CAP:
                        window.sort(key=lambda w: (-w[0], w[1]))
                        window = window[:_WINDOW_CAP // 2]

    if examined == 0:
        return None, None, 0

    if int_scores:
        menu = inst.menu_from_scaled(best_row)
        rev = Fraction(best_score, inst.W * inst.L)
        return menu, rev, examined

    # float screening: exact re-evaluation of every near-best candidate
    cut = best_score - 1e-9 * (abs(best_score) + 1.0)
    cands = sorted({row for s, row in window if s >= cut})
    best_menu, best_rev = None, None
    for row in cands:
        menu = inst.menu_from_scaled(row)
        rev = expected_revenue(menu, inst.dist)
        if best_rev is None or rev > best_rev:
            best_menu, best_rev = menu, rev
    return best_menu, best_rev, examined


# ---------------------------------------------------------------------------
# Gap report
# ---------------------------------------------------------------------------

GAP_FIELDS = ("drev", "srev", "brev", "smdrev", "symdrev")
_GAP_CONSTRAINT = {
    "drev": "unrestricted",
    "srev": "additive",
    "brev": "bundle-only",
    "smdrev": "submodular",
    "symdrev": "symmetric",
}


@dataclass(frozen=True)
class GapReport:
    results: Dict[str, SearchResult]
    ratios: Dict[str, Fraction]

    def to_json_dict(self) -> Dict[str, object]:
        out: Dict[str, object] = {}
        for name in GAP_FIELDS:
            out[name] = self.results[name].to_json_dict()
        out["ratios"] = {
            key: {"exact": format_rational(q), "decimal": decimal_with_flag(q)}
            for key, q in sorted(self.ratios.items())
        }
        return out


def gap_report(dist: JointDistribution, grid: CandidateGrid) -> GapReport:
    """Optimal revenue per constraint class plus all pairwise revenue ratios."""
    results = {name: search_optimal(dist, _GAP_CONSTRAINT[name], grid)
               for name in GAP_FIELDS}
    ratios: Dict[str, Fraction] = {}
    for a in GAP_FIELDS:
        for b in GAP_FIELDS:
            if a != b and results[b].revenue != 0:
                ratios[f"{a}/{b}"] = results[a].revenue / results[b].revenue
    return GapReport(results, ratios)
