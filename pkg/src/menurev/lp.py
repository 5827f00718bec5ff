"""Linear programming with exact rational results.

Two routes to an optimal basic solution of  max c.x  s.t.  A x <= b, x in box:

* a dense tableau simplex over Fractions (Bland's rule), for small systems;
* a float solve (scipy HiGHS) used only to locate the optimal active set,
  followed by an exact rational solve of that vertex, exact feasibility
  checking of every constraint, and an exact dual certificate attempt.

Both produce exact rational solutions; the second also reports whether the
optimality certificate closed.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import linprog


class LPError(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# Exact dense simplex:  max c.x  s.t.  A x <= b, x >= 0, with b >= 0
# ---------------------------------------------------------------------------

def simplex_max(c: Sequence[Fraction], a_ub: Sequence[Sequence[Fraction]],
                b_ub: Sequence[Fraction], max_pivots: int = 20000
                ) -> Tuple[List[Fraction], Fraction]:
    """Textbook tableau simplex with Bland's rule; requires b_ub >= 0 so the
    all-slack basis is feasible. Returns (x, objective)."""
    m, n = len(a_ub), len(c)
    if any(b < 0 for b in b_ub):
        raise LPError("simplex_max requires nonnegative right-hand sides")
    tab = [[Fraction(x) for x in row] + [Fraction(0)] * m + [Fraction(b_ub[i])]
           for i, row in enumerate(a_ub)]
    for i in range(m):
        tab[i][n + i] = Fraction(1)
    cost = [-Fraction(x) for x in c] + [Fraction(0)] * (m + 1)
    basis = list(range(n, n + m))

    for _ in range(max_pivots):
        col = next((j for j in range(n + m) if cost[j] < 0), None)
        if col is None:
            x = [Fraction(0)] * n
            for i, bv in enumerate(basis):
                if bv < n:
                    x[bv] = tab[i][-1]
            return x, cost[-1]
        ratios = [(tab[i][-1] / tab[i][col], basis[i], i)
                  for i in range(m) if tab[i][col] > 0]
        if not ratios:
            raise LPError("LP is unbounded")
        _, _, row = min(ratios)  # min ratio, then lowest basis index: Bland
        piv = tab[row][col]
        tab[row] = [v / piv for v in tab[row]]
        for i in range(m):
            if i != row and tab[i][col] != 0:
                f = tab[i][col]
                tab[i] = [v - f * w for v, w in zip(tab[i], tab[row])]
        if cost[col] != 0:
            f = cost[col]
            cost = [v - f * w for v, w in zip(cost, tab[row])]
        basis[row] = col
    raise LPError("pivot limit exceeded")


# ---------------------------------------------------------------------------
# Exact linear algebra helpers
# ---------------------------------------------------------------------------

def _solve_square(rows: List[List[Fraction]], rhs: List[Fraction]) -> Optional[List[Fraction]]:
    """Gaussian elimination over Fractions; None if the matrix is singular."""
    n = len(rows)
    aug = [list(rows[i]) + [rhs[i]] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [v - f * w for v, w in zip(aug[r], aug[col])]
    return [aug[i][n] for i in range(n)]


def _independent_subset(rows: List[List[Fraction]], need: int) -> List[int]:
    """Indices of up to `need` linearly independent rows, scanned in order."""
    chosen: List[int] = []
    workspace: List[List[Fraction]] = []
    pivots: List[int] = []
    width = len(rows[0]) if rows else 0
    for idx, row in enumerate(rows):
        vec = list(row)
        for w, pcol in zip(workspace, pivots):
            if vec[pcol] != 0:
                f = vec[pcol]
                vec = [v - f * u for v, u in zip(vec, w)]
        pcol = next((j for j in range(width) if vec[j] != 0), None)
        if pcol is None:
            continue
        inv = 1 / vec[pcol]
        workspace.append([v * inv for v in vec])
        pivots.append(pcol)
        chosen.append(idx)
        if len(chosen) == need:
            break
    return chosen


@dataclass
class VertexResult:
    x: List[Fraction]
    objective: Fraction
    certified: bool


def certified_vertex(c: List[Fraction], rows: List[List[Fraction]], rhs: List[Fraction],
                     float_hint: Optional[np.ndarray] = None,
                     duals_hint: Optional[np.ndarray] = None,
                     feas_tol: float = 1e-7) -> VertexResult:
    """Exact optimal vertex of  max c.x  s.t.  rows[i].x >= rhs[i].

    A float LP locates the optimum; the active rows there are rank-filtered
    exactly (rows with larger float duals first), the resulting square system
    is solved over Fractions, and every constraint is re-checked exactly.
    A dual solve on the same basis yields the optimality certificate when all
    multipliers are nonnegative.
    """
    n = len(c)
    a = np.array([[float(v) for v in row] for row in rows])
    b = np.array([float(v) for v in rhs])
    if float_hint is None:
        res = linprog(c=-np.array([float(v) for v in c]), A_ub=-a, b_ub=-b,
                      bounds=[(None, None)] * n, method="highs")
        if not res.success:
            raise LPError(f"float LP failed: {res.message}")
        float_hint = res.x
        duals_hint = res.ineqlin.marginals if hasattr(res, "ineqlin") else None
    resid = a @ float_hint - b
    scale = 1.0 + np.abs(b)
    tight = [i for i in range(len(rows)) if resid[i] <= feas_tol * scale[i]]
    if duals_hint is not None:
        tight.sort(key=lambda i: -abs(float(duals_hint[i])))

    best: Optional[VertexResult] = None
    candidates = list(tight)
    for _ in range(12):
        sel = _independent_subset([rows[i] for i in candidates], n)
        if len(sel) < n:
            break
        basis = [candidates[i] for i in sel]
        x = _solve_square([rows[i] for i in basis], [rhs[i] for i in basis])
        if x is None:
            break
        if any(sum(r * v for r, v in zip(rows[i], x)) < rhs[i] for i in range(len(rows))):
            break
        objective = sum(ci * xi for ci, xi in zip(c, x))
        # KKT for max c.x over A x >= b: c + A^T y = 0 with y >= 0 on tight
        # rows; nonnegative multipliers close the certificate, otherwise
        # purify by dropping the worst row and re-selecting
        bt = [[rows[basis[r]][j] for r in range(n)] for j in range(n)]
        y = _solve_square(bt, [-v for v in c])
        if best is None:
            best = VertexResult(x, objective, False)
        if y is not None and all(v >= 0 for v in y):
            return VertexResult(x, objective, True)
        if y is None:
            break
        worst = min(range(n), key=lambda r: y[r])
        candidates = [i for i in candidates if i != basis[worst]]
    if best is None:
        raise LPError("could not resolve an exact vertex from the float optimum")
    return best
