"""Menu transformations that never lose revenue, with runtime-checked certificates.

Each construction returns a certificate recording the branch taken and the
exact revenues involved; the dominance conclusion is asserted at construction
time so a falsifying instance cannot pass silently.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Sequence, Tuple

from .buyer import expected_revenue
from .model import (
    JointDistribution,
    Menu,
    SingleItemDistribution,
    menu2,
    normalize,
    product,
)
from .rational import format_rational


class CertificateError(RuntimeError):
    """Raised when a construction's dominance claim fails; carries full diagnostics."""


@dataclass(frozen=True)
class ConstructionCertificate:
    input_menu: Menu
    outputs: Tuple[Menu, ...]
    best: Menu
    branch: str
    input_revenue: Fraction
    output_revenues: Tuple[Fraction, ...]

    @property
    def margin(self) -> Fraction:
        return max(self.output_revenues) - self.input_revenue

    def to_json_dict(self) -> Dict[str, Any]:
        return {
            "branch": self.branch,
            "input": {"prices": [format_rational(p) for p in self.input_menu.prices],
                      "revenue": format_rational(self.input_revenue)},
            "candidates": [
                {"prices": [format_rational(p) for p in m.prices],
                 "revenue": format_rational(r)}
                for m, r in zip(self.outputs, self.output_revenues)
            ],
            "best": [format_rational(p) for p in self.best.prices],
            "margin": format_rational(self.margin),
        }


def _certificate(branch: str, m: Menu, outputs: Sequence[Menu],
                 dist: JointDistribution, require_each: bool = False) -> ConstructionCertificate:
    base = expected_revenue(m, dist)
    revs = tuple(expected_revenue(o, dist) for o in outputs)
    if require_each:
        bad = [(o, r) for o, r in zip(outputs, revs) if r < base]
        if bad:
            raise CertificateError(
                f"branch {branch!r}: output {bad[0][0].prices} earns {bad[0][1]} "
                f"< input {m.prices} earning {base}")
    if max(revs) < base:
        raise CertificateError(
            f"branch {branch!r}: no candidate beats input {m.prices} "
            f"(input revenue {base}, candidates {list(revs)})")
    best_idx = max(range(len(revs)), key=lambda i: (revs[i], -i))
    return ConstructionCertificate(m, tuple(outputs), outputs[best_idx], branch, base, revs)


def submodularize2(m: Menu, d1: SingleItemDistribution,
                   d2: SingleItemDistribution) -> ConstructionCertificate:
    """Replace a supermodular 2-item menu by an additive one that earns at least
    as much under the independent product d1 x d2.

    With item prices relabeled so a <= b and pair price c > a+b, the additive
    menu (a, b, a+b) wins when

        Pr[a <= v1 < c-b] * a  >=  Pr[v1 >= c-b] * (c - (a+b)),

    and the additive menu (c-b, b, c) wins otherwise; ties take the first
    branch. Already-submodular menus pass through unchanged.
    """
    if m.n != 2:
        raise ValueError("submodularize2 is defined for 2-item menus")
    dist = product([d1, d2])
    a, b, c = m.prices
    if c <= a + b:
        return _certificate("already-submodular", m, [m], dist, require_each=True)

    swapped = a > b
    if swapped:
        d1 = d2
        a, b = b, a

    lhs = d1.prob_in(a, c - b) * a
    rhs = d1.tail(c - b) * (c - (a + b))
    if lhs >= rhs:
        branch, out = "item-prices", menu2(a, b, a + b)
    else:
        branch, out = "bundle-margin", menu2(c - b, b, c)
    if swapped:
        out = out.swap2()
    return _certificate(branch, m, [out], dist, require_each=True)


def symmetrize2(m: Menu, f: SingleItemDistribution) -> ConstructionCertificate:
    """Replace an asymmetric 2-item menu by a symmetric one that earns at least
    as much when both items are drawn i.i.d. from f.

    The menu is normalized and, if supermodular, submodularized first. With
    a < b <= c <= a+b the branches are:

      * c <= 2a: the better of (a,a,c) and (b,b,c); their revenues average to
        the asymmetric menu's revenue exactly, which is asserted.
      * c > 2a and 2a*Pr[a <= v < c-a] >= (c-2a)*Pr[v >= c-a]: the better of
        (b,b,c) and (a,a,2a).
      * c > 2a otherwise: the better of (b,b,c) and (c-a,c-a,2c-2a).
    """
    if m.n != 2:
        raise ValueError("symmetrize2 is defined for 2-item menus")
    dist = product([f, f])
    base_rev = expected_revenue(m, dist)

    if m.a == m.b:
        return _certificate("identity", m, [m], dist, require_each=True)

    work = normalize(m)
    if work.c > work.a + work.b:
        work = submodularize2(work, f, f).best
    if work.a == work.b:
        cert = _certificate("normalized-symmetric", work, [work], dist, require_each=True)
    else:
        if work.a > work.b:
            work = work.swap2()
        a, b, c = work.prices
        two_rev = 2 * expected_revenue(work, dist)
        if c <= 2 * a:
            cands = [menu2(a, a, c), menu2(b, b, c)]
            branch = "c<=2a"
            revs = [expected_revenue(x, dist) for x in cands]
            if revs[0] + revs[1] != two_rev:
                raise CertificateError(
                    f"averaging identity failed for {work.prices}: "
                    f"{revs[0]} + {revs[1]} != 2 * {two_rev / 2}")
        else:
            lhs = 2 * a * f.prob_in(a, c - a)
            rhs = (c - 2 * a) * f.tail(c - a)
            if lhs >= rhs:
                cands = [menu2(b, b, c), menu2(a, a, 2 * a)]
                branch = "c>2a-low"
            else:
                cands = [menu2(b, b, c), menu2(c - a, c - a, 2 * (c - a))]
                branch = "c>2a-high"
            revs = [expected_revenue(x, dist) for x in cands]
            if revs[0] + revs[1] < two_rev:
                raise CertificateError(
                    f"branch {branch!r}: {cands[0].prices} + {cands[1].prices} earn "
                    f"{revs[0]} + {revs[1]} < twice the revenue of {work.prices}")
        cert = _certificate(branch, work, cands, dist)

    # The chain normalize -> submodularize -> symmetrize may only gain revenue,
    # so certify against the original menu as well.
    if max(cert.output_revenues) < base_rev:
        raise CertificateError(
            f"symmetrized candidates earn {max(cert.output_revenues)} "
            f"< original menu revenue {base_rev}")
    return ConstructionCertificate(m, cert.outputs, cert.best, cert.branch,
                                   base_rev, cert.output_revenues)


def three_halves_decomposition(m: Menu) -> Tuple[Menu, Menu]:
    """Split a strictly supermodular 2-item menu into an additive menu and a
    bundle-only menu at price 2*c - a - b; for every joint distribution the
    input's revenue is at most the additive revenue plus half the bundle-only
    revenue.
    """
    if m.n != 2:
        raise ValueError("three_halves_decomposition is defined for 2-item menus")
    a, b, c = m.prices
    if c <= a + b:
        raise ValueError(f"menu {m.prices} is not strictly supermodular")
    bundle_price = 2 * c - a - b
    additive = menu2(a, b, a + b)
    bundle_only = menu2(bundle_price, bundle_price, bundle_price)
    return additive, bundle_only


def verify_dominance(candidates: Sequence[Menu], baseline: Menu,
                     dist: JointDistribution) -> Tuple[Menu, Fraction]:
    """Best candidate by expected revenue and its margin over the baseline."""
    if not candidates:
        raise ValueError("empty candidate list")
    revs = [expected_revenue(c, dist) for c in candidates]
    best_idx = max(range(len(revs)), key=lambda i: (revs[i], -i))
    margin = revs[best_idx] - expected_revenue(baseline, dist)
    return candidates[best_idx], margin
