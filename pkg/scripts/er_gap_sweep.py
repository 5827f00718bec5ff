#!/usr/bin/env python3
"""Sweep the equal-revenue discretization across caps and print the
bundle/separate revenue ratio converging toward w."""
import argparse

from menurev.continuous import NumericParams, er_cap_sweep, numeric_gap_er, solve_w


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--r1", type=float, default=1.0)
    parser.add_argument("--r2", type=float, default=1.0)
    parser.add_argument("--caps", type=float, nargs="+", default=[1e2, 1e3, 1e4])
    parser.add_argument("--points", type=int, nargs="+", default=[300, 1000, 2400])
    parser.add_argument("--drev", action="store_true",
                        help="also run the exact menu search at the largest cap")
    args = parser.parse_args()

    w = solve_w()
    print(f"w = {w:.12f}   target brev/srev = {w:.6f}")
    print(f"{'cap':>10} {'points':>7} {'srev':>8} {'brev':>10} {'brev/srev':>10}")
    for report in er_cap_sweep(args.r1, args.r2, args.caps, args.points):
        print(f"{report.cap:>10g} {report.grid_points:>7d} {report.srev:>8.4f} "
              f"{report.brev:>10.6f} {report.brev_over_srev:>10.6f}")
    if args.drev:
        params = NumericParams(cap=args.caps[-1], grid_points=args.points[-1])
        report = numeric_gap_er(args.r1, args.r2, params)
        print(f"\nexact search at cap {report.cap:g}: drev = {report.drev:.6f} "
              f"(brev {report.brev:.6f}, |drev-brev| {abs(report.drev - report.brev):.6f} "
              f"<= tolerance {report.tolerance:.6f})")


if __name__ == "__main__":
    main()
