#!/usr/bin/env python3
"""Render the purchase-region partitions of the two reference menu shapes
(and any extra menus given as a,b,c triples) to SVG files."""
import argparse
import pathlib

from menurev import menu2, normalize
from menurev.regions import region_partition_2, render_svg


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--outdir", default="region-plots")
    parser.add_argument("menus", nargs="*",
                        help="extra menus as comma triples, e.g. 3,4,5")
    args = parser.parse_args()

    outdir = pathlib.Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    triples = [(15, 45, 80), (27, 70, 85), (2, 3, 5)]
    triples += [tuple(t.split(",")) for t in args.menus]
    for a, b, c in triples:
        part = region_partition_2(normalize(menu2(a, b, c)))
        path = outdir / f"menu-{a}-{b}-{c}.svg"
        path.write_text(render_svg(part))
        print(f"{path}  [{part.kind}]")


if __name__ == "__main__":
    main()
