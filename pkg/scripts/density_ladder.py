"""Counting density and Levin density of the axes set along a radius ladder.

Writes density_ladder.csv: r, count, count/(pi r^2), and the 2/pi target.
"""
import argparse
import math
from pathlib import Path

from gaborfock.indicator_lab import estimate_indicator, levin_density
from gaborfock.io import write_csv
from gaborfock.catalog import SFunction
from gaborfock.phase_space import PointSetSpec, count_sector


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--rmax", type=int, default=100)
    ap.add_argument("--out", type=Path, default=Path("results"))
    args = ap.parse_args()

    spec = PointSetSpec.axes()
    rows = []
    for r in range(2, args.rmax + 1):
        c = count_sector(spec, r)
        rows.append({"r": r, "count": c.count, "density": c.density, "target": 2 / math.pi})
    args.out.mkdir(parents=True, exist_ok=True)
    write_csv(args.out / "density_ladder.csv", rows)

    prof = estimate_indicator(SFunction(), 256, [10, 12.5, 15, 17.5, 20, 22.5, 25])
    print(f"counting density at r={args.rmax}: {rows[-1]['density']:.6f}")
    print(f"Levin density from the indicator of s: {levin_density(prof):.6f}")
    print(f"2/pi = {2 / math.pi:.6f}")


if __name__ == "__main__":
    main()
