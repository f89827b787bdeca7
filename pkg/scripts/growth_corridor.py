"""Growth of s against exp((pi/2) r^2 |sin 2 theta|) and the envelope integral.

Prints the ratio band from the polar scan and, for random admissible
direction sets, the spread of the envelope integral above 2 pi.
"""
import argparse
import math
from pathlib import Path

import numpy as np

from gaborfock.indicator_lab import envelope_integral, random_direction_set
from gaborfock.io import write_csv
from gaborfock.special_functions import growth_ratio_scan


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--sets", type=int, default=1000)
    ap.add_argument("--out", type=Path, default=Path("results"))
    args = ap.parse_args()

    rep = growth_ratio_scan([5, 10, 15, 20, 25, 30], theta_count=512)
    print(f"ratio band over {rep.ratios.size} grid points: [{rep.min_ratio:.4f}, {rep.max_ratio:.4f}], "
          f"{rep.excluded} excluded")

    rng = np.random.default_rng(args.seed)
    rows = []
    for k in range(args.sets):
        d = random_direction_set(rng)
        rows.append({"index": k, "n_directions": len(d.angles), "integral": envelope_integral(d),
                     "max_gap": float(d.gaps.max())})
    vals = np.array([r["integral"] for r in rows])
    print(f"envelope integral over {args.sets} sets: min {vals.min():.6f} (2 pi = {2 * math.pi:.6f}), "
          f"max {vals.max():.6f}")
    args.out.mkdir(parents=True, exist_ok=True)
    write_csv(args.out / "growth_ratio.csv", rep.rows())
    write_csv(args.out / "envelope_random.csv", rows)


if __name__ == "__main__":
    main()
