"""Truncated Fock norms of 1, s and s/(z-1) on a long radius ladder.

The increments of s/(z-1) decay like R^-2 per unit radius, so the relative
increment between rungs shrinks only like 1/R.  The table shows how far out
the ladder must go before it drops below a given threshold.
"""
import argparse
from pathlib import Path

import numpy as np

from gaborfock.bargmann_fock import classify_ladder, fock_norm_ladder_values
from gaborfock.catalog import One, QuotientByLinear, SFunction
from gaborfock.io import write_csv


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--R", type=float, nargs="+", default=[4, 6, 8, 10, 12, 14, 16, 18, 20, 22, 24])
    ap.add_argument("--out", type=Path, default=Path("results"))
    args = ap.parse_args()

    rows = []
    for name, F in (("one", One()), ("s", SFunction()), ("s/(z-1)", QuotientByLinear(SFunction(), 1.0))):
        v = fock_norm_ladder_values(F, args.R)
        rel = np.concatenate([[np.nan], np.diff(v) / v[1:]])
        for R, val, q in zip(args.R, v, rel):
            rows.append({"function": name, "R": R, "value": val, "relative_increment": q})
        verdict, q = classify_ladder(list(args.R), list(v))
        print(f"{name:>8}: last value {v[-1]:.6g}, last relative increment {rel[-1]:.3e}, "
              f"tail exponent {q:.3f}, verdict {verdict}")
    args.out.mkdir(parents=True, exist_ok=True)
    write_csv(args.out / "fock_tail.csv", rows)


if __name__ == "__main__":
    main()
