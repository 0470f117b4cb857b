"""Observed spectral radii against the M(a) bounds over a (m, n, a) grid.

    python3 scripts/bound_sweep.py --m 2,4 --n 2..8 --a 0.5,1,2.5,-0.5,-1.25 > sweep.csv
"""

import argparse
import csv
import sys

from ghilbert.cli import bounds_payload, parse_float_list, parse_int_range
from ghilbert.core import TensorSpec
from ghilbert.spectral import DEFAULT_MAX_ITER, DEFAULT_RESTARTS, DEFAULT_SEED, DEFAULT_TOL


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--m", default="2,4")
    ap.add_argument("--n", default="2..8")
    ap.add_argument("--a", default="0.5,1,2.5,-0.5,-1.25,-6.5")
    ap.add_argument("--seed", type=int, default=DEFAULT_SEED)
    args = ap.parse_args()

    out = csv.writer(sys.stdout)
    out.writerow(["m", "n", "a", "h_observed", "h_bound", "h_source", "z_observed", "z_bound", "z_source",
                  "h_slack", "z_slack"])
    for m in parse_int_range(args.m):
        for n in parse_int_range(args.n):
            for a in parse_float_list(args.a):
                r = bounds_payload(TensorSpec(m, n, a), DEFAULT_TOL, DEFAULT_MAX_ITER, DEFAULT_RESTARTS, args.seed)
                h_slack = r["h_observed"] / r["h_bound"] if r["h_bound"] else float("nan")
                out.writerow([m, n, a, r["h_observed"], r["h_bound"], r["h_source"], r["z_observed"],
                              r["z_bound"], r["z_source"], h_slack, r["z_observed"] / r["z_bound"]])


if __name__ == "__main__":
    main()
