"""Positivity of H x^m outside the a >= 1 regime.

For 0 < a < 1 and a < 0 positivity is not known; this prints the
smallest sampled H x^m / ||x||_m^m per configuration and any counterexample.
"""

import argparse

import numpy as np

from ghilbert.core import TensorSpec
from ghilbert.infinite import pd_check
from ghilbert.spectral import dense_matrix_eigen


def main():
    ap = argparse.ArgumentParser(description="PD evidence")
    ap.add_argument("--m", type=int, nargs="+", default=[2, 4])
    ap.add_argument("--n", type=int, nargs="+", default=[2, 4, 8])
    ap.add_argument("--a", type=float, nargs="+", default=[0.1, 0.5, 0.9, -0.5, -1.25, -3.5])
    ap.add_argument("--trials", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=11)
    args = ap.parse_args()

    for m in args.m:
        for n in args.n:
            for a in args.a:
                spec = TensorSpec(m, n, a)
                rep = pd_check(spec, args.trials, args.seed)
                line = f"m={m} n={n:<2} a={a:<6g} min={rep.min_rayleigh: .4e}  {rep.verdict:<20} {rep.regime}"
                if m == 2:
                    # exact answer available: smallest eigenvalue of the Hankel matrix
                    line += f"  lambda_min={min(e.value for e in dense_matrix_eigen(spec)): .4e}"
                if rep.counterexample is not None:
                    line += f"  x={np.array2string(rep.counterexample, precision=3)}"
                print(line)


if __name__ == "__main__":
    main()
