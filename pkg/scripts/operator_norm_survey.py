"""Sampled norms of the truncated F and T operators next to K(a) and C(a).

Lower column: largest truncated-prefix norm seen. Upper column: largest
prefix-plus-tail enclosure. The one-hot input e_1 is reported separately,
since at a = 1 it nearly attains the bound.
"""

import argparse

import numpy as np

from ghilbert.infinite import TruncatedOperatorSpec, norm_bound, norm_enclosure, sample_norms


def main():
    ap = argparse.ArgumentParser(description="operator-norm survey")
    ap.add_argument("--m", type=int, nargs="+", default=[2, 4])
    ap.add_argument("--a", type=float, nargs="+", default=[0.25, 0.5, 1.0, 2.0, 5.0])
    ap.add_argument("--samples", type=int, default=300)
    ap.add_argument("--N", type=int, default=10_000)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()

    print(f"{'m':>2} {'a':>5} {'mode':>4} {'lower':>10} {'upper':>10} {'e1':>10} {'bound':>10} {'ratio':>7}")
    for m in args.m:
        for a in args.a:
            for mode in ("F", "T"):
                if mode == "F" and m % 2:
                    continue
                spec = TruncatedOperatorSpec(m, a, args.N, mode=mode)
                runs = sample_norms(spec, args.samples, args.seed)
                lo = max(s.lower for s in runs)
                hi = max(s.upper for s in runs)
                e1 = norm_enclosure(spec, np.array([1.0])).lower
                bound = norm_bound(spec)
                print(f"{m:>2} {a:>5g} {mode:>4} {lo:10.6f} {hi:10.6f} {e1:10.6f} {bound:10.6f} "
                      f"{max(lo, e1) / bound:7.4f}")


if __name__ == "__main__":
    main()
