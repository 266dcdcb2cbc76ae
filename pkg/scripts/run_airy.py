"""Airy-family envelope table.

Integrates exp(i lambda (x^3 + sigma x)) against a fixed bump over a
(lambda, sigma) grid, prints the |J| / envelope ratios, the fitted
envelope constant, and the two slope diagnostics: the sigma=0 column
should decay like lambda^{-1/3}, the |sigma|=1 columns like
lambda^{-1/2} once lambda is large.

    python3 scripts/run_airy.py --lambda-points 7
"""

import argparse

import numpy as np

from quartosc.oscquad import Bump1D
from quartosc.verify import airy_column_slope, airy_pair_exponent, airy_sweep


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--lambda-min", type=float, default=10.0)
    ap.add_argument("--lambda-max", type=float, default=1e4)
    ap.add_argument("--lambda-points", type=int, default=7)
    ap.add_argument("--sigmas", default="-1,-0.3,0,0.3,1")
    ap.add_argument("--radius", type=float, default=0.8)
    args = ap.parse_args(argv)

    sigmas = [float(s) for s in args.sigmas.split(",")]
    lams = np.geomspace(args.lambda_min, args.lambda_max, args.lambda_points)
    amp = Bump1D(0.0, args.radius)
    res = airy_sweep(lams, sigmas, amp)

    header = "lambda".rjust(10) + "".join(f"  sigma={s:+.2f}" for s in sigmas)
    print(header)
    for lam in lams:
        ratios = [r.ratio for r in res.rows if r.lam == lam]
        print(f"{lam:10.1f}" + "".join(f"{v:12.4f}" for v in ratios))
    print(f"\nenvelope constant c = {res.c:.4f} (base ratio {res.base_ratio:.4f}, sanity_ok={res.sanity_ok})")
    if 0.0 in sigmas:
        print(f"sigma=0 column slope: {airy_column_slope(res, 0.0):+.4f} (expect -1/3)")
    top = airy_pair_exponent(amp, args.lambda_max / 10.0, args.lambda_max, 1.0)
    print(f"|sigma|=1 top-decade exponent: {top:+.4f} (expect -1/2)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
