"""Decay-law scan across the named quartic families.

Runs a perturbation sweep for each family, fits the decay law
|J| ~ c * lambda^beta * (log lambda)^p, and prints one summary row per
family plus the uniformity statistic. Modest defaults so a laptop run
finishes in a couple of minutes; crank --lambda-max / --n-pert for the
full picture.

Expect failures in the mu=0 row: that family is the non-versal edge case,
so centering its perturbations may legitimately fail (each failure is
counted, the remaining columns still contribute). The fit column reads
n/a when the lambda grid spans less than two decades or has fewer than
six points.

    python3 scripts/run_sweep.py --n-pert 5 --lambda-max 1e4
"""

import argparse
import sys

from quartosc.classify import degen_minus_form, degen_plus_form, mu_form
from quartosc.verify import SweepConfig, uniform_sweep

FAMILIES = [
    ("mu=0", mu_form(0.0)),
    ("mu=1", mu_form(1.0)),
    ("mu=3", mu_form(3.0)),
    ("degen+", degen_plus_form()),
    ("degen-", degen_minus_form()),
]


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-pert", type=int, default=3)
    ap.add_argument("--epsilon", type=float, default=0.05)
    ap.add_argument("--lambda-min", type=float, default=1e2)
    ap.add_argument("--lambda-max", type=float, default=1e4)
    ap.add_argument("--lambda-points", type=int, default=6)
    ap.add_argument("--amp-radius", type=float, default=0.3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    print(f"{'family':>8} {'beta_hat':>9} {'p_hat':>5} {'sup/median':>11} {'rows':>5} {'fails':>5}")
    for name, form in FAMILIES:
        cfg = SweepConfig(
            form=form,
            n_perturbations=args.n_pert,
            epsilon=args.epsilon,
            lambda_min=args.lambda_min,
            lambda_max=args.lambda_max,
            lambda_points=args.lambda_points,
            amp_radius=args.amp_radius,
            seed=args.seed,
            cross_check=False,
        )
        res = uniform_sweep(cfg)
        fit = res.fit
        beta = f"{fit.beta_hat:9.4f}" if fit else "      n/a"
        p = f"{fit.p_hat:5d}" if fit else "  n/a"
        print(
            f"{name:>8} {beta} {p} {res.sup_max_over_median():11.3f} "
            f"{len(res.rows):5d} {len(res.failures):5d}"
        )
        for lam, pid, kind in res.failures:
            print(f"         failure: lambda={lam:g} pert={pid} ({kind})", file=sys.stderr)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
