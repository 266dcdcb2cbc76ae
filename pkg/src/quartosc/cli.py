"""Command-line front end.

Subcommands: classify, integrate, decompose, sweep, airy, check-partition,
center. Tabular output is CSV; scalar reports are flat key=value lines so
results stay grep-able. Exit status: 0 success, 1 domain error (the module
error name appears verbatim on stderr), 2 usage error.

The sweep subcommand also accepts a declarative config file: one `key =
value` assignment per line, `#` comments, keys mirroring SweepConfig fields
(form, g, epsilon, n_perturbations, lambda_min, lambda_max, lambda_points,
seed, amp_center, amp_radius, box, include_zero, use_dyadic, cross_check).
Command-line flags override file values. Floats are printed with %.17g so
identical runs produce byte-identical files; the QUARTOSC_THREADS
environment variable parallelizes sweep columns without changing output.
"""

from __future__ import annotations

import argparse
import math
import os
import sys

import numpy as np

from .classify import (
    QuarticForm,
    oscillation_type,
    reduce_to_normal_form,
    versality_check,
)
from .center import newton_center
from .dyadic import (
    CutoffProfile,
    DyadicConfig,
    beta_cutoff,
    dyadic_integrate,
    partition_weights,
)
from .errors import QuartoscError
from .oscquad import Bump1D, bump_amplitude, integrate_2d
from .poly import BivarPoly, Box, poly_from_text, taylor_data
from .verify import SweepConfig, airy_column_slope, airy_sweep, uniform_sweep

__all__ = ["main"]


class UsageError(Exception):
    pass


def _fmt(x: float) -> str:
    return "%.17g" % float(x)


def _write_text(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="\n") as fh:
            fh.write(text)


def _parse_pair(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise UsageError(f"expected 'a,b' pair, got {text!r}")
    return (float(parts[0]), float(parts[1]))


def _parse_poly_arg(text: str) -> BivarPoly:
    try:
        return poly_from_text(text)
    except ValueError as exc:
        raise UsageError(f"bad polynomial {text!r}: {exc}") from exc


def _quartic_arg(text: str) -> QuarticForm:
    p = _parse_poly_arg(text)
    try:
        return QuarticForm.from_poly(p)
    except ValueError as exc:
        raise UsageError(f"the main part must be a homogeneous quartic: {exc}") from exc


# ---------------------------------------------------------------------------
# Subcommand implementations
# ---------------------------------------------------------------------------


def _cmd_classify(ns) -> int:
    form = _quartic_arg(ns.poly)
    nf = reduce_to_normal_form(form, tol=ns.tol)
    ot = oscillation_type(nf)
    parts = [f"kind={nf.kind.value}"]
    if nf.mu is not None:
        parts.append(f"mu={_fmt(nf.mu)}")
    parts.append(f"beta={_fmt(ot.beta)}")
    parts.append(f"p={ot.p}")
    print(" ".join(parts))
    if ns.out:
        rep = versality_check(form)
        lines = [
            f"kind={nf.kind.value}",
            f"mu={_fmt(nf.mu) if nf.mu is not None else ''}",
            f"beta={_fmt(ot.beta)}",
            f"p={ot.p}",
            f"scale={_fmt(nf.scale)}",
            f"transform={','.join(_fmt(v) for v in nf.transform.ravel())}",
            f"pullback_residual={_fmt(nf.pullback_residual(form))}",
            f"dim_ideal_slice={rep.dim_ideal_slice}",
            f"dim_B={rep.dim_B}",
            f"dim_intersection={rep.dim_intersection}",
            f"dim_sum={rep.dim_sum}",
            f"is_versal={str(rep.is_versal).lower()}",
        ]
        _write_text(ns.out, "\n".join(lines) + "\n")
    return 0


def _cmd_integrate(ns) -> int:
    phase = _parse_poly_arg(ns.poly)
    amp = bump_amplitude(_parse_pair(ns.amp_center), ns.amp_radius)
    res = integrate_2d(phase, amp, ns.lam, tol=ns.tol)
    lines = [
        f"value_re={_fmt(res.value.real)}",
        f"value_im={_fmt(res.value.imag)}",
        f"abs={_fmt(abs(res.value))}",
        f"error_estimate={_fmt(res.abs_error_estimate)}",
        f"panels={res.panels}",
    ]
    _write_text(ns.out, "\n".join(lines) + "\n")
    return 0


def _cmd_decompose(ns) -> int:
    phase = _parse_poly_arg(ns.poly)
    f4 = phase.homogeneous_part(4)
    if f4.is_zero():
        raise UsageError("phase has no degree-4 part; nothing to decompose against")
    form = QuarticForm.from_poly(f4)
    rest = phase - f4
    ctr = newton_center(phase, tol=1e-12)
    tay = taylor_data(f4, None if rest.is_zero() else rest, ctr.z)
    amp = bump_amplitude(_parse_pair(ns.amp_center), ns.amp_radius)
    dec = dyadic_integrate(tay, form, amp, ns.lam, DyadicConfig())
    out = ["k,regime,abs_jk,normalized_jk"]
    pieces = [(dec.nu0, dec.j0)] + list(dec.rings)
    for k, val in pieces:
        out.append(
            f"{k},{dec.regime},{_fmt(abs(val))},{_fmt(math.sqrt(dec.lam) * abs(val))}"
        )
    _write_text(ns.out, "\n".join(out) + "\n")
    summary = [
        f"total_abs={_fmt(abs(dec.total))}",
        f"rho={_fmt(dec.rho)}",
        f"regime={dec.regime}",
        f"K={dec.K}",
        f"computed_rings={len(dec.rings)}",
        f"error_estimate={_fmt(dec.error_estimate)}",
        f"panels={dec.panels}",
        f"center={_fmt(ctr.z[0])},{_fmt(ctr.z[1])}",
    ]
    stream = sys.stdout if ns.out else sys.stderr
    print("\n".join(summary), file=stream)
    return 0


def _read_config(path: str) -> dict[str, str]:
    if not os.path.isfile(path):
        raise UsageError(f"config file not found: {path}")
    entries: dict[str, str] = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key = value")
            key, _, value = line.partition("=")
            entries[key.strip()] = value.strip()
    return entries


_SWEEP_FLOAT_KEYS = {"epsilon", "lambda_min", "lambda_max", "amp_radius"}
_SWEEP_INT_KEYS = {"n_perturbations", "lambda_points", "seed"}
_SWEEP_BOOL_KEYS = {"include_zero", "use_dyadic", "cross_check"}


def _parse_bool(value: str) -> bool:
    low = value.lower()
    if low in ("true", "yes", "1", "on"):
        return True
    if low in ("false", "no", "0", "off"):
        return False
    raise UsageError(f"expected boolean, got {value!r}")


def _sweep_config(ns) -> SweepConfig:
    vals: dict = {}
    if ns.config:
        for key, value in _read_config(ns.config).items():
            if key == "form":
                vals["form"] = value
            elif key == "g":
                vals["g"] = value
            elif key == "box":
                vals["box"] = float(value)
            elif key == "amp_center":
                vals["amp_center"] = value
            elif key in _SWEEP_FLOAT_KEYS:
                vals[key] = float(value)
            elif key in _SWEEP_INT_KEYS:
                vals[key] = int(value)
            elif key in _SWEEP_BOOL_KEYS:
                vals[key] = _parse_bool(value)
            else:
                raise UsageError(f"unknown config key: {key}")
    overrides = {
        "form": ns.form,
        "g": ns.g,
        "epsilon": ns.epsilon,
        "n_perturbations": ns.n_pert,
        "lambda_min": ns.lambda_min,
        "lambda_max": ns.lambda_max,
        "lambda_points": ns.lambda_points,
        "seed": ns.seed,
        "amp_radius": ns.amp_radius,
        "amp_center": ns.amp_center,
        "box": ns.box,
    }
    for key, value in overrides.items():
        if value is not None:
            vals[key] = value
    if ns.no_zero:
        vals["include_zero"] = False
    if ns.direct:
        vals["use_dyadic"] = False
    if ns.no_cross_check:
        vals["cross_check"] = False
    if "form" not in vals:
        raise UsageError("sweep requires a form (flag --form or config key form=)")
    form = _quartic_arg(vals.pop("form"))
    kwargs: dict = {}
    if "g" in vals:
        kwargs["g"] = _parse_poly_arg(vals.pop("g"))
    if "box" in vals:
        kwargs["box"] = Box(vals.pop("box"))
    if "amp_center" in vals:
        kwargs["amp_center"] = _parse_pair(vals.pop("amp_center"))
    kwargs.update(vals)
    try:
        return SweepConfig(form=form, **kwargs)
    except (TypeError, ValueError) as exc:
        raise UsageError(f"bad sweep configuration: {exc}") from exc


def _cmd_sweep(ns) -> int:
    cfg = _sweep_config(ns)
    result = uniform_sweep(cfg)
    lines = ["lambda,pert_id,abs_j,normalized"]
    for row in result.rows:
        lines.append(
            f"{_fmt(row.lam)},{row.pert_id},{_fmt(row.abs_j)},{_fmt(row.normalized)}"
        )
    _write_text(ns.out, "\n".join(lines) + "\n")
    summary = [
        f"rows={len(result.rows)}",
        f"failures={len(result.failures)}",
        f"amp_c1={_fmt(result.amp_c1)}",
        f"amp_c2={_fmt(result.amp_c2)}",
    ]
    for i, (lam, pid, name) in enumerate(result.failures):
        summary.append(f"failure_{i}={_fmt(lam)},{pid},{name}")
    if result.cross_checks:
        summary.append(
            f"cross_check_max={_fmt(max(c[2] for c in result.cross_checks))}"
        )
    if result.fit is not None:
        summary += [
            f"beta_hat={_fmt(result.fit.beta_hat)}",
            f"p_hat={result.fit.p_hat}",
            f"c_hat={_fmt(result.fit.c_hat)}",
            f"residual_p0={_fmt(result.fit.residual_p0)}",
            f"residual_p1={_fmt(result.fit.residual_p1)}",
            f"sup_max_over_median={_fmt(result.sup_max_over_median())}",
        ]
    stream = sys.stdout if ns.out else sys.stderr
    print("\n".join(summary), file=stream)
    return 0


def _cmd_airy(ns) -> int:
    sigmas = [float(s) for s in ns.sigmas.split(",") if s.strip() != ""]
    lams = np.geomspace(ns.lambda_min, ns.lambda_max, ns.lambda_points)
    amp = Bump1D(ns.amp_center, ns.amp_radius)
    result = airy_sweep(lams, sigmas, amp)
    lines = ["lambda,sigma,abs_j,ratio"]
    for row in result.rows:
        lines.append(
            f"{_fmt(row.lam)},{_fmt(row.sigma)},{_fmt(row.abs_j)},{_fmt(row.ratio)}"
        )
    _write_text(ns.out, "\n".join(lines) + "\n")
    summary = [
        f"c={_fmt(result.c)}",
        f"base_ratio={_fmt(result.base_ratio)}",
        f"sanity_ok={str(result.sanity_ok).lower()}",
    ]
    if 0.0 in sigmas and ns.lambda_points >= 2:
        summary.append(f"slope_sigma0={_fmt(airy_column_slope(result, 0.0))}")
    stream = sys.stdout if ns.out else sys.stderr
    print("\n".join(summary), file=stream)
    return 0


def _cmd_check_partition(ns) -> int:
    rng = np.random.default_rng(ns.seed)
    profile = CutoffProfile()
    worst = 0.0
    worst_unit = 0.0
    scale = 2.0 ** (-0.25 * ns.K)
    for _ in range(ns.points):
        x = tuple(rng.uniform(-40.0, 40.0, size=2))
        weights = partition_weights(profile, x, ns.nu0, ns.K)
        total = math.fsum(weights)
        target = beta_cutoff(profile, (scale * x[0], scale * x[1]))
        worst = max(worst, abs(total - target))
        if (scale * x[0]) ** 2 + (scale * x[1]) ** 2 <= 1.0:
            worst_unit = max(worst_unit, abs(total - 1.0))
    print(f"max_deviation={_fmt(worst)}")
    print(f"max_deviation_unit_region={_fmt(worst_unit)}")
    return 0 if worst <= 1e-10 and worst_unit <= 1e-10 else 1


def _cmd_center(ns) -> int:
    phase = _parse_poly_arg(ns.poly)
    res = newton_center(phase, tol=ns.tol)
    lines = [
        f"z1={_fmt(res.z[0])}",
        f"z2={_fmt(res.z[1])}",
        f"iterations={res.iterations}",
        f"residual={_fmt(res.residual)}",
    ]
    _write_text(ns.out, "\n".join(lines) + "\n")
    return 0


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="quartosc",
        description="Numerical laboratory for oscillatory integrals with quartic phases.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("classify", help="normal form and decay signature of a quartic")
    sp.add_argument("poly", help="homogeneous quartic in the text format, e.g. 'x1^4+3*x1^2*x2^2+x2^4'")
    sp.add_argument("--tol", type=float, default=1e-8)
    sp.add_argument("--out", default=None, help="write a key=value record here")
    sp.set_defaults(func=_cmd_classify)

    sp = sub.add_parser("integrate", help="direct oscillatory integral of a polynomial phase")
    sp.add_argument("poly")
    sp.add_argument("--lam", type=float, required=True)
    sp.add_argument("--amp-radius", type=float, default=0.4)
    sp.add_argument("--amp-center", default="0,0")
    sp.add_argument("--tol", type=float, default=1e-9)
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=_cmd_integrate)

    sp = sub.add_parser("decompose", help="ring-by-ring decomposition at one lambda")
    sp.add_argument("poly", help="full phase; its degree-4 part is the main part")
    sp.add_argument("--lam", type=float, required=True)
    sp.add_argument("--amp-radius", type=float, default=0.4)
    sp.add_argument("--amp-center", default="0,0")
    sp.add_argument("--out", default=None, help="CSV destination (stdout otherwise)")
    sp.set_defaults(func=_cmd_decompose)

    sp = sub.add_parser("sweep", help="uniformity sweep over a perturbation family")
    sp.add_argument("--config", default=None, help="key = value config file")
    sp.add_argument("--form", default=None)
    sp.add_argument("--g", default=None)
    sp.add_argument("--epsilon", type=float, default=None)
    sp.add_argument("--n-pert", type=int, default=None)
    sp.add_argument("--lambda-min", type=float, default=None)
    sp.add_argument("--lambda-max", type=float, default=None)
    sp.add_argument("--lambda-points", type=int, default=None)
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--amp-radius", type=float, default=None)
    sp.add_argument("--amp-center", default=None)
    sp.add_argument("--box", type=float, default=None)
    sp.add_argument("--no-zero", action="store_true", help="drop the unperturbed row set")
    sp.add_argument("--direct", action="store_true", help="integrate directly, no ring decomposition")
    sp.add_argument("--no-cross-check", action="store_true")
    sp.add_argument("--out", default=None, help="CSV destination (stdout otherwise)")
    sp.set_defaults(func=_cmd_sweep)

    sp = sub.add_parser("airy", help="cubic-family envelope sweep")
    sp.add_argument("--lambda-min", type=float, default=10.0)
    sp.add_argument("--lambda-max", type=float, default=1e4)
    sp.add_argument("--lambda-points", type=int, default=7)
    sp.add_argument("--sigmas", default="-1,-0.3,0,0.3,1")
    sp.add_argument("--amp-radius", type=float, default=0.8)
    sp.add_argument("--amp-center", type=float, default=0.0)
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=_cmd_airy)

    sp = sub.add_parser("check-partition", help="verify the dyadic partition identity")
    sp.add_argument("--points", type=int, default=1000)
    sp.add_argument("--K", type=int, default=20)
    sp.add_argument("--nu0", type=int, default=2)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=_cmd_check_partition)

    sp = sub.add_parser("center", help="shift annihilating the mixed cubic coefficients")
    sp.add_argument("poly")
    sp.add_argument("--tol", type=float, default=1e-10)
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=_cmd_center)

    return ap


def main(argv=None) -> int:
    parser = _build_parser()
    ns = parser.parse_args(argv)
    try:
        return ns.func(ns)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except QuartoscError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
