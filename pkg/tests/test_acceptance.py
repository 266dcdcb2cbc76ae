"""End-to-end acceptance suite.

One test per advertised guarantee, in order, each printing a single
machine-readable verdict line. These are the headline checks; the
per-module suites cover the same ground at finer grain.

Run with `pytest tests/test_acceptance.py -v -s` to see the verdict lines.
"""

import math
import time

import numpy as np
import pytest

from quartosc.center import newton_center
from quartosc.classify import degen_plus_form, mu_form, versality_check
from quartosc.dyadic import (
    CutoffProfile,
    beta_cutoff,
    dilate,
    dyadic_integrate,
    partition_weights,
)
from quartosc.oscquad import BivarPoly, BumpAmplitude, integrate_2d
from quartosc.poly import Box, taylor_data
from quartosc.verify import (
    SweepConfig,
    airy_column_slope,
    airy_pair_exponent,
    airy_sweep,
    decay_fit,
    limit_check,
    sample_perturbation,
    uniform_sweep,
)
from quartosc.oscquad import Bump1D

MU0 = mu_form(0.0)   # x1^4 + x2^4
MU1 = mu_form(1.0)   # x1^4 + x1^2 x2^2 + x2^4
DEGP = degen_plus_form()  # x1^2 (x1^2 + x2^2)


def _verdict(n: int, ok: bool, detail: str) -> None:
    print(f"[acceptance {n}] {'PASS' if ok else 'FAIL'} {detail}")
    assert ok, detail


def test_criterion_1_partition_identity():
    t0 = time.time()
    rng = np.random.default_rng(314)
    profile = CutoffProfile()
    K = 20
    worst = 0.0
    worst_unit = 0.0
    n_unit = 0
    for _ in range(1000):
        x = tuple(rng.uniform(-40.0, 40.0, size=2))
        w = partition_weights(profile, x, 2, K)
        scaled = dilate(2.0**-K, x)
        dev = abs(math.fsum(w) - beta_cutoff(profile, scaled))
        worst = max(worst, dev)
        if scaled[0] ** 2 + scaled[1] ** 2 <= 1.0:
            n_unit += 1
            worst_unit = max(worst_unit, abs(math.fsum(w) - 1.0))
    ok = worst <= 1e-10 and worst_unit <= 1e-10 and n_unit > 100
    _verdict(
        1,
        ok,
        f"max_dev={worst:.2e} max_dev_unit={worst_unit:.2e} "
        f"unit_pts={n_unit} elapsed={time.time() - t0:.1f}s",
    )


def test_criterion_2_decomposition_matches_oracle():
    t0 = time.time()
    amp = BumpAmplitude((0.0, 0.0), 0.4)
    rng = np.random.default_rng(2718)
    pert = sample_perturbation(0.05, Box(), rng)
    cases = [
        ("plus-quartic", MU0, None),
        ("interior", MU1, None),
        ("degenerate", DEGP, None),
        ("perturbed", MU1, pert),
    ]
    worst = 0.0
    for name, form, extra in cases:
        p = form.to_poly()
        if extra is None:
            tay = taylor_data(p, None, (0.0, 0.0))
            full = p
        else:
            z = newton_center(p + extra, tol=1e-12).z
            tay = taylor_data(p, extra, z)
            full = p + extra
        for lam in (1e2, 1e3):
            total = dyadic_integrate(tay, form, amp, lam).total
            direct = integrate_2d(full, amp, lam, tol=1e-9).value
            rel = abs(total - direct) / abs(direct)
            worst = max(worst, rel)
    elapsed = time.time() - t0
    ok = worst <= 1e-3 and elapsed <= 120.0
    _verdict(2, ok, f"worst_rel={worst:.2e} elapsed={elapsed:.1f}s")


def test_criterion_3_interior_family_decays_without_log():
    t0 = time.time()
    cfg = SweepConfig(
        form=MU1,
        n_perturbations=0,
        lambda_min=1e2,
        lambda_max=1e5,
        lambda_points=8,
        amp_radius=0.8,
        cross_check=False,
    )
    res = uniform_sweep(cfg)
    elapsed = time.time() - t0
    fit = res.fit
    ok = (
        not res.failures
        and fit is not None
        and abs(fit.beta_hat + 0.5) <= 0.05
        and fit.p_hat == 0
        and elapsed <= 300.0
    )
    _verdict(
        3,
        ok,
        f"beta_hat={fit.beta_hat:.4f} p_hat={fit.p_hat} "
        f"elapsed={elapsed:.1f}s" if fit else "fit missing",
    )


def test_criterion_4_degenerate_family_has_log_growth():
    t0 = time.time()
    cfg = SweepConfig(
        form=DEGP,
        n_perturbations=0,
        lambda_min=1e2,
        lambda_max=1e5,
        lambda_points=8,
        amp_radius=0.5,
        cross_check=False,
    )
    res = uniform_sweep(cfg)
    fit = res.fit
    grid = cfg.lambda_grid()
    mags = np.array([r.abs_j for r in res.rows])  # single column, lambda order
    amp = BumpAmplitude((0.0, 0.0), 0.5)
    c_est, ratio = limit_check(DEGP, amp, grid, magnitudes=mags)
    elapsed = time.time() - t0
    ok = (
        not res.failures
        and fit is not None
        and abs(fit.beta_hat + 0.5) <= 0.05
        and fit.p_hat == 1
        and c_est > 0
        and 0.8 <= ratio <= 1.25
        and elapsed <= 300.0
    )
    _verdict(
        4,
        ok,
        f"beta_hat={fit.beta_hat:.4f} p_hat={fit.p_hat} c={c_est:.4f} "
        f"ratio={ratio:.4f} elapsed={elapsed:.1f}s" if fit else "fit missing",
    )


def test_criterion_5_uniform_over_perturbations():
    t0 = time.time()
    cfg = SweepConfig(
        form=MU1, n_perturbations=25, epsilon=0.05, seed=10, amp_radius=0.3
    )
    res = uniform_sweep(cfg)
    stat = res.sup_max_over_median()
    elapsed = time.time() - t0
    ok = not res.failures and stat <= 3.0 and elapsed <= 600.0
    _verdict(
        5,
        ok,
        f"sup_over_median={stat:.3f} rows={len(res.rows)} "
        f"cross_check_max={max((c[2] for c in res.cross_checks), default=0.0):.2e} "
        f"elapsed={elapsed:.1f}s",
    )


def test_criterion_6_airy_family_envelope():
    t0 = time.time()
    amp = Bump1D(0.0, 0.8)
    lams = np.geomspace(10.0, 1e4, 7)
    res = airy_sweep(lams, [-1.0, -0.3, 0.0, 0.3, 1.0], amp)
    slope0 = airy_column_slope(res, 0.0)
    top_exp = airy_pair_exponent(amp, 1e3, 1e4, 1.0)
    elapsed = time.time() - t0
    ok = (
        res.sanity_ok
        and res.c <= 10.0 * res.base_ratio
        and abs(slope0 + 1.0 / 3.0) <= 0.03
        and abs(top_exp + 0.5) <= 0.05
        and elapsed <= 120.0
    )
    _verdict(
        6,
        ok,
        f"c={res.c:.3f} base={res.base_ratio:.3f} slope0={slope0:.4f} "
        f"top_exponent={top_exp:.4f} elapsed={elapsed:.1f}s",
    )


def test_criterion_7_versality_ranks():
    r1 = versality_check(mu_form(1.0))
    r3 = versality_check(mu_form(3.0))
    rp = versality_check(DEGP)
    r0 = versality_check(mu_form(0.0))
    ok = (
        r1.is_versal
        and r3.is_versal
        and rp.is_versal
        and not r0.is_versal
        and r0.dim_intersection == 2
    )
    _verdict(
        7,
        ok,
        f"mu1={r1.is_versal} mu3={r3.is_versal} degp={rp.is_versal} "
        f"mu0_intersection={r0.dim_intersection}",
    )


def test_criterion_8_centering():
    t0 = time.time()
    shifted = MU1.to_poly().shift(-0.1, 0.2)
    res = newton_center(shifted)
    shift_err = math.hypot(res.z[0] - 0.1, res.z[1] + 0.2)
    recentered = shifted.shift(res.z[0], res.z[1])
    idem = math.hypot(*newton_center(recentered).z)
    rng = np.random.default_rng(101)
    box = Box()
    worst_iters = 0
    for _ in range(50):
        pert = sample_perturbation(0.05, box, rng)
        out = newton_center(MU1.to_poly() + pert)
        worst_iters = max(worst_iters, out.iterations)
    ok = shift_err <= 1e-8 and idem <= 1e-10 and worst_iters <= 15
    _verdict(
        8,
        ok,
        f"shift_err={shift_err:.2e} idempotence={idem:.2e} "
        f"max_iterations={worst_iters} elapsed={time.time() - t0:.1f}s",
    )


def test_criterion_9_oracle_invariants():
    t0 = time.time()
    phase = MU1.to_poly()
    tol = 1e-9

    a1 = BumpAmplitude((0.1, 0.0), 0.4)
    a2 = BumpAmplitude((-0.2, 0.1), 0.3)
    j1 = integrate_2d(phase, a1, 40.0, tol=tol).value
    j2 = integrate_2d(phase, a2, 40.0, tol=tol).value
    j12 = integrate_2d(phase, a1 + a2, 40.0, tol=tol).value
    lin_err = abs(j12 - j1 - j2)

    rng = np.random.default_rng(7)
    amp = BumpAmplitude((0.0, 0.0), 0.5)
    x, w = np.polynomial.legendre.leggauss(400)
    u = 0.5 * (x + 1.0)
    mass = 0.5**2 * math.pi * float(0.5 * np.sum(w * np.exp(1.0 - 1.0 / (1.0 - u))))
    mod_ok = True
    for _ in range(20):
        terms = {}
        for _ in range(5):
            i, j = rng.integers(0, 3, size=2)
            terms[(int(i), int(j))] = float(rng.uniform(-1, 1))
        ph = BivarPoly(terms)
        for lam in (1.0, 10.0, 100.0):
            if abs(integrate_2d(ph, amp, lam, tol=1e-8).value) > mass * (1 + 1e-7):
                mod_ok = False

    jp = integrate_2d(phase, a1, 75.0, tol=tol).value
    jm = integrate_2d(phase, a1, -75.0, tol=tol).value
    conj_err = abs(jm - jp.conjugate())

    c = 0.37
    j0 = integrate_2d(phase, amp, 60.0, tol=tol).value
    jc = integrate_2d(phase + BivarPoly.constant(c), amp, 60.0, tol=tol).value
    shift_err = abs(jc - np.exp(1j * 60.0 * c) * j0)

    elapsed = time.time() - t0
    ok = (
        lin_err <= 2.0 * tol
        and mod_ok
        and conj_err <= tol
        and shift_err <= tol
        and elapsed <= 60.0
    )
    _verdict(
        9,
        ok,
        f"linearity={lin_err:.2e} modulus_ok={mod_ok} conjugate={conj_err:.2e} "
        f"phase_shift={shift_err:.2e} elapsed={elapsed:.1f}s",
    )
