"""Experiment harness: lambda sweeps, exponent fits, limit and envelope checks.

The central empirical question this module answers: does the oscillatory
integral of a quartic-phase family obey

    |J(lambda)| <= C * ||a||_C1 * ln(2 + lambda) / sqrt(lambda)

uniformly over small perturbations of the phase, and does the decay match
the classified signature (pure power for the generic family, power times
log for the degenerate ones)?

Pieces:

* ``sample_perturbation``: seeded random degree-<=7 polynomials rescaled to
  a fixed C^8-ball radius certificate.
* ``uniform_sweep``: grid of (lambda, perturbation) rows; each row centers
  the phase, builds its Taylor data, integrates through the ring
  decomposition, and records lambda^(1/2) |J| / ln(2 + lambda). Rows are
  independent; the aggregation key is (lambda, perturbation id), so output
  never depends on scheduling. Failed rows are counted, reported, and
  excluded from fits, never silently dropped.
* ``decay_fit``: least squares in log-log space against the two discrete
  models |J| = C lambda^beta and |J| = C lambda^beta ln(lambda); the log
  power is selected by residual comparison, not fitted continuously (beta
  and a continuous log power are nearly collinear over desk-scale grids).
* ``limit_check``: the degenerate-family statistic sqrt(lambda)|J|/ln(lambda),
  whose convergence to a nonzero constant certifies that the log factor is
  attained and not an artifact of the bound.
* ``airy_sweep`` and the column-exponent helpers: the one-dimensional cubic
  family x^3 + sigma x against the uniform envelope
  1/(lambda^(1/3) + lambda^(1/2)|sigma|^(1/4)).

For sigma < 0 the cubic has two real stationary points and |J| carries an
interference factor oscillating on a lambda-scale of a few units; pointwise
two-point slopes are therefore meaningless and the exponent at |sigma| > 0
is measured on RMS averages over windows a few interference periods wide,
taking the worse of the +-sigma pair (the envelope is a sup bound).
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .classify import QuarticForm
from .center import newton_center
from .dyadic import DyadicConfig, dyadic_integrate
from .errors import InsufficientRange, NonPositiveMagnitude, QuartoscError
from .oscquad import (
    Bump1D,
    BumpAmplitude,
    airy_envelope,
    bump_amplitude,
    integrate_1d,
    integrate_2d,
)
from .poly import BivarPoly, Box, c_norm, taylor_data

__all__ = [
    "SweepConfig",
    "SweepRow",
    "SupPoint",
    "DecayFit",
    "SweepResult",
    "AiryRow",
    "AirySweepResult",
    "sample_perturbation",
    "decay_fit",
    "uniform_sweep",
    "limit_check",
    "airy_sweep",
    "airy_column_slope",
    "airy_pair_exponent",
]


# ---------------------------------------------------------------------------
# Configuration and result records
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SweepConfig:
    """Declarative description of one uniformity experiment."""

    form: QuarticForm
    g: BivarPoly | None = None  # fixed higher-order completion of the phase
    epsilon: float = 0.05
    n_perturbations: int = 25
    lambda_min: float = 1e2
    lambda_max: float = 1e4
    lambda_points: int = 7
    seed: int = 0
    amp_center: tuple[float, float] = (0.0, 0.0)
    amp_radius: float = 0.4
    box: Box = field(default_factory=Box)
    include_zero: bool = True  # include the unperturbed F = 0 row set
    use_dyadic: bool = True  # ring decomposition vs direct oracle per row
    cross_check: bool = True  # compare against the direct oracle at the two smallest lambdas
    dyadic: DyadicConfig = field(default_factory=DyadicConfig)

    def __post_init__(self):
        if not (self.epsilon > 0):
            raise ValueError("epsilon must be positive")
        if self.lambda_min < 2:
            raise ValueError("lambda grid must start at 2 or above")
        if self.lambda_max < self.lambda_min:
            raise ValueError("lambda_max must be >= lambda_min")
        if self.lambda_points < 1:
            raise ValueError("lambda_points must be >= 1")
        if self.n_perturbations < 0:
            raise ValueError("n_perturbations must be >= 0")

    def lambda_grid(self) -> np.ndarray:
        return np.geomspace(self.lambda_min, self.lambda_max, self.lambda_points)


@dataclass(frozen=True)
class SweepRow:
    lam: float
    pert_id: int
    abs_j: float
    normalized: float  # sqrt(lam) * abs_j / ln(2 + lam)


@dataclass(frozen=True)
class SupPoint:
    lam: float
    abs_j: float  # max over perturbations
    normalized: float


@dataclass(frozen=True)
class DecayFit:
    beta_hat: float
    p_hat: int
    c_hat: float
    residual_p0: float
    residual_p1: float


@dataclass(frozen=True)
class SweepResult:
    rows: tuple[SweepRow, ...]
    sup_curve: tuple[SupPoint, ...]
    fit: DecayFit | None
    failures: tuple[tuple[float, int, str], ...]
    cross_checks: tuple[tuple[float, int, float], ...]
    amp_c1: float
    amp_c2: float

    def sup_max_over_median(self) -> float:
        """Max over all rows of the normalized statistic divided by the
        median over lambda of the per-lambda max; the uniformity proxy."""
        vals = np.array([p.normalized for p in self.sup_curve])
        med = float(np.median(vals))
        if med <= 0:
            return math.inf
        return float(max(r.normalized for r in self.rows) / med)


# ---------------------------------------------------------------------------
# Perturbation sampling
# ---------------------------------------------------------------------------

_PERT_MONOS = sorted((i, j) for i in range(8) for j in range(8) if i + j <= 7)


def sample_perturbation(epsilon: float, box: Box, rng: np.random.Generator) -> BivarPoly:
    """Random polynomial of total degree <= 7 with C^8 norm certificate.

    Coefficients are drawn uniform on [-1, 1] and the polynomial is rescaled
    so that the rigorous norm bound equals epsilon/2, placing it strictly
    inside the epsilon-ball. Deterministic given the generator state.
    """
    if not (epsilon > 0):
        raise ValueError("epsilon must be positive")
    while True:
        coeffs = rng.uniform(-1.0, 1.0, size=len(_PERT_MONOS))
        raw = BivarPoly({m: c for m, c in zip(_PERT_MONOS, coeffs)})
        norm = c_norm(raw, 8, box)
        if norm > 0:
            return raw.scaled(0.5 * epsilon / norm)


# ---------------------------------------------------------------------------
# Decay fitting
# ---------------------------------------------------------------------------


def decay_fit(samples) -> DecayFit:
    """Fit log|J| = log C + beta log(lambda) [+ log log(lambda)].

    The log power is a model choice p in {0, 1}, selected by least-squares
    residual; its coefficient is fixed at 1, never fitted. Requires at least
    6 points spanning at least two decades, all magnitudes positive.
    """
    pts = [(float(l), float(m)) for l, m in samples]
    if len(pts) < 6:
        raise InsufficientRange("decay_fit needs at least 6 lambda points")
    lams = np.array([p[0] for p in pts])
    mags = np.array([p[1] for p in pts])
    if (mags <= 0).any():
        raise NonPositiveMagnitude("decay_fit requires positive magnitudes")
    if lams.max() < 100.0 * lams.min() * (1.0 - 1e-9):
        raise InsufficientRange("lambda grid must span at least two decades")
    x = np.log(lams)
    y = np.log(mags)
    basis = np.column_stack([np.ones_like(x), x])

    def _ls(target):
        coef, *_ = np.linalg.lstsq(basis, target, rcond=None)
        resid = target - basis @ coef
        return coef, float(np.sqrt(np.mean(resid**2)))

    coef0, r0 = _ls(y)
    coef1, r1 = _ls(y - np.log(np.log(lams)))
    if r0 <= r1:
        return DecayFit(
            beta_hat=float(coef0[1]),
            p_hat=0,
            c_hat=float(np.exp(coef0[0])),
            residual_p0=r0,
            residual_p1=r1,
        )
    return DecayFit(
        beta_hat=float(coef1[1]),
        p_hat=1,
        c_hat=float(np.exp(coef1[0])),
        residual_p0=r0,
        residual_p1=r1,
    )


# ---------------------------------------------------------------------------
# The uniformity sweep
# ---------------------------------------------------------------------------


def _phase_parts(cfg: SweepConfig, pert: BivarPoly | None):
    extra = None
    if cfg.g is not None and pert is not None:
        extra = cfg.g + pert
    elif cfg.g is not None:
        extra = cfg.g
    elif pert is not None:
        extra = pert
    full = cfg.form.to_poly() if extra is None else cfg.form.to_poly() + extra
    return extra, full


def _sweep_column(cfg: SweepConfig, amp: BumpAmplitude, grid: np.ndarray,
                  pert_id: int, pert: BivarPoly | None):
    rows: list[SweepRow] = []
    fails: list[tuple[float, int, str]] = []
    checks: list[tuple[float, int, float]] = []
    extra, full = _phase_parts(cfg, pert)
    try:
        ctr = newton_center(full, tol=1e-12, box=cfg.box)
        tay = taylor_data(cfg.form.to_poly(), extra, ctr.z, cfg.box)
    except QuartoscError as exc:
        return rows, [(float(l), pert_id, type(exc).__name__) for l in grid], checks
    check_lams = set(np.sort(grid)[:2]) if cfg.cross_check and cfg.use_dyadic else set()
    for lam in grid:
        lam = float(lam)
        try:
            if cfg.use_dyadic:
                val = dyadic_integrate(tay, cfg.form, amp, lam, cfg.dyadic).total
            else:
                val = integrate_2d(full, amp, lam, tol=cfg.dyadic.quad_tol).value
            if lam in check_lams:
                direct = integrate_2d(full, amp, lam, tol=cfg.dyadic.quad_tol).value
                rel = abs(val - direct) / max(abs(direct), 1e-300)
                checks.append((lam, pert_id, rel))
            aj = abs(val)
            rows.append(
                SweepRow(
                    lam=lam,
                    pert_id=pert_id,
                    abs_j=aj,
                    normalized=math.sqrt(lam) * aj / math.log(2.0 + lam),
                )
            )
        except QuartoscError as exc:
            fails.append((lam, pert_id, type(exc).__name__))
    return rows, fails, checks


def uniform_sweep(cfg: SweepConfig) -> SweepResult:
    """Run the full (lambda x perturbation) grid and fit the sup curve.

    Perturbations are drawn up front from one seeded stream, so results are
    identical no matter how many worker threads execute the columns
    (QUARTOSC_THREADS, default 1).
    """
    grid = cfg.lambda_grid()
    amp = bump_amplitude(cfg.amp_center, cfg.amp_radius)
    rng = np.random.default_rng(cfg.seed)
    tasks: list[tuple[int, BivarPoly | None]] = []
    if cfg.include_zero:
        tasks.append((0, None))
    for i in range(cfg.n_perturbations):
        tasks.append((i + 1, sample_perturbation(cfg.epsilon, cfg.box, rng)))
    if not tasks:
        raise ValueError("sweep has no perturbations and include_zero is off")

    threads = max(1, int(os.environ.get("QUARTOSC_THREADS", "1")))
    if threads > 1 and len(tasks) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            outs = list(
                pool.map(lambda t: _sweep_column(cfg, amp, grid, t[0], t[1]), tasks)
            )
    else:
        outs = [_sweep_column(cfg, amp, grid, pid, p) for pid, p in tasks]

    rows = sorted(
        (r for out in outs for r in out[0]), key=lambda r: (r.lam, r.pert_id)
    )
    failures = sorted(
        (f for out in outs for f in out[1]), key=lambda f: (f[0], f[1])
    )
    checks = sorted(
        (c for out in outs for c in out[2]), key=lambda c: (c[0], c[1])
    )

    failed_lams = {f[0] for f in failures}
    sup_curve = []
    for lam in grid:
        lam = float(lam)
        col = [r for r in rows if r.lam == lam]
        if col:
            sup_curve.append(
                SupPoint(
                    lam=lam,
                    abs_j=max(r.abs_j for r in col),
                    normalized=max(r.normalized for r in col),
                )
            )
    fit = None
    complete = [p for p in sup_curve if p.lam not in failed_lams]
    try:
        fit = decay_fit([(p.lam, p.abs_j) for p in complete])
    except (InsufficientRange, NonPositiveMagnitude):
        fit = None

    return SweepResult(
        rows=tuple(rows),
        sup_curve=tuple(sup_curve),
        fit=fit,
        failures=tuple(failures),
        cross_checks=tuple(checks),
        amp_c1=amp.c1_norm(),
        amp_c2=amp.c2_norm(),
    )


# ---------------------------------------------------------------------------
# Degenerate-family limit statistic
# ---------------------------------------------------------------------------


def limit_check(
    f_pi: QuarticForm,
    amp: BumpAmplitude,
    lambda_grid,
    cfg: DyadicConfig | None = None,
    magnitudes=None,
) -> tuple[float, float]:
    """Track sqrt(lambda) |J| / ln(lambda) along the grid.

    Returns (value at the largest lambda, ratio between the statistic at the
    top and one decade below, the latter located by geometric interpolation
    on the grid). A ratio near 1 certifies convergence to a nonzero limit;
    a pure power-law phase pushes the ratio down like ln(lambda/10)/ln(lambda).
    ``magnitudes`` may supply precomputed |J| values for the grid (the sweep
    caches them); otherwise each is computed through the decomposition.
    """
    grid = np.sort(np.asarray(lambda_grid, dtype=float))
    if grid.size < 2 or grid.min() < 2:
        raise InsufficientRange("limit_check needs a grid of lambdas >= 2")
    if grid.max() < 100.0 * grid.min() * (1.0 - 1e-9):
        raise InsufficientRange("limit_check needs at least two decades of lambda")
    cfg = cfg or DyadicConfig()
    if magnitudes is None:
        tay = taylor_data(f_pi.to_poly(), None, (0.0, 0.0))
        mags = np.array(
            [abs(dyadic_integrate(tay, f_pi, amp, float(l), cfg).total) for l in grid]
        )
    else:
        mags = np.asarray(magnitudes, dtype=float)
        if mags.shape != grid.shape:
            raise ValueError("magnitudes must match the lambda grid")
    if (mags <= 0).any():
        raise NonPositiveMagnitude("limit_check requires positive magnitudes")
    stat = np.sqrt(grid) * mags / np.log(grid)
    x = np.log(grid)
    y = np.log(stat)
    target = x[-1] - math.log(10.0)
    prev = float(np.exp(np.interp(target, x, y)))
    c_estimate = float(stat[-1])
    return c_estimate, c_estimate / prev


# ---------------------------------------------------------------------------
# The one-dimensional cubic family
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AiryRow:
    lam: float
    sigma: float
    abs_j: float
    ratio: float  # abs_j / envelope


@dataclass(frozen=True)
class AirySweepResult:
    c: float  # fitted envelope constant: max ratio over the grid
    rows: tuple[AiryRow, ...]
    base_ratio: float  # ratio at (smallest lambda, sigma nearest 0)
    sanity_ok: bool  # c <= 10 * base_ratio

    def column(self, sigma: float) -> list[AiryRow]:
        return [r for r in self.rows if r.sigma == sigma]


def _airy_value(lam: float, sigma: float, amp: Bump1D, tol: float, cfg) -> float:
    res = integrate_1d([0.0, float(sigma), 0.0, 1.0], amp, lam, tol=tol, cfg=cfg)
    return abs(res.value)


def airy_sweep(lambda_grid, sigma_grid, amp: Bump1D, tol: float = 1e-10, cfg=None) -> AirySweepResult:
    """Measure |J| for the phase x^3 + sigma x against the uniform envelope.

    The fitted constant is the max of |J|/envelope over the grid, so the
    envelope inequality holds on the grid by construction; the result is
    only meaningful if the constant is moderate, recorded as ``sanity_ok``
    (within 10x of the ratio at the base point).
    """
    lams = [float(l) for l in lambda_grid]
    sigmas = [float(s) for s in sigma_grid]
    if not lams or not sigmas:
        raise ValueError("grids must be nonempty")
    if min(lams) < 2:
        raise ValueError("lambda grid must start at 2 or above")
    rows = []
    for lam in sorted(lams):
        for sigma in sorted(sigmas):
            aj = _airy_value(lam, sigma, amp, tol, cfg)
            rows.append(
                AiryRow(lam=lam, sigma=sigma, abs_j=aj, ratio=aj / airy_envelope(lam, sigma))
            )
    c = max(r.ratio for r in rows)
    base_sigma = min(sigmas, key=abs)
    base_lam = min(lams)
    base = next(r for r in rows if r.lam == base_lam and r.sigma == base_sigma)
    return AirySweepResult(
        c=c, rows=tuple(rows), base_ratio=base.ratio, sanity_ok=c <= 10.0 * base.ratio
    )


def airy_column_slope(result: AirySweepResult, sigma: float) -> float:
    """Least-squares slope of log|J| against log(lambda) for one sigma column."""
    col = result.column(sigma)
    if len(col) < 2:
        raise InsufficientRange("column slope needs at least two lambda points")
    x = np.log([r.lam for r in col])
    y = np.log([r.abs_j for r in col])
    coef = np.polynomial.polynomial.polyfit(x, y, 1)
    return float(coef[1])


def airy_pair_exponent(
    amp: Bump1D,
    lam_lo: float,
    lam_hi: float,
    sigma_abs: float,
    windows: int = 4,
    points: int = 9,
    periods: float = 3.0,
    tol: float = 1e-10,
    cfg=None,
) -> float:
    """Decay exponent at fixed |sigma| > 0, interference-averaged.

    For sigma = -|sigma| the two stationary phase contributions beat against
    each other with lambda-period 2 pi / (phase gap); pointwise slopes are
    dominated by that oscillation. This estimator takes, at each of several
    window centers spanning [lam_lo, lam_hi], the RMS over a window a few
    beat periods wide of sup over sigma = +-|sigma| of |J|, and returns the
    log-log slope of those RMS values.
    """
    if not (sigma_abs > 0):
        raise ValueError("sigma_abs must be positive")
    if not (lam_hi > lam_lo >= 2):
        raise InsufficientRange("need lam_hi > lam_lo >= 2")
    # stationary values of x^3 - |sigma| x differ by 4 |sigma|^(3/2) / (3 sqrt 3)
    gap = 4.0 * sigma_abs**1.5 / (3.0 * math.sqrt(3.0))
    period = 2.0 * math.pi / gap
    centers = np.geomspace(lam_lo, lam_hi, windows)
    offsets = np.linspace(-0.5 * periods, 0.5 * periods, points) * period
    rms = []
    for lc in centers:
        vals = []
        for off in offsets:
            lam = float(lc + off)
            m = max(
                _airy_value(lam, -sigma_abs, amp, tol, cfg),
                _airy_value(lam, sigma_abs, amp, tol, cfg),
            )
            vals.append(m * m)
        rms.append(math.sqrt(sum(vals) / len(vals)))
    x = np.log(centers)
    y = np.log(rms)
    coef = np.polynomial.polynomial.polyfit(x, y, 1)
    return float(coef[1])
