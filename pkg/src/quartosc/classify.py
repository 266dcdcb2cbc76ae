"""Classification of binary quartic forms by their real projective roots.

A nonzero homogeneous quartic f(x1, x2) restricted to the unit circle is a
degree-4 trigonometric polynomial g(theta) = f(cos theta, sin theta); its
zeros come in antipodal pairs, so roots live on the projective circle
[0, pi). The classification pipeline here:

* ``circle_roots``: locate the distinct projective roots and their
  multiplicities (order of vanishing of g), via companion-matrix roots in
  two affine charts, Newton polish, and exact trigonometric derivatives.
* ``reduce_to_normal_form``: produce an invertible linear change of
  variables and a nonzero scale mapping f onto one of the model families
    u1^4 + mu u1^2 u2^2 + u2^4     (the two-parameter orbit, "Mu"),
    u1^2 (u1^2 + u2^2)             ("DegenPlus", one double root),
    u1^2 (u1^2 - u2^2)             ("DegenMinus", double root + two simple).
  Double-root cases are handled constructively (rotate, shear, scale); the
  generic case runs a damped Newton search over rotation + shear + axis
  scaling. Reduction is a search, not a closed formula: when no transform is
  found the failure is reported with the best residual, never hidden.
* ``oscillation_type``: the decay signature (beta, p) of the oscillatory
  integral with that phase: beta = -1/2 always, log power p = 0 for the
  Mu family with mu^2 != 4 and p = 1 for the degenerate families and the
  boundary mu^2 = 4.
* ``versality_check``: rank bookkeeping for the gradient-ideal slice inside
  the 10-dimensional space of polynomials of degree <= 3, against the fixed
  8-dimensional complement spanned by {1, x1, x2, x1^2, x2^2, x1x2, x1^3,
  x2^3}.

Transforms are never unique (the model families have symmetries); all
consumers should rely on the defining property, checked by
``NormalForm.pullback_residual``, not on any particular matrix.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import IllConditioned, MultiplicityTooHigh, ReductionFailed
from .poly import BivarPoly

__all__ = [
    "QuarticForm",
    "CircleRoot",
    "FormKind",
    "NormalForm",
    "OscillationType",
    "VersalityReport",
    "mu_form",
    "degen_plus_form",
    "degen_minus_form",
    "circle_roots",
    "reduce_to_normal_form",
    "oscillation_type",
    "versality_check",
]


@dataclass(frozen=True)
class QuarticForm:
    """Coefficients of a40*x1^4 + a31*x1^3*x2 + a22*x1^2*x2^2 + a13*x1*x2^3 + a04*x2^4."""

    a40: float
    a31: float
    a22: float
    a13: float
    a04: float

    def __post_init__(self):
        vals = (self.a40, self.a31, self.a22, self.a13, self.a04)
        if not any(v != 0.0 for v in vals):
            raise ValueError("quartic form must not be identically zero")

    @staticmethod
    def from_poly(p: BivarPoly) -> "QuarticForm":
        if p.is_zero() or p.homogeneous_part(4) != p:
            raise ValueError("polynomial is not homogeneous of degree 4")
        return QuarticForm(
            p.coeff(4, 0), p.coeff(3, 1), p.coeff(2, 2), p.coeff(1, 3), p.coeff(0, 4)
        )

    def to_poly(self) -> BivarPoly:
        return BivarPoly(
            {
                (4, 0): self.a40,
                (3, 1): self.a31,
                (2, 2): self.a22,
                (1, 3): self.a13,
                (0, 4): self.a04,
            }
        )

    def coeff_scale(self) -> float:
        return (
            abs(self.a40) + abs(self.a31) + abs(self.a22) + abs(self.a13) + abs(self.a04)
        )

    def transformed(self, m: np.ndarray) -> "QuarticForm":
        """Coefficients of x -> f(M x)."""
        return QuarticForm.from_poly(self.to_poly().linear_substitute(m))


def mu_form(mu: float) -> QuarticForm:
    return QuarticForm(1.0, 0.0, float(mu), 0.0, 1.0)


def degen_plus_form() -> QuarticForm:
    return QuarticForm(1.0, 0.0, 1.0, 0.0, 0.0)


def degen_minus_form() -> QuarticForm:
    return QuarticForm(1.0, 0.0, -1.0, 0.0, 0.0)


@dataclass(frozen=True)
class CircleRoot:
    """Projective root direction (cos angle, sin angle), angle in [0, pi)."""

    angle: float
    multiplicity: int


class FormKind(enum.Enum):
    MU = "Mu"
    DEGEN_PLUS = "DegenPlus"
    DEGEN_MINUS = "DegenMinus"


@dataclass(frozen=True, eq=False)
class NormalForm:
    """Witness of a reduction: f(transform @ u) / scale = representative(u)."""

    kind: FormKind
    mu: float | None
    transform: np.ndarray
    scale: float

    def __post_init__(self):
        if self.kind is FormKind.MU and self.mu is None:
            raise ValueError("Mu kind requires the mu parameter")
        if self.scale == 0.0:
            raise ValueError("scale must be nonzero")
        if abs(float(np.linalg.det(self.transform))) < 1e-14:
            raise ValueError("transform must be invertible")

    def representative(self) -> BivarPoly:
        if self.kind is FormKind.MU:
            return BivarPoly({(4, 0): 1.0, (2, 2): self.mu, (0, 4): 1.0})
        sign = 1.0 if self.kind is FormKind.DEGEN_PLUS else -1.0
        return BivarPoly({(4, 0): 1.0, (2, 2): sign})

    def pullback_residual(self, f: QuarticForm) -> float:
        """Max coefficient mismatch of f(T u)/scale against the representative."""
        q = f.to_poly().linear_substitute(self.transform).scaled(1.0 / self.scale)
        return (q - self.representative()).max_abs_coeff()


@dataclass(frozen=True)
class OscillationType:
    """Decay signature: |J| ~ lambda^beta * (log lambda)^p at worst."""

    beta: float
    p: int


@dataclass(frozen=True)
class VersalityReport:
    dim_ideal_slice: int
    dim_B: int
    dim_intersection: int
    dim_sum: int
    is_versal: bool


# ---------------------------------------------------------------------------
# Roots on the circle
# ---------------------------------------------------------------------------

# g(theta) = f(cos theta, sin theta) written as
#   A + B cos 2t + C sin 2t + D cos 4t + E sin 4t;
# differentiation acts exactly on (A, B, C, D, E).


def _fourier(f: QuarticForm) -> tuple[float, float, float, float, float]:
    a = 0.375 * (f.a40 + f.a04) + 0.125 * f.a22
    b = 0.5 * (f.a40 - f.a04)
    c = 0.25 * (f.a31 + f.a13)
    d = 0.125 * (f.a40 + f.a04) - 0.125 * f.a22
    e = 0.125 * (f.a31 - f.a13)
    return (a, b, c, d, e)


def _fourier_deriv(co):
    a, b, c, d, e = co
    return (0.0, 2.0 * c, -2.0 * b, 4.0 * e, -4.0 * d)


def _fourier_eval(co, theta: float) -> float:
    a, b, c, d, e = co
    return (
        a
        + b * math.cos(2.0 * theta)
        + c * math.sin(2.0 * theta)
        + d * math.cos(4.0 * theta)
        + e * math.sin(4.0 * theta)
    )


def _chart_candidates(coeffs, scale: float) -> list[float]:
    arr = np.asarray(coeffs, dtype=float)
    nz = np.nonzero(np.abs(arr) > 1e-13 * scale)[0]
    if nz.size == 0:
        return []
    arr = arr[nz[0] :]
    if arr.size <= 1:
        return []
    out = []
    for r in np.roots(arr):
        if abs(r.imag) <= 1e-6 * (1.0 + abs(r.real)):
            out.append(float(r.real))
    return out


def _circ_dist(t1: float, t2: float) -> float:
    d = abs(t1 - t2) % math.pi
    return min(d, math.pi - d)


def _newton_zero(co, co1, theta: float, iters: int = 40) -> float | None:
    """Polish a zero of the trig polynomial with coefficients ``co``."""
    for _ in range(iters):
        g = _fourier_eval(co, theta)
        g1 = _fourier_eval(co1, theta)
        if abs(g1) < 1e-300:
            return None
        step = g / g1
        theta -= step
        if abs(step) < 1e-15:
            break
    return theta


def circle_roots(f: QuarticForm, tol: float = 1e-7) -> list[CircleRoot]:
    """Distinct projective roots of f on the circle with multiplicities.

    Multiplicity m means g and its first m-1 angular derivatives vanish at
    the root within tol (relative to the coefficient scale, with a 4^k
    amplification allowance per derivative order) and the m-th does not.
    Root clusters that can be neither merged nor separated at tol raise
    IllConditioned rather than guessing.
    """
    if not (0.0 < tol <= 1e-4):
        raise ValueError("tol must lie in (0, 1e-4]")
    scale = f.coeff_scale()
    chain = [_fourier(f)]
    for _ in range(4):
        chain.append(_fourier_deriv(chain[-1]))

    def order(theta: float) -> int:
        m = 0
        while m < 5 and abs(_fourier_eval(chain[m], theta)) <= tol * scale * 4.0**m:
            m += 1
        return m

    candidates: list[float] = []
    # chart (t, 1): roots of a40 t^4 + a31 t^3 + a22 t^2 + a13 t + a04
    for t in _chart_candidates([f.a40, f.a31, f.a22, f.a13, f.a04], scale):
        candidates.append(math.atan2(1.0, t) % math.pi)
    # chart (1, u): roots of a04 u^4 + a13 u^3 + a22 u^2 + a31 u + a40
    for u in _chart_candidates([f.a04, f.a13, f.a22, f.a31, f.a40], scale):
        candidates.append(math.atan2(u, 1.0) % math.pi)

    accepted: list[list[float]] = []  # [angle, multiplicity]
    for theta0 in sorted(candidates):
        polished = []
        # pass 0 polishes g (quadratic for simple roots only); pass 1
        # polishes g', whose zero at a double root of g is simple, so it
        # localizes doubles to machine precision where pass 0 stalls at
        # the sqrt(eps) noise floor of the quadratic minimum
        for idx, (co, co1) in enumerate(((chain[0], chain[1]), (chain[1], chain[2]))):
            tp = _newton_zero(co, co1, theta0)
            if tp is None:
                continue
            tp %= math.pi
            if _circ_dist(tp, theta0) > 1e-3:
                continue  # polish drifted to a different feature
            m = order(tp)
            if m >= 5:
                raise IllConditioned(
                    "vanishing beyond quartic order; root structure unresolvable"
                )
            if m >= 1:
                polished.append((m, idx, tp))
        if not polished:
            continue
        m, _, tp = max(polished, key=lambda r: (r[0], r[1]))
        if math.pi - tp < 1e-9:
            tp = 0.0
        for rec in accepted:
            d = _circ_dist(rec[0], tp)
            if d <= 1e-9:
                rec[1] = max(rec[1], m)
                break
            if d <= 1e-6:
                raise IllConditioned(
                    f"root cluster near angle {tp:.6f} cannot be separated at tol={tol:g}"
                )
        else:
            accepted.append([tp, m])

    total = sum(m for _, m in accepted)
    if total > 4:
        raise IllConditioned(
            f"detected multiplicities sum to {total} > 4; input is numerically degenerate"
        )
    return [CircleRoot(angle=t, multiplicity=int(m)) for t, m in sorted(accepted)]


# ---------------------------------------------------------------------------
# Reduction to normal form
# ---------------------------------------------------------------------------


def _rotation(phi: float) -> np.ndarray:
    c, s = math.cos(phi), math.sin(phi)
    return np.array([[c, -s], [s, c]])


def _verified(f: QuarticForm, kind: FormKind, mu: float | None, transform: np.ndarray,
              scale: float, tol: float) -> NormalForm:
    nf = NormalForm(kind=kind, mu=mu, transform=transform, scale=scale)
    resid = nf.pullback_residual(f)
    allowed = tol * max(1.0, abs(mu) if mu is not None else 1.0)
    if resid > allowed:
        raise ReductionFailed(
            f"constructed transform misses the {kind.value} representative "
            f"(residual {resid:.3e} > {allowed:.3e})",
            residual=resid,
        )
    return nf


def _reduce_two_doubles(f: QuarticForm, doubles, tol: float) -> NormalForm:
    # f = c * (L1 L2)^2 with L_k the linear form vanishing on root k; send
    # the root pair to the pair u1 = +-u2, which is the mu = -2 model
    # (u1^2 - u2^2)^2.
    v = [np.array([math.cos(r.angle), math.sin(r.angle)]) for r in doubles]
    ell = np.array([[-v[0][1], v[0][0]], [-v[1][1], v[1][0]]])
    target = np.array([[1.0, -1.0], [1.0, 1.0]])
    transform = np.linalg.solve(ell, target)
    x0 = v[0] + v[1]
    x0 /= np.hypot(x0[0], x0[1])
    l1 = float(ell[0] @ x0)
    l2 = float(ell[1] @ x0)
    c = f.to_poly().eval(float(x0[0]), float(x0[1])) / (l1**2 * l2**2)
    return _verified(f, FormKind.MU, -2.0, transform, c, tol)


def _reduce_one_double(f: QuarticForm, double: CircleRoot, tol: float) -> NormalForm:
    scale = f.coeff_scale()
    # rotate the double root to the direction (0, 1) so u1^2 factors out
    rot = _rotation(double.angle - 0.5 * math.pi)
    b = f.transformed(rot)
    if abs(b.a22) <= 1e-9 * scale:
        raise MultiplicityTooHigh(
            "double root has third-order contact; outside the two-family reduction"
        )
    gamma = b.a31 / (2.0 * b.a22)
    head = b.a40 - b.a31**2 / (4.0 * b.a22)
    if abs(head) <= 1e-9 * scale:
        raise ReductionFailed(
            "quadratic cofactor degenerates to a second double root", residual=abs(head)
        )
    shear = np.array([[1.0, 0.0], [-gamma, 1.0]])
    stretch = np.diag([1.0, math.sqrt(abs(head / b.a22))])
    transform = rot @ shear @ stretch
    kind = FormKind.DEGEN_PLUS if b.a22 * head > 0 else FormKind.DEGEN_MINUS
    return _verified(f, kind, None, transform, head, tol)


def _mu_residual(p: BivarPoly, v: np.ndarray):
    transform = _rotation(v[0]) @ np.array([[1.0, v[1]], [0.0, math.exp(v[2])]])
    b = p.linear_substitute(transform)
    r = np.array(
        [b.coeff(3, 1), b.coeff(1, 3), b.coeff(4, 0) - b.coeff(0, 4)]
    )
    return r, b, transform


def _reduce_mu_search(f: QuarticForm, tol: float) -> NormalForm:
    scale = f.coeff_scale()
    p = f.to_poly()
    beta_seeds = [0.0]
    if abs(f.a40) > 1e-12 * scale and abs(f.a04) > 1e-12 * scale:
        beta_seeds.append(0.25 * math.log(abs(f.a40 / f.a04)))
    best = math.inf
    for theta0 in np.linspace(0.0, math.pi, 12, endpoint=False):
        for lb0 in beta_seeds:
            v = np.array([theta0, 0.0, lb0])
            r, b, transform = _mu_residual(p, v)
            rn = float(np.linalg.norm(r))
            for _ in range(60):
                if rn <= 1e-12 * scale:
                    break
                jac = np.empty((3, 3))
                h = 1e-7
                for k in range(3):
                    v2 = v.copy()
                    v2[k] += h
                    r2, _, _ = _mu_residual(p, v2)
                    jac[:, k] = (r2 - r) / h
                try:
                    step = np.linalg.solve(jac, r)
                except np.linalg.LinAlgError:
                    break
                improved = False
                damp = 1.0
                for _ in range(26):
                    vn = v - damp * step
                    if abs(vn[2]) > 30.0:  # keep the stretch factor finite
                        damp *= 0.5
                        continue
                    r_new, b_new, t_new = _mu_residual(p, vn)
                    rn_new = float(np.linalg.norm(r_new))
                    if rn_new < rn * (1.0 - 1e-4 * damp):
                        v, r, b, transform, rn = vn, r_new, b_new, t_new, rn_new
                        improved = True
                        break
                    damp *= 0.5
                if not improved:
                    break
            best = min(best, rn)
            if rn <= 1e-12 * scale and abs(b.coeff(4, 0)) > 1e-6 * scale:
                s = b.coeff(4, 0)
                mu = b.coeff(2, 2) / s
                return _verified(f, FormKind.MU, mu, transform, s, tol)
    raise ReductionFailed(
        f"no transform to the two-parameter family found (best residual {best:.3e})",
        residual=best,
    )


def reduce_to_normal_form(f: QuarticForm, tol: float = 1e-8) -> NormalForm:
    """Reduce f to one of the model families by an invertible linear map.

    Requires every circle root to have multiplicity at most 2. Double-root
    inputs are reduced constructively; root-free and simple-root inputs go
    through a multi-start Newton search for the rotation/shear/scaling that
    kills the odd coefficients and equalizes the ends. The returned witness
    satisfies f(transform @ u) / scale = representative within tol,
    verified; otherwise ReductionFailed carries the best residual.
    """
    roots = circle_roots(f, 1e-7)
    if any(r.multiplicity >= 3 for r in roots):
        raise MultiplicityTooHigh(
            "a root of multiplicity >= 3 is outside the reduction families"
        )
    doubles = [r for r in roots if r.multiplicity == 2]
    if len(doubles) == 2:
        return _reduce_two_doubles(f, doubles, tol)
    if len(doubles) == 1:
        return _reduce_one_double(f, doubles[0], tol)
    return _reduce_mu_search(f, tol)


# ---------------------------------------------------------------------------
# Oscillation type and versality
# ---------------------------------------------------------------------------

_MU_LOG_TOL = 1e-8


def oscillation_type(nf: NormalForm) -> OscillationType:
    """Decay signature of the family: beta = -1/2 throughout; the log power
    is 0 on the Mu family away from mu^2 = 4 and 1 on the boundary and the
    degenerate families (for the degenerate families the log is attained;
    at mu^2 = 4 it is an upper bound)."""
    if nf.kind is FormKind.MU and abs(nf.mu * nf.mu - 4.0) > _MU_LOG_TOL:
        return OscillationType(beta=-0.5, p=0)
    return OscillationType(beta=-0.5, p=1)


_E1_MONOS = sorted((i, j) for i in range(4) for j in range(4) if i + j <= 3)
_B_MONOS = [(0, 0), (1, 0), (0, 1), (2, 0), (0, 2), (1, 1), (3, 0), (0, 3)]


def _rank(m: np.ndarray) -> int:
    if m.size == 0:
        return 0
    s = np.linalg.svd(m, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int((s > 1e-10 * s[0]).sum())


def versality_check(f: QuarticForm) -> VersalityReport:
    """Rank bookkeeping for the gradient span of f inside cubics.

    Works in the 10-dimensional space of polynomials of total degree <= 3.
    The gradient slice is span{d f/dx1, d f/dx2} (products with nonconstant
    factors leave the space, so the slice is exactly this span); B is the
    fixed 8-dimensional monomial complement. Ranks use a singular-value
    cutoff of 1e-10 relative to the largest singular value, with gradient
    columns normalized so the cutoff is scale-free.
    """
    p = f.to_poly()
    cols = []
    for axis in (0, 1):
        d = p.partial(axis)
        vec = np.array([d.coeff(i, j) for (i, j) in _E1_MONOS], dtype=float)
        norm = float(np.linalg.norm(vec))
        cols.append(vec / norm if norm > 0 else vec)
    m_ideal = np.column_stack(cols)
    m_b = np.zeros((len(_E1_MONOS), len(_B_MONOS)))
    for col, mono in enumerate(_B_MONOS):
        m_b[_E1_MONOS.index(mono), col] = 1.0
    dim_ideal = _rank(m_ideal)
    dim_b = _rank(m_b)
    dim_sum = _rank(np.hstack([m_ideal, m_b]))
    dim_int = dim_ideal + dim_b - dim_sum
    return VersalityReport(
        dim_ideal_slice=dim_ideal,
        dim_B=dim_b,
        dim_intersection=dim_int,
        dim_sum=dim_sum,
        is_versal=(dim_int == 0 and dim_sum == len(_E1_MONOS)),
    )
