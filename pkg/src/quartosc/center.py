"""Centering: the shift that removes the mixed cubic Taylor terms.

For a phase p near a nondegenerate quartic, there is a unique small shift z
such that the recentered phase p(y + z) has vanishing y1^2 y2 and y1 y2^2
Taylor coefficients. That shift is the natural expansion center for the
scaling analysis downstream (the quasi-distance deliberately omits those two
coefficients). This module finds z by a damped Newton iteration on the
two-component residual

    Phi(z) = (c21(z), c12(z)),

where c_ab(z) is the standard Taylor coefficient of y1^a y2^b of p(y + z).
The Jacobian is assembled exactly from the fourth-order coefficients of the
recentered phase:

    d c21 / d z = (3 c31, 2 c22),   d c12 / d z = (2 c22, 3 c13),

which follows from differentiating the shifted expansion term by term. The
Jacobian's nondegeneracy is a property of the quartic part; it is checked
per instance (condition number) rather than assumed.

Polynomial phases use exact binomial recentering; other callables fall back
to fourth-order central finite differences with step 1e-3, the balance
point between truncation and rounding for third and fourth derivatives in
double precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DifferentiationFailure, NoConvergence, SingularJacobian
from .poly import BivarPoly, Box

__all__ = ["CenterResult", "mixed_cubic_coeffs", "newton_center"]


@dataclass(frozen=True)
class CenterResult:
    z: tuple[float, float]
    iterations: int
    residual: float


# 4th-order central stencils: order -> (offsets, weights, h-power)
_STENCILS = {
    1: ((-2, -1, 1, 2), (1.0 / 12, -8.0 / 12, 8.0 / 12, -1.0 / 12), 1),
    2: ((-2, -1, 0, 1, 2), (-1.0 / 12, 16.0 / 12, -30.0 / 12, 16.0 / 12, -1.0 / 12), 2),
    3: (
        (-3, -2, -1, 1, 2, 3),
        (1.0 / 8, -1.0, 13.0 / 8, -13.0 / 8, 1.0, -1.0 / 8),
        3,
    ),
}

_FD_STEP = 1e-3


def _fd_mixed(phase, z: tuple[float, float], ord1: int, ord2: int, h: float = _FD_STEP) -> float:
    """Central-difference mixed derivative d^(ord1+ord2) phase / dx1^ord1 dx2^ord2 at z."""
    off1, w1, p1 = _STENCILS[ord1]
    off2, w2, p2 = _STENCILS[ord2]
    acc = 0.0
    for o1, a in zip(off1, w1):
        for o2, b in zip(off2, w2):
            try:
                v = float(phase(z[0] + o1 * h, z[1] + o2 * h))
            except Exception as exc:  # noqa: BLE001 - surfaced as a domain error
                raise DifferentiationFailure(
                    f"phase evaluation failed at offset ({o1}, {o2}): {exc}"
                ) from exc
            if not math.isfinite(v):
                raise DifferentiationFailure("phase returned a non-finite value")
            acc += a * b * v
    return acc / h ** (p1 + p2)


def _cubic_and_quartic(phase, z: tuple[float, float]):
    """(c21, c12) residual plus the (c31, c22, c13) Jacobian ingredients at z."""
    if isinstance(phase, BivarPoly):
        sh = phase.shift(z[0], z[1])
        return (
            sh.coeff(2, 1),
            sh.coeff(1, 2),
            sh.coeff(3, 1),
            sh.coeff(2, 2),
            sh.coeff(1, 3),
        )
    if not callable(phase):
        raise DifferentiationFailure("phase must be a polynomial or a callable")
    # standard Taylor normalization: c_ab = D^(a,b) / (a! b!)
    c21 = _fd_mixed(phase, z, 2, 1) / 2.0
    c12 = _fd_mixed(phase, z, 1, 2) / 2.0
    c31 = _fd_mixed(phase, z, 3, 1) / 6.0
    c22 = _fd_mixed(phase, z, 2, 2) / 4.0
    c13 = _fd_mixed(phase, z, 1, 3) / 6.0
    return c21, c12, c31, c22, c13


def mixed_cubic_coeffs(phase, z: tuple[float, float]) -> tuple[float, float]:
    """Taylor coefficients of y1^2 y2 and y1 y2^2 of phase(. + z) at 0."""
    c21, c12, _, _, _ = _cubic_and_quartic(phase, z)
    return (c21, c12)


def newton_center(
    phase,
    z0: tuple[float, float] = (0.0, 0.0),
    tol: float = 1e-10,
    max_iter: int = 25,
    box: Box | None = None,
) -> CenterResult:
    """Find the shift z with mixed_cubic_coeffs(phase, z) = 0 within tol.

    Damped Newton from z0 (step halving, up to 20 halvings per iteration),
    iterates clamped to the search box. Raises SingularJacobian when the
    fourth-order coefficient matrix has condition number above 1e12, and
    NoConvergence (with the best residual) when max_iter is exhausted.
    """
    if not (tol > 0):
        raise ValueError("tol must be positive")
    box = box or Box()
    w = box.half_width
    z = np.clip(np.asarray(z0, dtype=float), -w, w)

    c21, c12, c31, c22, c13 = _cubic_and_quartic(phase, (z[0], z[1]))
    res = np.array([c21, c12])
    rn = float(np.abs(res).max())
    for it in range(max_iter):
        if rn <= tol:
            return CenterResult(z=(float(z[0]), float(z[1])), iterations=it, residual=rn)
        jac = np.array([[3.0 * c31, 2.0 * c22], [2.0 * c22, 3.0 * c13]])
        cond = float(np.linalg.cond(jac))
        if not math.isfinite(cond) or cond > 1e12:
            raise SingularJacobian(
                f"fourth-order coefficient matrix is numerically singular (cond={cond:.3e})"
            )
        step = np.linalg.solve(jac, res)
        damp = 1.0
        accepted = False
        for _ in range(20):
            zn = np.clip(z - damp * step, -w, w)
            c21n, c12n, c31n, c22n, c13n = _cubic_and_quartic(phase, (zn[0], zn[1]))
            res_n = np.array([c21n, c12n])
            rn_n = float(np.abs(res_n).max())
            if rn_n < rn:
                z, res, rn = zn, res_n, rn_n
                c21, c12, c31, c22, c13 = c21n, c12n, c31n, c22n, c13n
                accepted = True
                break
            damp *= 0.5
        if not accepted:
            break
    if rn <= tol:
        return CenterResult(z=(float(z[0]), float(z[1])), iterations=max_iter, residual=rn)
    raise NoConvergence(
        f"centering stalled at residual {rn:.3e} (tol {tol:g})", residual=rn
    )
