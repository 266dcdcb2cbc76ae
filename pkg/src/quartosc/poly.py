"""Sparse bivariate polynomials and Taylor bookkeeping.

Conventions used throughout the package:

* A polynomial is a finite sum ``c[i,j] * x1^i * x2^j`` stored sparsely.
* Taylor coefficients are always normalized the standard way,
  ``coeff(alpha) = D^alpha p / alpha!``, so a polynomial equals the Taylor
  expansion of itself with no extra prefactors anywhere.
* Evaluation is Horner-style per variable with exponents visited in sorted
  order, so results are bit-reproducible across runs.
* ``c_norm`` returns a rigorous upper bound for the C^N norm on a centered
  box (coefficient sums with falling-factorial derivative weights); a dense
  lattice maximum is available separately as a cross-check. Soundness is
  preferred over sharpness.

The quasi-distance ``quasi_distance`` measures how far a centered phase sits
from the unperturbed quartic along the anisotropic dilation
``(x1, x2) -> (r^(1/4) x1, r^(1/4) x2)``; it is 1-homogeneous under that
scaling (weight 3/4 on linear, 1/2 on quadratic, 1/4 on cubic coefficients).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

import numpy as np

from .errors import DifferentiationFailure

__all__ = [
    "Box",
    "BivarPoly",
    "TaylorData",
    "poly_from_text",
    "poly_to_text",
    "is_quasi_homogeneous",
    "c_norm",
    "c_norm_lattice",
    "taylor_data",
    "quasi_distance",
]


@dataclass(frozen=True)
class Box:
    """Centered square box [-half_width, half_width]^2."""

    half_width: float = 0.5

    def __post_init__(self):
        if not (self.half_width > 0):
            raise ValueError("box half_width must be positive")

    def grid(self, n: int) -> tuple[np.ndarray, np.ndarray]:
        """n x n lattice covering the closed box, endpoints included."""
        axis = np.linspace(-self.half_width, self.half_width, n)
        return np.meshgrid(axis, axis, indexing="ij")


class BivarPoly:
    """Immutable sparse polynomial in two variables.

    Terms are kept in a dict keyed by exponent pairs; zero coefficients are
    dropped on construction. All arithmetic is exact in float coefficient
    space (binomial integer weights are computed exactly).
    """

    __slots__ = ("_terms", "_grid_cache")

    def __init__(self, terms: dict[tuple[int, int], float] | None = None):
        clean: dict[tuple[int, int], float] = {}
        for (i, j), c in (terms or {}).items():
            if i < 0 or j < 0:
                raise ValueError("exponents must be nonnegative")
            c = float(c)
            if c != 0.0:
                clean[(int(i), int(j))] = c
        object.__setattr__(self, "_terms", clean)
        object.__setattr__(self, "_grid_cache", None)

    # -- construction helpers -------------------------------------------------

    @staticmethod
    def zero() -> "BivarPoly":
        return BivarPoly({})

    @staticmethod
    def constant(c: float) -> "BivarPoly":
        return BivarPoly({(0, 0): c})

    @staticmethod
    def monomial(i: int, j: int, c: float = 1.0) -> "BivarPoly":
        return BivarPoly({(i, j): c})

    # -- basic queries ---------------------------------------------------------

    @property
    def terms(self) -> dict[tuple[int, int], float]:
        return dict(self._terms)

    def sorted_terms(self) -> list[tuple[tuple[int, int], float]]:
        return sorted(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def coeff(self, i: int, j: int) -> float:
        return self._terms.get((i, j), 0.0)

    def total_degree(self) -> int:
        if not self._terms:
            return -1
        return max(i + j for i, j in self._terms)

    def min_degree(self) -> int:
        if not self._terms:
            return -1
        return min(i + j for i, j in self._terms)

    def max_abs_coeff(self) -> float:
        if not self._terms:
            return 0.0
        return max(abs(c) for c in self._terms.values())

    def __eq__(self, other) -> bool:
        return isinstance(other, BivarPoly) and self._terms == other._terms

    def __hash__(self):
        return hash(tuple(self.sorted_terms()))

    def __repr__(self) -> str:
        return f"BivarPoly({poly_to_text(self)!r})"

    # -- ring operations -------------------------------------------------------

    def __add__(self, other: "BivarPoly") -> "BivarPoly":
        out = dict(self._terms)
        for k, c in other._terms.items():
            s = out.get(k, 0.0) + c
            if s == 0.0:
                out.pop(k, None)
            else:
                out[k] = s
        return BivarPoly(out)

    def __sub__(self, other: "BivarPoly") -> "BivarPoly":
        return self + other.scaled(-1.0)

    def __mul__(self, other: "BivarPoly") -> "BivarPoly":
        out: dict[tuple[int, int], float] = {}
        for (i1, j1), c1 in self._terms.items():
            for (i2, j2), c2 in other._terms.items():
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, 0.0) + c1 * c2
        return BivarPoly(out)

    def scaled(self, a: float) -> "BivarPoly":
        return BivarPoly({k: a * c for k, c in self._terms.items()})

    def scale_vars(self, s1: float, s2: float | None = None) -> "BivarPoly":
        """p(s1*x1, s2*x2); s2 defaults to s1."""
        if s2 is None:
            s2 = s1
        return BivarPoly(
            {(i, j): c * s1**i * s2**j for (i, j), c in self._terms.items()}
        )

    def partial(self, axis: int, order: int = 1) -> "BivarPoly":
        """Exact partial derivative along axis 0 (x1) or 1 (x2)."""
        if axis not in (0, 1):
            raise ValueError("axis must be 0 or 1")
        cur = self._terms
        for _ in range(order):
            nxt: dict[tuple[int, int], float] = {}
            for (i, j), c in cur.items():
                if axis == 0 and i > 0:
                    nxt[(i - 1, j)] = nxt.get((i - 1, j), 0.0) + c * i
                elif axis == 1 and j > 0:
                    nxt[(i, j - 1)] = nxt.get((i, j - 1), 0.0) + c * j
            cur = nxt
        return BivarPoly(cur)

    def homogeneous_part(self, degree: int) -> "BivarPoly":
        return BivarPoly(
            {(i, j): c for (i, j), c in self._terms.items() if i + j == degree}
        )

    def degree_filter(self, lo: int = 0, hi: int | None = None) -> "BivarPoly":
        """Terms with lo <= total degree <= hi (hi=None means unbounded)."""
        return BivarPoly(
            {
                (i, j): c
                for (i, j), c in self._terms.items()
                if i + j >= lo and (hi is None or i + j <= hi)
            }
        )

    def shift(self, z1: float, z2: float) -> "BivarPoly":
        """Recentered polynomial q(y) = p(y1 + z1, y2 + z2), exact binomials."""
        out: dict[tuple[int, int], float] = {}
        for (i, j), c in self._terms.items():
            for a in range(i + 1):
                za = math.comb(i, a) * z1 ** (i - a)
                for b in range(j + 1):
                    w = c * za * math.comb(j, b) * z2 ** (j - b)
                    if w != 0.0:
                        k = (a, b)
                        out[k] = out.get(k, 0.0) + w
        return BivarPoly(out)

    def linear_substitute(self, m: np.ndarray) -> "BivarPoly":
        """p(M u) for a 2x2 matrix M acting on the variable column."""
        m = np.asarray(m, dtype=float)
        if m.shape != (2, 2):
            raise ValueError("m must be 2x2")
        l1 = BivarPoly({(1, 0): m[0, 0], (0, 1): m[0, 1]})
        l2 = BivarPoly({(1, 0): m[1, 0], (0, 1): m[1, 1]})
        # Cache powers of the two linear forms up to the needed degree.
        deg = self.total_degree()
        pow1 = [BivarPoly.constant(1.0)]
        pow2 = [BivarPoly.constant(1.0)]
        for _ in range(max(deg, 0)):
            pow1.append(pow1[-1] * l1)
            pow2.append(pow2[-1] * l2)
        out = BivarPoly.zero()
        for (i, j), c in self.sorted_terms():
            out = out + (pow1[i] * pow2[j]).scaled(c)
        return out

    # -- evaluation ------------------------------------------------------------

    def eval(self, x1: float, x2: float) -> float:
        """Scalar Horner evaluation, deterministic term order."""
        if not self._terms:
            return 0.0
        # Group by x1-exponent; Horner over sparse exponent gaps per variable.
        by_i: dict[int, list[tuple[int, float]]] = {}
        for (i, j), c in self.sorted_terms():
            by_i.setdefault(i, []).append((j, c))
        acc = 0.0
        prev_i: int | None = None
        for i in sorted(by_i, reverse=True):
            inner = 0.0
            prev_j: int | None = None
            for j, c in sorted(by_i[i], reverse=True):
                inner = c if prev_j is None else inner * x2 ** (prev_j - j) + c
                prev_j = j
            if prev_j:
                inner *= x2**prev_j
            acc = inner if prev_i is None else acc * x1 ** (prev_i - i) + inner
            prev_i = i
        if prev_i:
            acc *= x1**prev_i
        return float(acc)

    def eval_grid(self, x1: np.ndarray, x2: np.ndarray) -> np.ndarray:
        """Vectorized evaluation with cached power tables, fixed term order."""
        x1 = np.asarray(x1, dtype=float)
        x2 = np.asarray(x2, dtype=float)
        x1, x2 = np.broadcast_arrays(x1, x2)
        out = np.zeros(x1.shape, dtype=float)
        if not self._terms:
            return out
        max_i = max(i for i, _ in self._terms)
        max_j = max(j for _, j in self._terms)
        pows1 = _power_table(x1, max_i)
        pows2 = _power_table(x2, max_j)
        for (i, j), c in self.sorted_terms():
            out += c * pows1[i] * pows2[j]
        return out

    def __call__(self, x1, x2):
        if np.isscalar(x1) and np.isscalar(x2):
            return self.eval(float(x1), float(x2))
        return self.eval_grid(x1, x2)


def _power_table(x: np.ndarray, up_to: int) -> list[np.ndarray]:
    pows = [np.ones_like(x)]
    for _ in range(up_to):
        pows.append(pows[-1] * x)
    return pows


# -- text format ----------------------------------------------------------------

_TERM_RE = re.compile(
    r"^(?P<coeff>[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?"
    r"(?:\*?(?P<v1>x1)(?:\^(?P<e1>\d+))?)?"
    r"(?:\*?(?P<v2>x2)(?:\^(?P<e2>\d+))?)?$"
)


def poly_from_text(text: str) -> BivarPoly:
    """Parse a whitespace-insensitive sum of terms ``c*x1^i*x2^j``.

    The ``*`` separators and ``^1`` exponents may be omitted; coefficients
    may carry signs and exponent notation. Raises ValueError on anything
    that does not parse exactly.
    """
    compact = "".join(text.split())
    if not compact:
        raise ValueError("empty polynomial text")
    # Split into signed terms; +/- inside exponent notation stays glued.
    pieces: list[str] = []
    buf = ""
    for ch in compact:
        if ch in "+-" and buf and buf[-1].lower() != "e":
            pieces.append(buf)
            buf = ch
        else:
            buf += ch
    pieces.append(buf)
    terms: dict[tuple[int, int], float] = {}
    for piece in pieces:
        body = piece
        sign = 1.0
        if body and body[0] in "+-":
            sign = -1.0 if body[0] == "-" else 1.0
            body = body[1:]
        m = _TERM_RE.match(body)
        if not m or not body:
            raise ValueError(f"cannot parse term {piece!r}")
        if m.group("coeff") is None and m.group("v1") is None and m.group("v2") is None:
            raise ValueError(f"cannot parse term {piece!r}")
        c = float(m.group("coeff")) if m.group("coeff") is not None else 1.0
        i = int(m.group("e1")) if m.group("e1") else (1 if m.group("v1") else 0)
        j = int(m.group("e2")) if m.group("e2") else (1 if m.group("v2") else 0)
        key = (i, j)
        terms[key] = terms.get(key, 0.0) + sign * c
    return BivarPoly(terms)


def poly_to_text(p: BivarPoly) -> str:
    """Canonical text form, exponents sorted lexicographically."""
    if p.is_zero():
        return "0"
    parts = []
    for (i, j), c in p.sorted_terms():
        mono = ""
        if i:
            mono += f"x1^{i}" if i > 1 else "x1"
        if j:
            if mono:
                mono += "*"
            mono += f"x2^{j}" if j > 1 else "x2"
        if mono:
            coeff = "" if c == 1.0 else ("-" if c == -1.0 else repr(c) + "*")
        else:
            coeff = repr(c)
        parts.append(coeff + mono if mono else coeff)
    text = parts[0]
    for part in parts[1:]:
        text += part if part.startswith("-") else "+" + part
    return text


# -- norms -----------------------------------------------------------------------


def is_quasi_homogeneous(
    p: BivarPoly,
    weights: tuple[float, float] = (0.25, 0.25),
    degree: float = 1.0,
    tol: float = 1e-12,
) -> bool:
    """True iff every stored monomial x1^i x2^j has weighted degree
    w1*i + w2*j equal to ``degree`` within ``tol``.

    With the default weights (1/4, 1/4) and degree 1 this recognizes exactly
    the homogeneous quartics, the scaling class of all phase main parts here.
    The zero polynomial is quasi-homogeneous of every degree (vacuously).
    """
    w1, w2 = weights
    if not (w1 > 0 and w2 > 0):
        raise ValueError("weights must be positive")
    return all(abs(w1 * i + w2 * j - degree) <= tol for (i, j) in p._terms)


def c_norm(p: BivarPoly, n: int, box: Box, grid: int = 64) -> float:
    """Rigorous upper bound for max over the box of sum_{|alpha|<=n} |D^alpha p|.

    The bound is sum over alpha of sum over terms of
    |c| * falling(i, a1) * falling(j, a2) * w^(i+j-|alpha|), which dominates
    the true norm term by term. ``grid`` controls the lattice cross-check
    resolution used by :func:`c_norm_lattice`; it is accepted here so the two
    routes share a signature, and must be at least 16.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if grid < 16:
        raise ValueError("grid must be at least 16")
    w = box.half_width
    bound = 0.0
    for a1 in range(n + 1):
        for a2 in range(n + 1 - a1):
            for (i, j), c in p.sorted_terms():
                if a1 > i or a2 > j:
                    continue
                fall = math.perm(i, a1) * math.perm(j, a2)
                bound += abs(c) * fall * w ** (i + j - a1 - a2)
    return bound


def c_norm_lattice(p: BivarPoly, n: int, box: Box, grid: int = 64) -> float:
    """Dense-lattice maximum of sum_{|alpha|<=n} |D^alpha p| on the box.

    A lower bound for the true norm; used to cross-check :func:`c_norm`.
    """
    if grid < 16:
        raise ValueError("grid must be at least 16")
    x1, x2 = box.grid(grid)
    acc = np.zeros_like(x1)
    for a1 in range(n + 1):
        for a2 in range(n + 1 - a1):
            d = p.partial(0, a1).partial(1, a2)
            if d.is_zero():
                continue
            acc += np.abs(d.eval_grid(x1, x2))
    return float(acc.max())


# -- Taylor data and quasi-distance ------------------------------------------------

_S_KEYS = [(1, 0), (0, 1), (2, 0), (1, 1), (0, 2), (3, 0), (2, 1), (1, 2), (0, 3)]


@dataclass(frozen=True)
class TaylorData:
    """Taylor expansion of a full phase about an expansion center.

    ``s`` holds the standard-normalized coefficients for orders 1..3 keyed by
    exponent pair (the constant term is kept separately so recentered phases
    reproduce the original integrand exactly); ``quartic_part`` is the full
    degree-4 homogeneous part about the center; ``tail`` collects every term
    of degree >= 5 and ``remainder_bound`` dominates |tail| on the box.
    """

    center: tuple[float, float]
    s00: float
    s: dict[tuple[int, int], float]
    quartic_part: BivarPoly
    tail: BivarPoly
    remainder_bound: float
    box: Box = field(default_factory=Box)

    def coeff(self, i: int, j: int) -> float:
        return self.s.get((i, j), 0.0)

    def recentered_phase(self) -> BivarPoly:
        """Full phase in centered coordinates: p(y) = original(y + center)."""
        low = BivarPoly({(0, 0): self.s00, **self.s})
        return low + self.quartic_part + self.tail


def taylor_data(
    f_pi: BivarPoly,
    g_plus_f: BivarPoly | None,
    center: tuple[float, float],
    box: Box | None = None,
) -> TaylorData:
    """Expand f_pi + (g + F) about ``center`` and split by degree.

    Both inputs must be polynomials (the perturbations used throughout the
    package are polynomial stand-ins, which keeps every coefficient exact).
    Orders 1..3 populate ``s``; order 4 becomes ``quartic_part``; orders >= 5
    go to ``tail`` with a rigorous sup bound on the box.
    """
    box = box or Box()
    if not isinstance(f_pi, BivarPoly):
        raise DifferentiationFailure("quartic part must be a polynomial")
    if g_plus_f is not None and not isinstance(g_plus_f, BivarPoly):
        raise DifferentiationFailure(
            "perturbation must be polynomial; derivative oracle not available"
        )
    total = f_pi if g_plus_f is None else f_pi + g_plus_f
    shifted = total.shift(center[0], center[1])
    s = {k: shifted.coeff(*k) for k in _S_KEYS}
    tail = shifted.degree_filter(5)
    w = box.half_width
    rem = sum(abs(c) * w ** (i + j) for (i, j), c in tail.sorted_terms())
    return TaylorData(
        center=(float(center[0]), float(center[1])),
        s00=shifted.coeff(0, 0),
        s=s,
        quartic_part=shifted.homogeneous_part(4),
        tail=tail,
        remainder_bound=float(rem),
        box=box,
    )


# Exponent-pair -> homogeneity weight of the coefficient under the dilation.
_RHO_POWERS = {
    (1, 0): 4.0 / 3.0,
    (0, 1): 4.0 / 3.0,
    (2, 0): 2.0,
    (1, 1): 2.0,
    (0, 2): 2.0,
    (3, 0): 4.0,
    (0, 3): 4.0,
}


def quasi_distance(t: TaylorData) -> float:
    """Quasi-distance of a centered phase from its quartic part.

    rho = |s10|^(4/3) + |s01|^(4/3) + |s20|^2 + |s02|^2 + |s11|^2
        + |s30|^4 + |s03|^4.

    The mixed cubic coefficients s21, s12 do not enter; a correct centering
    step annihilates them. rho scales linearly under the anisotropic dilation
    (weights 3/4, 1/2, 1/4 on the coefficient groups).
    """
    rho = 0.0
    for key, power in _RHO_POWERS.items():
        rho += abs(t.coeff(*key)) ** power
    return rho
