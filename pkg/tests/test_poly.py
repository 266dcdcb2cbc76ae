"""Polynomial layer: arithmetic, Taylor machinery, norms, quasi-distance."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quartosc import (
    BivarPoly,
    Box,
    TaylorData,
    c_norm,
    is_quasi_homogeneous,
    poly_from_text,
    poly_to_text,
    quasi_distance,
    taylor_data,
)


def P(text):
    return poly_from_text(text)


# -- independent oracle helpers (plain dict arithmetic, no package code) -----


def _oracle_eval(terms, x1, x2):
    return sum(c * x1**i * x2**j for (i, j), c in terms.items())


def _oracle_deriv(terms, axis):
    out = {}
    for (i, j), c in terms.items():
        if axis == 0 and i > 0:
            out[(i - 1, j)] = out.get((i - 1, j), 0.0) + c * i
        elif axis == 1 and j > 0:
            out[(i, j - 1)] = out.get((i, j - 1), 0.0) + c * j
    return out


def _oracle_cn_lattice(terms, n_ord, w, grid):
    """Dense-lattice maximum of sum_{|alpha|<=N} |D^alpha p|."""
    xs = np.linspace(-w, w, grid)
    total = np.zeros((grid, grid))
    x1, x2 = np.meshgrid(xs, xs, indexing="ij")
    for a in range(n_ord + 1):
        for b in range(n_ord + 1 - a):
            d = dict(terms)
            for _ in range(a):
                d = _oracle_deriv(d, 0)
            for _ in range(b):
                d = _oracle_deriv(d, 1)
            vals = np.zeros_like(x1)
            for (i, j), c in d.items():
                vals += c * x1**i * x2**j
            total += np.abs(vals)
    return float(total.max())


# -- evaluation ---------------------------------------------------------------


def test_eval_quartic_sum_at_ones():
    assert P("x1^4+x2^4").eval(1.0, 1.0) == 2.0


def test_eval_zero_polynomial():
    assert BivarPoly.zero().eval(0.3, -17.0) == 0.0


def test_eval_degenerate_form_on_root_line():
    p = P("x1^4-x1^2*x2^2")  # x1^2 (x1^2 - x2^2)
    assert p.eval(1.0, 1.0) == 0.0


coeff = st.floats(-10.0, 10.0, allow_nan=False, allow_infinity=False)
exponent = st.integers(0, 6)
poly_terms = st.dictionaries(
    st.tuples(exponent, exponent), coeff, min_size=0, max_size=8
)
point = st.floats(-3.0, 3.0, allow_nan=False, allow_infinity=False)


@given(poly_terms, poly_terms, point, point)
def test_eval_is_additive(t1, t2, x1, x2):
    p, q = BivarPoly(t1), BivarPoly(t2)
    lhs = (p + q).eval(x1, x2)
    rhs = p.eval(x1, x2) + q.eval(x1, x2)
    scale = sum(
        abs(c) * max(1.0, abs(x1)) ** i * max(1.0, abs(x2)) ** j
        for (i, j), c in list(t1.items()) + list(t2.items())
    )
    assert abs(lhs - rhs) <= 1e-12 * (1.0 + scale)


@given(poly_terms, point, point)
def test_eval_matches_naive_expansion(terms, x1, x2):
    p = BivarPoly(terms)
    want = _oracle_eval(terms, x1, x2)
    scale = sum(
        abs(c) * max(1.0, abs(x1)) ** i * max(1.0, abs(x2)) ** j
        for (i, j), c in terms.items()
    )
    assert abs(p.eval(x1, x2) - want) <= 1e-12 * (1.0 + scale)


def test_eval_grid_agrees_with_scalar_eval():
    p = P("1+2*x1-0.5*x2^3+x1^2*x2^2")
    xs = np.linspace(-2, 2, 7)
    g = p.eval_grid(xs[:, None], xs[None, :])
    for a in range(7):
        for b in range(7):
            assert g[a, b] == pytest.approx(p.eval(xs[a], xs[b]), rel=1e-14, abs=1e-14)


# -- formal calculus ----------------------------------------------------------


def test_partial_of_mu_family_member():
    p = P("x1^4+x1^2*x2^2")
    assert p.partial(0) == P("4*x1^3+2*x1*x2^2")


def test_partial_annihilates_missing_variable():
    assert P("x1^4").partial(1).is_zero()


def test_partial_of_degenerate_form():
    assert P("x1^4-x1^2*x2^2").partial(0) == P("4*x1^3-2*x1*x2^2")


def test_homogeneous_part_picks_degree_four():
    p = P("x1+x1^4")
    assert p.homogeneous_part(4) == P("x1^4")
    assert p.homogeneous_part(2).is_zero()


def test_homogeneous_part_keeps_full_layer():
    p = P("x1^3*x2+x2^4")
    assert p.homogeneous_part(4) == p


@given(poly_terms, st.integers(0, 8))
def test_partial_of_homogeneous_part_drops_one_degree(terms, d):
    layer = BivarPoly(terms).homogeneous_part(d)
    der = layer.partial(0)
    assert all(i + j == d - 1 for (i, j) in der.terms)


def test_euler_identity_for_homogeneous_quartics():
    rng = np.random.default_rng(7)
    for _ in range(100):
        c = rng.uniform(-2, 2, size=5)
        p = BivarPoly({(4, 0): c[0], (3, 1): c[1], (2, 2): c[2], (1, 3): c[3], (0, 4): c[4]})
        x = rng.uniform(-2, 2, size=2)
        lhs = x[0] * p.partial(0).eval(*x) + x[1] * p.partial(1).eval(*x)
        rhs = 4.0 * p.eval(*x)
        assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(rhs))


# -- substitutions ------------------------------------------------------------


def test_shift_matches_pointwise_composition():
    rng = np.random.default_rng(3)
    p = P("x1^4+0.3*x1^3*x2-2*x2^4+x1-0.25")
    q = p.shift(0.7, -1.2)
    for _ in range(50):
        x = rng.uniform(-2, 2, size=2)
        assert q.eval(*x) == pytest.approx(p.eval(x[0] + 0.7, x[1] - 1.2), rel=1e-12, abs=1e-12)


def test_linear_substitute_matches_pointwise_composition():
    rng = np.random.default_rng(4)
    p = P("x1^4+x1^2*x2^2+x2^4+0.1*x1^3")
    m = np.array([[0.8, -0.6], [0.6, 0.8]])
    q = p.linear_substitute(m)
    for _ in range(50):
        x = rng.uniform(-2, 2, size=2)
        y = m @ x
        assert q.eval(*x) == pytest.approx(p.eval(y[0], y[1]), rel=1e-12, abs=1e-12)


def test_scale_vars_matches_pointwise_composition():
    p = P("x1^4+x1*x2^3-2")
    q = p.scale_vars(0.5, 3.0)
    assert q.eval(1.0, 1.0) == pytest.approx(p.eval(0.5, 3.0), rel=1e-14)


# -- quasi-homogeneity --------------------------------------------------------


def test_quartic_sum_is_quasi_homogeneous_degree_one():
    assert is_quasi_homogeneous(P("x1^4+x2^4"), (0.25, 0.25), 1.0)


def test_mixed_degrees_are_not_quasi_homogeneous():
    assert not is_quasi_homogeneous(P("x1^4+x2^3"), (0.25, 0.25), 1.0)


def test_zero_polynomial_is_vacuously_quasi_homogeneous():
    assert is_quasi_homogeneous(BivarPoly.zero(), (0.7, 0.2), 5.0)


def test_quasi_homogeneous_rejects_nonpositive_weights():
    with pytest.raises(ValueError):
        is_quasi_homogeneous(P("x1"), (0.0, 0.25), 1.0)


# -- C^N norms ----------------------------------------------------------------


def test_c_norm_of_zero():
    assert c_norm(BivarPoly.zero(), 8, Box()) == 0.0


def test_c_norm_linear_monomial_unit_box():
    # |x1| max 1 plus the constant derivative 1
    assert c_norm(P("x1"), 1, Box(1.0)) == pytest.approx(2.0, rel=1e-14)


def test_c_norm_quintic_monomial_frozen_value():
    # sum over k of 0.01 * 5!/(5-k)! * 0.5^(5-k), worked by hand
    p = P("0.01*x1^5")
    assert c_norm(p, 8, Box(0.5)) == pytest.approx(1.9784375, rel=1e-13)


def test_c_norm_quintic_dominates_dense_lattice():
    p = P("0.01*x1^5")
    dense = _oracle_cn_lattice(p.terms, 8, 0.5, 512)
    assert c_norm(p, 8, Box(0.5)) >= dense - 1e-12


def test_c_norm_dominates_lattice_for_random_polynomials():
    rng = np.random.default_rng(11)
    for _ in range(50):
        n_terms = rng.integers(1, 7)
        terms = {}
        for _ in range(n_terms):
            i, j = rng.integers(0, 6, size=2)
            terms[(int(i), int(j))] = float(rng.uniform(-1, 1))
        p = BivarPoly(terms)
        n_ord = int(rng.integers(0, 4))
        dense = _oracle_cn_lattice(p.terms, n_ord, 0.5, 64)
        assert c_norm(p, n_ord, Box()) >= dense - 1e-10


# -- Taylor data --------------------------------------------------------------


def test_taylor_data_pure_quartic_at_origin():
    t = taylor_data(P("x1^4+x2^4"), None, (0.0, 0.0))
    assert all(v == 0.0 for v in t.s.values())
    assert t.quartic_part == P("x1^4+x2^4")
    assert t.remainder_bound == 0.0


def test_taylor_data_linear_term():
    t = taylor_data(BivarPoly.zero(), P("x1"), (0.0, 0.0))
    assert t.coeff(1, 0) == 1.0
    assert sum(abs(v) for k, v in t.s.items() if k != (1, 0)) == 0.0


def test_taylor_data_shifted_quartic_binomial_ladder():
    h = 0.1
    t = taylor_data(P("x1^4+x2^4"), None, (h, 0.0))
    assert t.coeff(1, 0) == pytest.approx(4 * h**3, rel=1e-13)
    assert t.coeff(2, 0) == pytest.approx(6 * h**2, rel=1e-13)
    assert t.coeff(3, 0) == pytest.approx(4 * h, rel=1e-13)
    assert t.coeff(0, 1) == 0.0
    assert t.quartic_part == P("x1^4+x2^4")


def test_taylor_data_recentered_phase_reproduces_values():
    p = P("x1^4+x1^2*x2^2+x2^4+0.05*x1^3-0.02*x2^5")
    z = (0.07, -0.11)
    t = taylor_data(p.homogeneous_part(4), p - p.homogeneous_part(4), z)
    rec = t.recentered_phase()
    rng = np.random.default_rng(5)
    for _ in range(20):
        y = rng.uniform(-0.5, 0.5, size=2)
        assert rec.eval(*y) == pytest.approx(p.eval(y[0] + z[0], y[1] + z[1]), rel=1e-12, abs=1e-13)


def test_taylor_remainder_bounds_tail_on_box():
    p = P("0.3*x2^6")
    t = taylor_data(BivarPoly.zero(), p, (0.0, 0.0))
    # tail is the degree-6 term itself; bound must dominate its sup on the box
    assert t.remainder_bound >= 0.3 * 0.5**6 - 1e-15


# -- quasi-distance -----------------------------------------------------------


def _tdata(s):
    full = {k: s.get(k, 0.0) for k in [(1, 0), (0, 1), (2, 0), (1, 1), (0, 2), (3, 0), (2, 1), (1, 2), (0, 3)]}
    return TaylorData(
        center=(0.0, 0.0),
        s00=0.0,
        s=full,
        quartic_part=P("x1^4+x2^4"),
        tail=BivarPoly.zero(),
        remainder_bound=0.0,
    )


def test_quasi_distance_zero():
    assert quasi_distance(_tdata({})) == 0.0


def test_quasi_distance_single_gradient_entry():
    assert quasi_distance(_tdata({(1, 0): 1.0})) == pytest.approx(1.0, rel=1e-15)


def test_quasi_distance_mixed_entries():
    t = _tdata({(2, 0): 0.5, (0, 3): 0.5})
    assert quasi_distance(t) == pytest.approx(0.3125, rel=1e-15)


def test_quasi_distance_ignores_mixed_cubics():
    assert quasi_distance(_tdata({(2, 1): 0.7, (1, 2): -0.3})) == 0.0


@given(
    st.lists(st.floats(-2, 2, allow_nan=False), min_size=7, max_size=7),
    st.floats(0.01, 100.0, allow_nan=False),
)
def test_quasi_distance_scales_linearly_under_weighted_dilation(vals, r):
    keys = [(1, 0), (0, 1), (2, 0), (1, 1), (0, 2), (3, 0), (0, 3)]
    base = dict(zip(keys, vals))
    w = {1: 0.75, 2: 0.5, 3: 0.25}
    scaled = {k: v * r ** w[k[0] + k[1]] for k, v in base.items()}
    rho0 = quasi_distance(_tdata(base))
    rho1 = quasi_distance(_tdata(scaled))
    assert rho1 == pytest.approx(r * rho0, rel=1e-12, abs=1e-280)


# -- text format --------------------------------------------------------------


def test_text_format_parses_canonical_shapes():
    assert P("x1^4 + 3*x1^2*x2^2 + x2^4") == BivarPoly(
        {(4, 0): 1.0, (2, 2): 3.0, (0, 4): 1.0}
    )
    assert P("-x1*x2") == BivarPoly({(1, 1): -1.0})
    assert P("2.5") == BivarPoly({(0, 0): 2.5})
    assert P("x2") == BivarPoly({(0, 1): 1.0})


def test_text_format_rejects_garbage():
    for bad in ("x3", "x1^", "1 +", "x1**2", ""):
        with pytest.raises(ValueError):
            P(bad)


@settings(max_examples=60)
@given(poly_terms)
def test_text_round_trip(terms):
    p = BivarPoly(terms)
    assert poly_from_text(poly_to_text(p)) == p
