"""Dyadic ring decomposition: partition identities and oracle consistency.

The partition family is telescoping by construction, so its identities are
tested to rounding accuracy; ring decompositions are validated against the
direct adaptive oracle on the same integrand.
"""

import math

import numpy as np
import pytest

from quartosc.classify import degen_minus_form, degen_plus_form, mu_form
from quartosc.dyadic import (
    CutoffProfile,
    DyadicConfig,
    RhoDegenerate,
    beta_cutoff,
    chi,
    dilate,
    dyadic_integrate,
    partition_weights,
)
from quartosc.oscquad import BumpAmplitude, integrate_2d
from quartosc.poly import BivarPoly, Box, taylor_data
from quartosc.verify import sample_perturbation

PROFILE = CutoffProfile()
MU1 = mu_form(1.0)
AMP = BumpAmplitude((0.0, 0.0), 0.4)

# fourth-power weights of the coefficient groups entering the quasi-distance
SIGMA_POWERS = {
    (1, 0): 4.0 / 3.0,
    (0, 1): 4.0 / 3.0,
    (2, 0): 2.0,
    (1, 1): 2.0,
    (0, 2): 2.0,
    (3, 0): 4.0,
    (0, 3): 4.0,
}


class TestDilate:
    def test_fourth_root_scaling(self):
        assert dilate(16.0, (1.0, 1.0)) == pytest.approx((2.0, 2.0))

    def test_identity(self):
        assert dilate(1.0, (0.3, -0.7)) == (0.3, -0.7)

    def test_semigroup(self):
        once = dilate(4.0, dilate(4.0, (1.0, 0.0)))
        assert once == pytest.approx(dilate(16.0, (1.0, 0.0)))
        assert once == pytest.approx((2.0, 0.0))

    def test_positive_parameter_required(self):
        with pytest.raises(ValueError):
            dilate(0.0, (1.0, 1.0))


class TestCutoffs:
    def test_profile_endpoints_exact(self):
        assert float(PROFILE(0.0)) == 1.0
        assert float(PROFILE(1.0)) == 0.0

    def test_profile_monotone(self):
        s = np.linspace(0.0, 1.0, 200)
        v = PROFILE(s)
        assert np.all(np.diff(v) <= 1e-15)
        assert np.all((v >= 0.0) & (v <= 1.0))

    def test_beta_inside(self):
        assert beta_cutoff(PROFILE, (0.5, 0.0)) == 1.0
        assert beta_cutoff(PROFILE, (0.6, -0.8)) == 1.0  # |x| = 1 exactly

    def test_beta_outside(self):
        # support ends at 2^(1/4) ~ 1.1892
        assert beta_cutoff(PROFILE, (1.3, 0.0)) == 0.0

    def test_beta_transition_monotone(self):
        radii = [1.01, 1.05, 1.09, 1.13, 1.17]
        vals = [beta_cutoff(PROFILE, (r, 0.0)) for r in radii]
        assert all(0.0 < v < 1.0 for v in vals[1:-1])
        assert all(a >= b for a, b in zip(vals, vals[1:]))

    def test_chi_zero_well_inside(self):
        # both beta terms are 1 for |x| <= 2^(-1/4)
        assert chi(PROFILE, (0.2, 0.1)) == 0.0
        assert chi(PROFILE, (0.84, 0.0)) == 0.0

    def test_chi_zero_outside(self):
        assert chi(PROFILE, (1.3, 0.0)) == 0.0

    def test_chi_one_on_plateau(self):
        # |x| = 1: beta(x) = 1 while the doubled dilation leaves the support
        assert chi(PROFILE, (1.0, 0.0)) == 1.0
        assert chi(PROFILE, (0.0, -1.0)) == 1.0


class TestPartition:
    def test_origin_all_mass_in_beta(self):
        w = partition_weights(PROFILE, (0.0, 0.0), 2, 10)
        assert w[0] == 1.0
        assert all(v == 0.0 for v in w[1:])
        assert len(w) == 9

    def test_partial_sum_telescopes(self):
        for x in [(0.5, 0.2), (3.0, -1.0), (50.0, 80.0), (0.0, 7.0)]:
            for K in (2, 5, 12):
                w = partition_weights(PROFILE, x, 2, K)
                target = beta_cutoff(PROFILE, dilate(2.0**-K, x))
                assert sum(w) == pytest.approx(target, abs=1e-12)

    def test_thousand_random_points_sum_to_one(self):
        rng = np.random.default_rng(99)
        pts = rng.uniform(-3.0, 3.0, size=(1000, 2))
        for x in pts:
            w = partition_weights(PROFILE, (x[0], x[1]), 2, 20)
            assert abs(sum(w) - 1.0) <= 1e-12
            assert all(v >= -1e-15 for v in w)

    def test_identity_holds_for_any_profile(self):
        # telescoping does not depend on the transition shape
        cosine = CutoffProfile(lambda s: 0.5 * (1.0 + np.cos(np.pi * np.clip(s, 0, 1))))
        rng = np.random.default_rng(5)
        for x in rng.uniform(-2.0, 2.0, size=(50, 2)):
            w = partition_weights(cosine, (x[0], x[1]), 2, 16)
            assert abs(sum(w) - 1.0) <= 1e-12

    def test_ring_range_validation(self):
        with pytest.raises(ValueError):
            partition_weights(PROFILE, (1.0, 0.0), 3, 2)


class TestQuasiHomogeneity:
    def test_quartic_scales_linearly_under_dilation(self):
        rng = np.random.default_rng(17)
        forms = [MU1, mu_form(-2.5), degen_plus_form(), degen_minus_form()]
        for f in forms:
            p = f.to_poly()
            for _ in range(25):
                x = rng.uniform(-2.0, 2.0, size=2)
                r = float(rng.uniform(0.1, 20.0))
                y = dilate(r, (x[0], x[1]))
                left = p.eval(y[0], y[1])
                right = r * p.eval(x[0], x[1])
                assert left == pytest.approx(right, rel=1e-12, abs=1e-12)


def _pure_data(form):
    return taylor_data(form.to_poly(), None, (0.0, 0.0))


class TestDyadicIntegrate:
    def test_pure_even_form_matches_direct(self):
        f = mu_form(0.0)
        dec = dyadic_integrate(_pure_data(f), f, AMP, 100.0)
        assert dec.regime == "LowRho"
        assert dec.rho == 0.0
        direct = integrate_2d(f.to_poly(), AMP, 100.0, tol=1e-11).value
        assert abs(dec.total - direct) <= 1e-3 * abs(direct)

    def test_single_linear_coefficient_hits_quasisphere(self):
        t = taylor_data(MU1.to_poly(), BivarPoly({(1, 0): 1.0}), (0.0, 0.0))
        dec = dyadic_integrate(t, MU1, AMP, 100.0)
        assert dec.regime == "HighRho"
        assert dec.rho == pytest.approx(1.0)
        assert dec.sigma[(1, 0)] == pytest.approx(1.0)
        total = sum(abs(v) ** SIGMA_POWERS[k] for k, v in dec.sigma.items())
        assert total == pytest.approx(1.0, abs=1e-12)

    def test_quasisphere_relation_generic(self):
        pert = BivarPoly({(1, 0): 0.3, (0, 2): -0.2, (3, 0): 0.1})
        t = taylor_data(MU1.to_poly(), pert, (0.0, 0.0))
        dec = dyadic_integrate(t, MU1, AMP, 1000.0)
        assert dec.regime == "HighRho"
        total = sum(abs(v) ** SIGMA_POWERS[k] for k, v in dec.sigma.items())
        assert total == pytest.approx(1.0, abs=1e-12)

    def test_high_rho_matches_direct(self):
        pert = BivarPoly({(1, 0): 0.5})
        t = taylor_data(MU1.to_poly(), pert, (0.0, 0.0))
        dec = dyadic_integrate(t, MU1, AMP, 100.0)
        assert dec.regime == "HighRho"
        direct = integrate_2d(MU1.to_poly() + pert, AMP, 100.0, tol=1e-11).value
        assert abs(dec.total - direct) <= max(1e-3 * abs(direct), 5e-9)

    def test_off_center_expansion_matches_direct(self):
        # center away from the amplitude's center: the shift bookkeeping and
        # the constant phase factor must cancel exactly against the oracle
        pert = BivarPoly({(2, 1): 0.12, (1, 0): 0.05})
        z = (0.1, -0.05)
        t = taylor_data(MU1.to_poly(), pert, z)
        dec = dyadic_integrate(t, MU1, AMP, 200.0)
        direct = integrate_2d(MU1.to_poly() + pert, AMP, 200.0, tol=1e-11).value
        assert abs(dec.total - direct) <= max(1e-3 * abs(direct), 5e-9)

    def test_rho_degenerate(self):
        with pytest.raises(RhoDegenerate):
            dyadic_integrate(_pure_data(MU1), MU1, AMP, 100.0, regime="HighRho")

    def test_invalid_regime_rejected(self):
        with pytest.raises(ValueError):
            dyadic_integrate(_pure_data(MU1), MU1, AMP, 100.0, regime="MidRho")

    def test_mismatched_quartic_rejected(self):
        t = _pure_data(degen_plus_form())
        with pytest.raises(ValueError, match="disagrees"):
            dyadic_integrate(t, MU1, AMP, 100.0)

    def test_small_lambda_rejected(self):
        with pytest.raises(ValueError):
            dyadic_integrate(_pure_data(MU1), MU1, AMP, 1.0)

    def test_ring_count_bound(self):
        for lam in (100.0, 1000.0):
            dec = dyadic_integrate(_pure_data(MU1), MU1, AMP, lam)
            assert dec.nu0 <= dec.K <= max(2, math.ceil(1.5 * math.log(lam)))
            ks = [k for k, _ in dec.rings]
            assert ks == sorted(ks)
            assert all(dec.nu0 < k <= dec.K for k in ks)

    def test_symmetry_reduction_agrees_with_full(self):
        full = dyadic_integrate(_pure_data(MU1), MU1, AMP, 300.0, DyadicConfig(use_symmetry=False))
        sym = dyadic_integrate(_pure_data(MU1), MU1, AMP, 300.0, DyadicConfig(use_symmetry=True))
        assert abs(sym.total - full.total) <= 1e-9

    def test_tail_exit_matches_full_ring_sweep(self):
        dec = dyadic_integrate(_pure_data(MU1), MU1, AMP, 1000.0)
        full = dyadic_integrate(
            _pure_data(MU1), MU1, AMP, 1000.0, DyadicConfig(tail_dead_rings=0)
        )
        assert dec.skipped_from is not None
        assert full.skipped_from is None
        assert len(full.rings) == full.K - full.nu0
        assert len(dec.rings) < len(full.rings)
        assert abs(dec.total - full.total) <= dec.error_estimate + full.error_estimate
        assert abs(dec.total - full.total) <= 1e-9

    def test_skipped_rings_were_negligible(self):
        dec = dyadic_integrate(_pure_data(MU1), MU1, AMP, 1000.0)
        full = dyadic_integrate(
            _pure_data(MU1), MU1, AMP, 1000.0, DyadicConfig(tail_dead_rings=0)
        )
        tail = {k: v for k, v in full.rings if k >= dec.skipped_from}
        assert tail
        assert all(abs(v) < 1e-9 for v in tail.values())

    def test_per_ring_normalized_bound(self):
        cfg = DyadicConfig()
        for f in (MU1, degen_plus_form(), degen_minus_form()):
            for lam in (100.0, 1000.0):
                dec = dyadic_integrate(_pure_data(f), f, AMP, lam, cfg)
                mags = [abs(dec.j0)] + [abs(v) for _, v in dec.rings]
                assert max(mags) * math.sqrt(lam) <= cfg.ring_bound_constant

    def test_perturbed_phase_consistency(self):
        rng = np.random.default_rng(42)
        pert = sample_perturbation(0.05, Box(), rng)
        t = taylor_data(MU1.to_poly(), pert, (0.0, 0.0))
        dec = dyadic_integrate(t, MU1, AMP, 100.0)
        direct = integrate_2d(MU1.to_poly() + pert, AMP, 100.0, tol=1e-11).value
        assert abs(dec.total - direct) <= max(1e-3 * abs(direct), 5e-9)

    def test_counters_and_estimate(self):
        dec = dyadic_integrate(_pure_data(MU1), MU1, AMP, 100.0)
        assert dec.panels > 0
        assert dec.error_estimate >= 0.0
        assert dec.lam == 100.0
