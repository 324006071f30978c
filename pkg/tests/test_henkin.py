"""Moments of the sphere measures, the witness identities, non-Henkin decay,
and peak behaviour."""

import math
from fractions import Fraction

import numpy as np
import pytest

from daverify.cantor import fourier_table_ifs, fourier_table_recursion
from daverify.exact import Polynomial, QComplex
from daverify.henkin import (
    PushforwardMeasure,
    build_witness,
    functional_bound_check,
    h_d2,
    h_d4,
    henkin_identity_check,
    henkin_identity_on_poly,
    mc_moment,
    mc_moment_batch,
    moment_d2,
    moment_d4,
    non_henkin_witness,
    peak_check,
    sample_ball,
    sample_cantor_points,
    sample_torus,
)

SIGMA_1 = 0.37143735670876543


class TestClosedFormMoments:
    def test_d4_diagonal(self):
        assert moment_d4((0, 0, 0, 0)) == 1
        assert moment_d4((1, 1, 1, 1)) == Fraction(1, 16)
        assert moment_d4((3, 3, 3, 3)) == Fraction(1, 4096)

    def test_d4_off_diagonal_vanishes(self):
        assert moment_d4((1, 0, 0, 0)) == 0
        assert moment_d4((2, 1, 1, 2)) == 0

    def test_d4_needs_length_four(self):
        with pytest.raises(ValueError):
            moment_d4((1, 1))

    def test_d2_diagonal_and_off(self):
        table = fourier_table_recursion(8, 1e-12)
        assert moment_d2(0, 0, table) == 1.0 + 0j
        assert moment_d2(1, 2, table) == 0j
        expected = 0.5 * SIGMA_1
        assert moment_d2(1, 1, table).real == pytest.approx(expected, abs=1e-9)

    def test_d2_range_guard(self):
        table = fourier_table_recursion(4, 1e-12)
        with pytest.raises(ValueError):
            moment_d2(5, 5, table)

    def test_mass_one_and_bounded(self):
        table = fourier_table_recursion(6, 1e-12)
        m4 = PushforwardMeasure("D4")
        m2 = PushforwardMeasure("D2", table)
        assert m4.moment((0, 0, 0, 0)) == 1
        assert abs(m2.moment((0, 0))) == 1.0
        for k in range(1, 6):
            assert m4.moment((k,) * 4) < 1
            assert abs(m2.moment((k, k))) < 1


class TestSamplers:
    def test_pushforward_lands_on_sphere(self):
        rng = np.random.default_rng(11)
        table = fourier_table_recursion(4, 1e-12)
        for measure in (PushforwardMeasure("D4"), PushforwardMeasure("D2", table)):
            pts = measure.sample(500, rng)
            radii = np.sum(np.abs(pts) ** 2, axis=1)
            assert np.abs(radii - 1.0).max() < 1e-12

    def test_d4_map_last_coordinate(self):
        zeta = sample_torus(100, np.random.default_rng(0), 3)
        pts = h_d4(zeta)
        prod = pts[:, 0] * pts[:, 1] * pts[:, 2] * pts[:, 3]
        # r(h(zeta)) = 16 * prod = 1 identically
        assert np.abs(16.0 * prod - 1.0).max() < 1e-12

    def test_d2_map_pairs_conjugates(self):
        rng = np.random.default_rng(1)
        zeta = sample_torus(50, rng, 1)[:, 0]
        omega = np.exp(2j * np.pi * sample_cantor_points(50, rng))
        pts = h_d2(zeta, omega)
        assert np.abs(2.0 * pts[:, 0] * pts[:, 1] - omega).max() < 1e-12

    def test_cantor_samples_avoid_middle_third(self):
        t = sample_cantor_points(2000, np.random.default_rng(2))
        assert np.all((t < 1.0 / 3.0) | (t >= 2.0 / 3.0))
        assert t.min() >= 0.0 and t.max() < 1.0

    def test_ball_samples_inside_radius(self):
        pts = sample_ball(1000, np.random.default_rng(3), 4, radius=0.9)
        norms = np.sqrt(np.sum(np.abs(pts) ** 2, axis=1))
        assert norms.max() <= 0.9 + 1e-12

    def test_d2_requires_table(self):
        with pytest.raises(ValueError):
            PushforwardMeasure("D2")


class TestMonteCarlo:
    def test_d4_moment_within_4_sigma(self):
        rep = mc_moment("D4", (1, 1, 1, 1), 20_000, 17)
        assert rep.within_4_sigma
        assert rep.closed_form_exact == "1/16"

    def test_d4_degenerate_diagonal_is_exact(self):
        rep = mc_moment("D4", (2, 2, 2, 2), 1000, 5)
        assert rep.mc_stderr < 1e-15
        assert rep.mc_estimate.real == pytest.approx(1.0 / 256.0, abs=1e-16)

    def test_d2_batch_agreement(self):
        reps = mc_moment_batch("D2", 30, 40_000, 23)
        good = sum(1 for r in reps if r.within_4_sigma)
        assert good >= math.ceil(0.95 * len(reps))

    def test_seed_determinism(self):
        a = mc_moment("D4", (1, 0, 0, 1), 5000, 99)
        b = mc_moment("D4", (1, 0, 0, 1), 5000, 99)
        assert a.mc_estimate == b.mc_estimate

    def test_sample_floor_enforced(self):
        with pytest.raises(ValueError):
            mc_moment("D4", (1, 1, 1, 1), 999, 0)


class TestWitness:
    def test_d4_coefficients_frozen(self):
        w = build_witness("D4", 2)
        assert list(w.diag_exact) == [Fraction(1), Fraction(3, 2), Fraction(315, 32)]
        assert w.norm_sq_exact == Fraction(1) + Fraction(3, 32) + Fraction(315, 8192)

    def test_d2_coefficients_track_fourier(self):
        table = fourier_table_recursion(3, 1e-12)
        w = build_witness("D2", 3, table)
        assert w.diag_float[0] == pytest.approx(1.0)
        assert w.diag_float[1] == pytest.approx(0.5 * 2.0 * SIGMA_1, abs=1e-9)

    def test_d2_needs_long_enough_table(self):
        table = fourier_table_recursion(3, 1e-12)
        with pytest.raises(ValueError):
            build_witness("D2", 10, table)

    def test_json_round_trip_fields(self):
        w4 = build_witness("D4", 1)
        js = w4.to_json()
        assert js["diag_coeffs_exact"] == ["1/1", "3/2"]
        table = fourier_table_recursion(2, 1e-12)
        js2 = build_witness("D2", 2, table).to_json()
        assert js2["table_source"] == "recursion"


class TestHenkinIdentity:
    def test_d4_exact_small_degrees(self):
        w = build_witness("D4", 3)
        res = henkin_identity_check("D4", 12, w)
        assert res.passed and res.checked == 1820 and res.max_dev == 0.0

    def test_d4_truncation_guard(self):
        w = build_witness("D4", 1)
        with pytest.raises(ValueError):
            henkin_identity_check("D4", 24, w)

    def test_d4_poly_route(self):
        w = build_witness("D4", 2)
        phi = Polynomial(4, {(0, 0, 0, 0): Fraction(2), (1, 1, 1, 1): QComplex(Fraction(1, 3)),
                             (1, 0, 0, 0): QComplex(Fraction(0), Fraction(5))})
        integral, inner = henkin_identity_on_poly(phi, w)
        assert integral == inner
        assert integral.re == 2 + Fraction(1, 3) * Fraction(1, 16)

    def test_d2_two_routes_small(self):
        rec = fourier_table_recursion(40, 1e-12)
        oracle = fourier_table_ifs(40, 14)
        w = build_witness("D2", 40, rec)
        res = henkin_identity_check("D2", 40, w, table=oracle, tol=1e-10)
        assert res.passed
        assert res.max_dev < 1e-10
        assert res.checked == 41 * 41

    def test_d2_missing_table_rejected(self):
        rec = fourier_table_recursion(10, 1e-12)
        w = build_witness("D2", 10, rec)
        with pytest.raises(ValueError):
            henkin_identity_check("D2", 10, w)


class TestNonHenkin:
    def test_integrals_one_and_interior_decay(self):
        rep = non_henkin_witness(n_max=20, grid_points=400, seed=7)
        assert rep.passed
        assert rep.integrals_all_one
        assert rep.max_base_abs < 0.9
        assert rep.max_fn_final < 1e-6
        assert rep.origin_value_final == 2.0 ** -1000

    def test_decay_threshold_location(self):
        rep = non_henkin_witness(n_max=5, grid_points=300, seed=3)
        assert 1 <= rep.n_below_threshold <= 1000
        assert rep.max_base_abs ** rep.n_below_threshold < 1e-6

    def test_radius_bound_respected(self):
        # max |(1 + r)/2| on the ball of radius rho is (1 + rho^4)/2 at most
        rep = non_henkin_witness(n_max=2, grid_points=2000, grid_radius=0.5, seed=9)
        assert rep.max_base_abs <= 0.5 * (1 + 0.5 ** 4) + 1e-12

    def test_rejects_exterior_radius(self):
        with pytest.raises(ValueError):
            non_henkin_witness(grid_radius=1.0)


class TestPeak:
    def test_peaks_on_support_strict_inside(self):
        rep = peak_check(samples=4000, seed=21)
        assert rep.passed
        assert rep.max_peak_dev <= 1e-12
        assert rep.support_dev <= 1e-12
        assert rep.min_margin > 0.0

    def test_margin_scales_with_delta(self):
        loose = peak_check(samples=4000, seed=21, delta=0.3)
        tight = peak_check(samples=4000, seed=21, delta=1e-3)
        assert loose.min_margin >= tight.min_margin
        assert loose.rejected >= tight.rejected

    def test_input_guards(self):
        with pytest.raises(ValueError):
            peak_check(samples=0)
        with pytest.raises(ValueError):
            peak_check(delta=0.0)


class TestFunctionalBound:
    def test_d4_bound_holds(self):
        w = build_witness("D4", 6)
        rep = functional_bound_check(w, trials=60, seed=13)
        assert rep.passed
        assert rep.max_ratio <= 1.0

    def test_d2_bound_holds(self):
        table = fourier_table_recursion(20, 1e-12)
        w = build_witness("D2", 20, table)
        rep = functional_bound_check(w, trials=60, seed=29, table=table)
        assert rep.passed
