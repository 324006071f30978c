"""Weight sequence a_n, the binomial identity, and kernel sums with tails."""

import math
from fractions import Fraction

import numpy as np
import pytest

from daverify.disc_kernel import (
    KernelSequence,
    build_kernel_sequence,
    dirichlet_coeff_check,
    float_coeff_sequence,
    kernel_eval,
    sum_a_partial,
)
from daverify.norms import r_power_norm_sq


class TestSequence:
    def test_frozen_d2_values(self):
        seq = build_kernel_sequence(2, 5)
        assert list(seq.a_exact) == [Fraction(1), Fraction(1, 2), Fraction(3, 8),
                                     Fraction(5, 16), Fraction(35, 128), Fraction(63, 256)]

    def test_frozen_d4_values(self):
        seq = build_kernel_sequence(4, 2)
        assert list(seq.a_exact) == [Fraction(1), Fraction(3, 32), Fraction(315, 8192)]

    def test_inverse_of_r_power_norm(self):
        for d in (2, 4):
            seq = build_kernel_sequence(d, 40)
            for n in range(41):
                assert seq.a_exact[n] * r_power_norm_sq(d, n) == 1

    def test_float_shadow_matches(self):
        seq = build_kernel_sequence(4, 60)
        for n in (0, 30, 60):
            assert seq.a_float[n] == pytest.approx(float(seq.a_exact[n]), rel=1e-13)

    def test_strictly_decreasing_positive(self):
        for d in (2, 4):
            a = float_coeff_sequence(d, 1000)
            assert np.all(a > 0)
            assert np.all(np.diff(a) < 0)

    def test_float_recurrence_matches_exact(self):
        for d in (2, 4):
            exact = build_kernel_sequence(d, 200)
            sweep = float_coeff_sequence(d, 200)
            assert sweep[200] == pytest.approx(exact.a_float[200], rel=1e-12)

    def test_rejects_unsupported_dimension(self):
        with pytest.raises(ValueError):
            build_kernel_sequence(3, 5)

    def test_serialization(self):
        seq = build_kernel_sequence(2, 2)
        js = seq.to_json()
        assert js["a_exact"] == ["1/1", "1/2", "3/8"]
        rows = seq.csv_rows()
        assert rows[1][0] == 1 and rows[1][1] == "1/2"


class TestDirichletIdentity:
    def test_holds_through_200(self):
        assert all(dirichlet_coeff_check(n) for n in range(201))

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            dirichlet_coeff_check(-1)


class TestPartialSums:
    def test_single_term(self):
        assert sum_a_partial(4, 0).partial == 1.0

    def test_d4_converges_with_shrinking_tail(self):
        p1 = sum_a_partial(4, 1000)
        p2 = sum_a_partial(4, 10_000)
        assert p2.partial - p1.partial < p1.tail_estimate
        assert p2.tail_estimate < p1.tail_estimate
        # frozen from two partial resolutions of the same series
        assert p1.partial == pytest.approx(1.2777, abs=2e-3)
        assert abs(p2.partial - p1.partial) < 2e-2

    def test_d2_diverges_like_sqrt(self):
        lo = sum_a_partial(2, 5_000).partial
        hi = sum_a_partial(2, 10_000).partial
        assert hi / lo == pytest.approx(math.sqrt(2.0), abs=0.02)


class TestKernelEval:
    def test_at_origin(self):
        seq = build_kernel_sequence(4, 10)
        kv = kernel_eval(seq, 0.0, 0.3)
        assert kv.value == 1.0 + 0j

    @pytest.mark.parametrize("rho", [0.1 * k for k in range(1, 10)])
    def test_d2_matches_closed_form_within_tail(self, rho):
        # truncation chosen so the geometric tail bound dominates roundoff
        N = max(4, math.ceil(8.0 / max(0.02, -math.log10(rho * rho))))
        seq = build_kernel_sequence(2, N)
        kv = kernel_eval(seq, rho, rho)
        closed = (1.0 - rho * rho) ** -0.5
        assert kv.rigorous
        assert abs(kv.value - closed) <= kv.tail_bound
        assert kv.tail_bound > 1e-14

    def test_d2_diverges_on_boundary(self):
        seq = build_kernel_sequence(2, 10)
        with pytest.raises(ValueError):
            kernel_eval(seq, 1.0, 1.0)
        with pytest.raises(ValueError):
            kernel_eval(seq, 2.0, 0.5)

    def test_d4_boundary_value_flagged_estimate(self):
        seq = build_kernel_sequence(4, 500)
        kv = kernel_eval(seq, 1.0, 1.0)
        assert not kv.rigorous
        assert kv.value.real == pytest.approx(sum_a_partial(4, 500).partial, rel=1e-12)
        assert kv.tail_bound < 0.02

    def test_d4_interior_rigorous(self):
        seq = build_kernel_sequence(4, 50)
        kv = kernel_eval(seq, 0.5, 0.5)
        assert kv.rigorous
        direct = sum(seq.a_float[n] * 0.25 ** n for n in range(51))
        assert kv.value.real == pytest.approx(direct, rel=1e-13)

    def test_complex_argument_conjugation(self):
        seq = build_kernel_sequence(4, 30)
        z, w = 0.3 + 0.4j, 0.2 - 0.5j
        kv = kernel_eval(seq, z, w)
        kw = kernel_eval(seq, w, z)
        assert kv.value == pytest.approx(kw.value.conjugate(), rel=1e-13)
