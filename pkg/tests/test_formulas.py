import itertools
import math
from fractions import Fraction

import pytest

from bagraphs.formulas import (
    DISC_FORM,
    T_FORM,
    T_PRIME_FORM,
    ThresholdParams,
    an_window,
    component_bound_pi,
    conn_prob_by_rank,
    erlang_integral_mean_degree,
    isolated_prob_lower_bound,
    mean_degree_asymptotic,
    mean_degree_limit,
    mean_degree_limit_exact,
    negbin_lower_sum,
    negbin_partial_mean,
    negbin_pmf,
    threshold_k,
)


class TestNegBin:
    def test_frozen_values(self):
        assert negbin_pmf(1, 0) == Fraction(1, 2)
        assert negbin_pmf(2, 1) == Fraction(1, 4)

    def test_k2_j1_by_coin_enumeration(self):
        # sequences of 3 fair draws whose last is the 2nd success with 1 failure
        want = Fraction(0)
        for seq in itertools.product((0, 1), repeat=3):
            if seq[-1] == 1 and sum(seq) == 2:
                want += Fraction(1, 8)
        assert negbin_pmf(2, 1) == want

    def test_lower_sum_is_half_up_to_64(self):
        for k in range(1, 65):
            assert negbin_lower_sum(k) == Fraction(1, 2)

    def test_partial_mean_small(self):
        assert negbin_partial_mean(1) == 0
        assert negbin_partial_mean(2) == Fraction(1, 4)

    def test_partial_mean_equals_summation_up_to_64(self):
        for k in range(1, 65):
            summation = sum(
                (j * negbin_pmf(k, j) for j in range(k)), start=Fraction(0)
            )
            assert negbin_partial_mean(k) == summation


class TestMeanDegree:
    def test_frozen_values(self):
        assert mean_degree_limit_exact(1) == Fraction(1, 2)
        assert mean_degree_limit_exact(2) == Fraction(5, 4)
        assert mean_degree_limit_exact(5) == Fraction(965, 256)
        assert mean_degree_limit(5) == 3.76953125

    def test_exact_and_float_agree_up_to_64(self):
        for k in range(1, 65):
            assert mean_degree_limit(k) == pytest.approx(float(mean_degree_limit_exact(k)))

    def test_loggamma_path_continuity(self):
        # k=65 switches to the log-gamma path; compare against exact rationals
        for k in (65, 80, 128):
            assert mean_degree_limit(k) == pytest.approx(
                float(mean_degree_limit_exact(k)), rel=1e-12
            )

    def test_below_k_and_ratio_limit(self):
        for k in (1, 2, 10, 64, 1000):
            assert mean_degree_limit(k) < k
        assert mean_degree_limit(10_000) / 10_000 >= 0.99


class TestConnProbByRank:
    def test_frozen_values(self):
        assert conn_prob_by_rank(1, 1) == Fraction(1, 2)
        assert conn_prob_by_rank(1, 10) == Fraction(1023, 1024)

    def test_beyond_budget_is_zero(self):
        assert conn_prob_by_rank(5, 4) == 0

    def test_nonincreasing_in_rank(self):
        for k in range(1, 65):
            probs = [conn_prob_by_rank(i, k) for i in range(1, k + 1)]
            assert all(a >= b for a, b in zip(probs, probs[1:]))

    def test_rank_sum_equals_mean_degree(self):
        for k in range(1, 65):
            total = sum(
                (conn_prob_by_rank(i, k) for i in range(1, k + 1)), start=Fraction(0)
            )
            assert total == mean_degree_limit_exact(k)


class TestAsymptotic:
    def test_k100(self):
        assert mean_degree_asymptotic(100) == pytest.approx(94.3651565, abs=1e-6)

    def test_small_k_is_rough(self):
        assert mean_degree_asymptotic(1) == pytest.approx(0.5064, abs=2e-4)

    def test_gap_shrinks_faster_than_sqrt_k(self):
        gap2 = abs(mean_degree_limit(100) - mean_degree_asymptotic(100))
        gap4 = abs(mean_degree_limit(10_000) - mean_degree_asymptotic(10_000))
        assert gap4 < 1e-2
        assert gap4 < gap2
        assert gap4 * 100.0 < gap2 * 10.0  # gap * sqrt(k) still decreasing


class TestErlangIntegral:
    def test_k1_closed_form(self):
        assert erlang_integral_mean_degree(1) == pytest.approx(0.5, abs=1e-10)

    def test_matches_limit(self):
        for k in (2, 5, 20, 30):
            assert erlang_integral_mean_degree(k) == pytest.approx(
                mean_degree_limit(k), abs=1e-8
            )

    def test_range_guard(self):
        with pytest.raises(ValueError):
            erlang_integral_mean_degree(0)
        with pytest.raises(ValueError):
            erlang_integral_mean_degree(31)


class TestThresholdK:
    def test_t_form(self):
        # e^9 = 8103.08..., so floor(log 8103) = 8 and floor(log 8104) = 9
        assert threshold_k(8103, ThresholdParams(t=1.0), T_FORM) == 8
        assert threshold_k(8104, ThresholdParams(t=1.0), T_FORM) == 9
        assert threshold_k(10_000, ThresholdParams(t=2.0), T_FORM) == 18

    def test_t_prime_form(self):
        assert threshold_k(10_000, ThresholdParams(t_prime=0.0), T_PRIME_FORM) == 9
        k_hi = threshold_k(10_000, ThresholdParams(t_prime=1.0), T_PRIME_FORM)
        k_lo = threshold_k(10_000, ThresholdParams(t_prime=-0.75), T_PRIME_FORM)
        assert k_lo < 9 < k_hi

    def test_disc_form_clamps_with_warning(self):
        with pytest.warns(RuntimeWarning):
            assert threshold_k(10_000, ThresholdParams(), DISC_FORM) == 1

    def test_small_n_rejected(self):
        with pytest.raises(ValueError):
            threshold_k(15, ThresholdParams(), T_FORM)

    def test_bad_form(self):
        with pytest.raises(ValueError):
            threshold_k(100, ThresholdParams(), "other")

    def test_params_validation(self):
        with pytest.raises(ValueError):
            ThresholdParams(t=0.0)
        with pytest.raises(ValueError):
            ThresholdParams(delta=1.0)


class TestAnWindow:
    def test_width_and_tail_ratio(self):
        for n, t in [(1000, 1.0), (10_000, 0.5), (500, 3.0)]:
            w = an_window(n, t)
            assert w.upper - w.lower == pytest.approx(2 * math.sqrt(2))
            assert w.p_underbar / w.p_bar == pytest.approx(math.exp(2 * math.sqrt(2)))

    def test_frozen_value(self):
        w = an_window(10_000, 1.0)
        assert w.p_bar == pytest.approx(2.2394e-4, rel=1e-3)

    def test_preconditions(self):
        with pytest.raises(ValueError):
            an_window(2, 1.0)
        with pytest.raises(ValueError):
            an_window(100, 0.0)
        with pytest.raises(ValueError):
            an_window(100, 50.0)  # t log n >= n - 1


class TestComponentBoundPi:
    def test_vanishing_regime_large_t(self):
        # at t=30 the per-size terms decay from the first size on; the bound
        # is tiny and decreasing in n
        values = [component_bound_pi(n, 30.0) for n in (10_000, 100_000, 1_000_000)]
        assert values[0] < 1e-2
        assert values[0] > values[1] > values[2]
        assert all(v >= 0 for v in values)

    def test_desk_scale_t1_overflows_to_marker(self):
        # at t=1 the mid-size terms dwarf exp(700) until n is astronomically
        # large; the evaluator reports the overflow marker rather than a
        # misleading finite value
        assert component_bound_pi(1_000_000, 1.0) == math.inf

    def test_empty_sum_is_zero(self):
        # r_lo = ceil(8.24/t) can exceed n/2 for tiny n and small t
        assert component_bound_pi(100, 0.1) == 0.0

    def test_preconditions(self):
        with pytest.raises(ValueError):
            component_bound_pi(50, 1.0)
        with pytest.raises(ValueError):
            component_bound_pi(1000, 0.0)


class TestIsolatedProbLowerBound:
    def test_frozen_value(self):
        assert isolated_prob_lower_bound(100, 0.6) == pytest.approx(math.exp(-160.0))

    def test_extreme_underflows_to_zero(self):
        assert isolated_prob_lower_bound(10**6, 0.99) == 0.0

    def test_monotone_in_k_and_delta(self):
        assert isolated_prob_lower_bound(100, 0.6) > isolated_prob_lower_bound(200, 0.6)
        assert isolated_prob_lower_bound(100, 0.6) > isolated_prob_lower_bound(100, 0.7)

    def test_delta_domain(self):
        with pytest.raises(ValueError):
            isolated_prob_lower_bound(100, 0.3)  # below sqrt(6 log k / k)
        with pytest.raises(ValueError):
            isolated_prob_lower_bound(100, 1.0)
