import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bagraphs.urn import (
    UrnSpec,
    all_specs_up_to,
    enumeration_before_first_type0_pmf,
    enumeration_first_window_pmf,
    exact_before_first_type0_pmf,
    exact_first_window_pmf,
    exact_first_window_tail,
    lower_tail_bound,
    negmulti_pmf,
    negmulti_shell_sum,
)


def compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(0, total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


class TestUrnSpec:
    def test_properties(self):
        s = UrnSpec((3, 2, 2))
        assert s.m0 == 3 and s.s == 2 and s.total == 7

    @pytest.mark.parametrize("counts", [(), (3,), (0, 1), (1, 0), (2, -1)])
    def test_rejects(self, counts):
        with pytest.raises(ValueError):
            UrnSpec(counts)


class TestFirstWindowPmf:
    def test_hypergeometric_case(self):
        assert exact_first_window_pmf(UrnSpec((2, 2)), 2, 1) == Fraction(2, 3)

    def test_empty_window(self):
        assert exact_first_window_pmf(UrnSpec((2, 2)), 0, 0) == 1

    def test_full_window_forces_all(self):
        spec = UrnSpec((2, 3))
        assert exact_first_window_pmf(spec, 5, 2) == 1

    def test_matches_enumeration_322(self):
        spec = UrnSpec((3, 2, 2))
        assert exact_first_window_pmf(spec, 2, 2) == enumeration_first_window_pmf(spec, 2, 2)

    def test_out_of_range(self):
        spec = UrnSpec((2, 2))
        with pytest.raises(ValueError):
            exact_first_window_pmf(spec, 5, 0)
        with pytest.raises(ValueError):
            exact_first_window_pmf(spec, 2, 3)

    @given(
        counts=st.lists(st.integers(1, 3), min_size=2, max_size=4),
        m=st.integers(0, 12),
    )
    def test_normalization(self, counts, m):
        spec = UrnSpec(tuple(counts))
        m = min(m, spec.total)
        total = sum(
            (exact_first_window_pmf(spec, m, j) for j in range(min(m, spec.m0) + 1)),
            start=Fraction(0),
        )
        assert total == 1

    def test_enumeration_sweep_small(self):
        # exhaustive agreement for every spec with M <= 7 (M <= 9 runs in the
        # acceptance suite)
        for spec in all_specs_up_to(7):
            for m in range(spec.total + 1):
                for j in range(min(m, spec.m0) + 1):
                    assert exact_first_window_pmf(spec, m, j) == \
                        enumeration_first_window_pmf(spec, m, j), (spec, m, j)


class TestBeforeFirstType0:
    def test_two_types_half(self):
        assert exact_before_first_type0_pmf(UrnSpec((1, 1)), (0,)) == Fraction(1, 2)

    def test_product_case(self):
        assert exact_before_first_type0_pmf(UrnSpec((2, 2)), (1,)) == Fraction(1, 3)

    def test_matches_enumeration_221(self):
        spec = UrnSpec((2, 2, 1))
        assert exact_before_first_type0_pmf(spec, (1, 1)) == \
            enumeration_before_first_type0_pmf(spec, (1, 1))

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            exact_before_first_type0_pmf(UrnSpec((2, 2)), (3,))
        with pytest.raises(ValueError):
            exact_before_first_type0_pmf(UrnSpec((2, 2)), (1, 1))

    def test_enumeration_sweep_small(self):
        for spec in all_specs_up_to(7):
            for ivec in itertools.product(*[range(mj + 1) for mj in spec.type_counts[1:]]):
                assert exact_before_first_type0_pmf(spec, ivec) == \
                    enumeration_before_first_type0_pmf(spec, ivec), (spec, ivec)

    def test_convergence_to_negative_multinomial(self):
        # balanced specs with growing counts: exact pmf / limit pmf -> 1
        for s, counts in [(2, (2, 1)), (2, (3, 2)), (3, (1, 2, 2))]:
            prev_err = None
            for m_c in (100, 1000, 10_000):
                spec = UrnSpec((m_c,) * (s + 1))
                ratio = exact_before_first_type0_pmf(spec, counts) / negmulti_pmf(s, counts)
                err = abs(float(ratio) - 1.0)
                if prev_err is not None:
                    assert err < prev_err
                prev_err = err
            assert prev_err < 0.01


class TestNegativeMultinomial:
    def test_k1_zero_counts(self):
        assert negmulti_pmf(1, (0,)) == Fraction(1, 2)

    def test_k2_example(self):
        assert negmulti_pmf(2, (1, 0)) == Fraction(1, 9)

    def test_matches_iid_enumeration(self):
        # brute force over all draw sequences of length S+1 from k+1 symbols
        for k in (1, 2, 3):
            for counts in compositions(3, k):
                S = sum(counts)
                want = Fraction(0)
                for seq in itertools.product(range(k + 1), repeat=S + 1):
                    if seq[-1] != k or k in seq[:-1]:
                        continue
                    got = tuple(seq[:-1].count(ty) for ty in range(k))
                    if got == counts:
                        want += Fraction(1, (k + 1) ** (S + 1))
                assert negmulti_pmf(k, counts) == want, (k, counts)

    def test_shell_sum_closed_form(self):
        assert negmulti_shell_sum(1, 1) == Fraction(1, 2)
        assert negmulti_shell_sum(2, 2) == Fraction(2, 9)

    def test_shell_is_sum_of_pmfs(self):
        for k, n in [(2, 2), (3, 4), (2, 5)]:
            total = sum(
                (negmulti_pmf(k, c) for c in compositions(n - 1, k)), start=Fraction(0)
            )
            assert total == negmulti_shell_sum(k, n), (k, n)

    def test_shell_remainder_identity(self):
        # tail past 4(k+1)^2 equals (k/(k+1))^(4(k+1)^2) <= e^(-4(k+1))
        for k in range(1, 7):
            cap = 4 * (k + 1) ** 2
            partial = sum(
                (negmulti_shell_sum(k, n) for n in range(1, cap + 1)), start=Fraction(0)
            )
            remainder = 1 - partial
            assert remainder == Fraction(k, k + 1) ** cap
            assert float(remainder) <= math.exp(-4 * (k + 1))

    def test_validation(self):
        with pytest.raises(ValueError):
            negmulti_pmf(0, ())
        with pytest.raises(ValueError):
            negmulti_pmf(2, (1,))
        with pytest.raises(ValueError):
            negmulti_pmf(2, (-1, 0))


class TestLowerTailBound:
    def test_frozen_values(self):
        assert lower_tail_bound(1, 4, 1) == pytest.approx(math.exp(-1 + math.log(8)))
        want = math.exp(-7.5 + 5 * math.log(2) + 5 + math.log(6))
        assert lower_tail_bound(3, 30, 5) == pytest.approx(want)

    def test_rejects_t_above_m_over_s(self):
        with pytest.raises(ValueError):
            lower_tail_bound(3, 30, 11)

    def test_bounds_exact_tail_on_grid(self):
        # small slice of the acceptance grid: exact P{X <= t} <= 1.10 * bound
        for s in (2, 3):
            for c in (8, 16):
                spec = UrnSpec((c,) * (s + 1))
                for m in range(s, min(24, spec.total) + 1):
                    for t in range(1, m // s + 1):
                        exact = exact_first_window_tail(spec, m, t)
                        assert float(exact) <= 1.10 * lower_tail_bound(s, m, t)
