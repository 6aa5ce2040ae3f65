"""Closed forms for the mutual top-k family: per-rank connection odds, exact
and asymptotic mean degree, the Erlang-integral cross-check, connectivity
threshold curves, and component-size bound machinery.

Conventions: all logarithms are natural; p = 1/2 throughout the negative
binomial formulas (the two competing vertices' edge streams are symmetric).
Exact values use rationals up to k = 64, log-gamma beyond.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from math import comb, lgamma, log, sqrt
from typing import NamedTuple

import numpy as np
from scipy import integrate, special

EXACT_MAX_K = 64
SQRT2 = math.sqrt(2.0)
ERLANG_MAX_K = 30
# smallest component size covered by the component-count bound at threshold
# multiplier t is ceil(8.24 / t); 8.24 absorbs the exp(sqrt(2)) numerics.
COMPONENT_BOUND_MIN_SIZE_NUMERATOR = 8.24
_LOG_TERM_OVERFLOW = 700.0

T_FORM = "t_form"
T_PRIME_FORM = "t_prime_form"
DISC_FORM = "disc_form"
THRESHOLD_FORMS = (T_FORM, T_PRIME_FORM, DISC_FORM)


@dataclass(frozen=True)
class ThresholdParams:
    """Multipliers for the threshold curves k(n).

    t scales k = floor(t * log n); t_prime refines around log n via
    k = floor(log n + t_prime * loglog n * sqrt(log n)); delta enters the
    isolation lower bound exp(-k (1 + delta)).
    """

    t: float = 1.0
    t_prime: float = 0.0
    delta: float = 0.5

    def __post_init__(self) -> None:
        if not self.t > 0:
            raise ValueError("t must be positive")
        if not 0.0 < self.delta < 1.0:
            raise ValueError("delta must lie in (0, 1)")


def negbin_pmf(k: int, j: int) -> Fraction:
    """P{j failures before the k-th success} for fair Bernoulli draws:
    C(k+j-1, j) / 2^(k+j)."""
    if k < 1 or j < 0:
        raise ValueError("need k >= 1 and j >= 0")
    return Fraction(comb(k + j - 1, j), 2 ** (k + j))


def negbin_lower_sum(k: int) -> Fraction:
    """Sum of negbin_pmf(k, j) over j < k; equals 1/2 by the symmetry of two
    fair racing streams (whichever color reaches k draws first)."""
    return sum((negbin_pmf(k, j) for j in range(k)), start=Fraction(0))


def negbin_partial_mean(k: int) -> Fraction:
    """Closed form of sum_{j<k} j * negbin_pmf(k, j):
    k/2 - (2k-1) * C(2k-2, k-1) / 2^(2k-1)."""
    if k < 1:
        raise ValueError("need k >= 1")
    return Fraction(k, 2) - Fraction((2 * k - 1) * comb(2 * k - 2, k - 1), 2 ** (2 * k - 1))


def mean_degree_limit_exact(k: int) -> Fraction:
    """Large-n limit of the mean degree, exactly:
    k - (2k-1) * C(2k-2, k-1) / 2^(2k-1)."""
    if k < 1:
        raise ValueError("need k >= 1")
    return k - Fraction((2 * k - 1) * comb(2 * k - 2, k - 1), 2 ** (2 * k - 1))


def mean_degree_limit(k: int) -> float:
    """Float mean-degree limit; exact rationals up to k=64, log-gamma beyond
    (2^(2k-1) overflows 64-bit arithmetic past k=32)."""
    if k < 1:
        raise ValueError("need k >= 1")
    if k <= EXACT_MAX_K:
        return float(mean_degree_limit_exact(k))
    log_deficit = (
        log(2 * k - 1) + lgamma(2 * k - 1) - 2 * lgamma(k) - (2 * k - 1) * log(2.0)
    )
    return k - math.exp(log_deficit)


def conn_prob_by_rank(i: int, k: int) -> Fraction:
    """Limiting probability that a vertex's rank-i proposal is reciprocated;
    zero beyond rank k (a vertex never proposes past its budget)."""
    if k < 1 or i < 1:
        raise ValueError("need i >= 1 and k >= 1")
    if i > k:
        return Fraction(0)
    return 1 - sum((negbin_pmf(k, j) for j in range(i)), start=Fraction(0))


def mean_degree_asymptotic(k: int) -> float:
    """Large-k expansion of the mean-degree limit:
    k - sqrt(k/pi) + 1/(8 sqrt(pi k)).  Inaccurate at small k."""
    if k < 1:
        raise ValueError("need k >= 1")
    return k - sqrt(k / math.pi) + 1.0 / (8.0 * sqrt(math.pi * k))


def erlang_ccdf(k: int, x) -> np.ndarray:
    """Complementary CDF of Erlang(k, 1): exp(-x) * sum_{i<k} x^i / i!."""
    return special.gammaincc(k, x)


def erlang_integral_mean_degree(k: int) -> float:
    """Mean degree via the independent quadrature route: integral over x of
    the squared Erlang(k, 1) complementary CDF.

    Agrees with mean_degree_limit(k); restricted to k <= 30 to keep the
    quadrature comfortably inside a 1e-8 accuracy budget.
    """
    if not 1 <= k <= ERLANG_MAX_K:
        raise ValueError(f"need 1 <= k <= {ERLANG_MAX_K}")
    upper = k + 60.0 * sqrt(k) + 60.0
    # integrand below 1e-16 past `upper`; extending further only adds noise
    assert erlang_ccdf(k, upper) ** 2 < 1e-16
    val, _ = integrate.quad(
        lambda x: float(erlang_ccdf(k, x)) ** 2, 0.0, upper,
        epsabs=1e-13, epsrel=1e-13, limit=400,
    )
    return val


def threshold_k(n: int, params: ThresholdParams, form: str) -> int:
    """Integer preference budget k(n) for one of the threshold curves.

    Results below 1 are clamped to 1 with a warning: the disconnectivity
    curve log n - 3 sqrt(log n loglog n) is negative at desk-scale n.
    """
    if n < 16:
        raise ValueError("need n >= 16 so that loglog n > 0")
    if form not in THRESHOLD_FORMS:
        raise ValueError(f"form must be one of {THRESHOLD_FORMS}")
    ln = log(n)
    lln = log(ln)
    if form == T_FORM:
        raw = params.t * ln
    elif form == T_PRIME_FORM:
        raw = ln + params.t_prime * lln * sqrt(ln)
    else:
        raw = ln - 3.0 * sqrt(ln * lln)
    k = math.floor(raw)
    if k < 1:
        warnings.warn(
            f"threshold form {form} gives k={k} at n={n}; clamped to 1",
            RuntimeWarning,
            stacklevel=2,
        )
        return 1
    return k


def isolated_prob_lower_bound(k: int, delta: float) -> float:
    """Exponential factor exp(-k (1 + delta)) of the isolation-probability
    lower bound; the unspecified O(.) constant is omitted, so this is a
    diagnostic scale, not a strict threshold."""
    if k < 1:
        raise ValueError("need k >= 1")
    lo = sqrt(6.0 * log(k) / k) if k > 1 else 0.0
    if not lo <= delta < 1.0:
        raise ValueError(f"need sqrt(6 log k / k) = {lo:.4f} <= delta < 1")
    return math.exp(-k * (1.0 + delta))


class AnWindow(NamedTuple):
    lower: float
    upper: float
    p_bar: float        # P{score > upper}: exceedance odds at the window top
    p_underbar: float   # P{score > lower}: exceedance odds at the window bottom


def an_window(n: int, t: float) -> AnWindow:
    """Concentration window for each vertex's k-th largest exponential score
    at k ~ t log n: a band of halfwidth sqrt(2) around log((n-1)/(t log n)),
    with the edge-score exceedance probabilities at both band edges."""
    if n < 3:
        raise ValueError("need n >= 3")
    if not t > 0:
        raise ValueError("need t > 0")
    tlogn = t * log(n)
    if not tlogn < n - 1:
        raise ValueError("need t log n < n - 1")
    center = log((n - 1) / tlogn)
    scale = tlogn / (n - 1)
    return AnWindow(
        lower=center - SQRT2,
        upper=center + SQRT2,
        p_bar=scale * math.exp(-SQRT2),
        p_underbar=scale * math.exp(SQRT2),
    )


def component_bound_pi(n: int, t: float) -> float:
    """Finite-sum upper bound on the probability of a mid-sized component:

        sum over r in [ceil(8.24/t), n/2] of
            C(n, r) * r^(r-2) * p_underbar^(r-1) * (1 - p_bar)^(r (n - r))

    evaluated in log space.  Returns inf when any term's log exceeds 700
    (the chain is vacuous until n is extremely large; see the tests for the
    regime where it vanishes).
    """
    if n < 100:
        raise ValueError("need n >= 100")
    if not t > 0:
        raise ValueError("need t > 0")
    w = an_window(n, t)
    r_lo = math.ceil(COMPONENT_BOUND_MIN_SIZE_NUMERATOR / t)
    r_hi = n // 2
    if r_lo > r_hi:
        return 0.0
    r = np.arange(r_lo, r_hi + 1, dtype=np.float64)
    log_terms = (
        special.gammaln(n + 1.0) - special.gammaln(r + 1.0) - special.gammaln(n - r + 1.0)
        + (r - 2.0) * np.log(r)
        + (r - 1.0) * log(w.p_underbar)
        + r * (n - r) * math.log1p(-w.p_bar)
    )
    if float(log_terms.max()) > _LOG_TERM_OVERFLOW:
        return math.inf
    return float(math.exp(special.logsumexp(log_terms)))
