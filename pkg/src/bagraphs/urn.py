"""Exact urn probabilities for typed random permutations, their negative
multinomial limits, and brute-force enumeration oracles.

The permutation model: M = m_0 + ... + m_s distinct objects, m_i of type i,
arranged uniformly at random, with order restrictions allowed only within
type 0 (restrictions divide the count of favorable and total arrangements by
the same symmetry factor, so they never change these probabilities).  All
exact paths use arbitrary-precision rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, exp, factorial, log

import numpy as np

from . import _kernels

ENUMERATION_MAX_TOTAL = 9


@dataclass(frozen=True)
class UrnSpec:
    """Type counts (m_0, m_1, ..., m_s); type 0 is the distinguished one."""

    type_counts: tuple

    def __post_init__(self) -> None:
        counts = tuple(int(c) for c in self.type_counts)
        if len(counts) < 2:
            raise ValueError("need at least two types (s >= 1)")
        if any(c < 1 for c in counts):
            raise ValueError("all type counts must be >= 1")
        object.__setattr__(self, "type_counts", counts)

    @property
    def m0(self) -> int:
        return self.type_counts[0]

    @property
    def s(self) -> int:
        return len(self.type_counts) - 1

    @property
    def total(self) -> int:
        return sum(self.type_counts)


def _falling(a: int, b: int) -> int:
    out = 1
    for i in range(b):
        out *= a - i
    return out


def exact_first_window_pmf(spec: UrnSpec, m: int, j: int) -> Fraction:
    """P{exactly j type-0 objects among the first m places}.

    p_j = C(m, j) * m_0^(j falling) * (M - m_0)^(m-j falling) / M^(m falling).
    """
    if not 0 <= m <= spec.total:
        raise ValueError("need 0 <= m <= total object count")
    if not 0 <= j <= min(m, spec.m0):
        raise ValueError("need 0 <= j <= min(m, m0)")
    M = spec.total
    num = comb(m, j) * _falling(spec.m0, j) * _falling(M - spec.m0, m - j)
    return Fraction(num, _falling(M, m))


def exact_first_window_tail(spec: UrnSpec, m: int, t: int) -> Fraction:
    """P{at most t type-0 objects among the first m places}, exact."""
    hi = min(t, m, spec.m0)
    return sum(
        (exact_first_window_pmf(spec, m, j) for j in range(0, hi + 1)),
        start=Fraction(0),
    )


def exact_before_first_type0_pmf(spec: UrnSpec, counts) -> Fraction:
    """P{counts[j-1] objects of type j appear before the first type-0 object}."""
    counts = tuple(int(c) for c in counts)
    if len(counts) != spec.s:
        raise ValueError("counts must list one value per non-zero type")
    if any(not 0 <= c <= mj for c, mj in zip(counts, spec.type_counts[1:])):
        raise ValueError("counts must satisfy 0 <= i_j <= m_j")
    S = sum(counts)
    num = spec.m0 * factorial(S)
    for mj, ij in zip(spec.type_counts[1:], counts):
        num *= comb(mj, ij)
    return Fraction(num, _falling(spec.total, S + 1))


def negmulti_pmf(k: int, counts) -> Fraction:
    """Negative multinomial mass: counts of k uniform types seen before the
    first occurrence of type k+1 in i.i.d. draws over k+1 types."""
    counts = tuple(int(c) for c in counts)
    if k < 1 or len(counts) != k:
        raise ValueError("need k >= 1 and exactly k counts")
    if any(c < 0 for c in counts):
        raise ValueError("counts must be non-negative")
    S = sum(counts)
    num = factorial(S)
    for c in counts:
        num //= factorial(c)
    return Fraction(num, (k + 1) ** (S + 1))


def negmulti_shell_sum(k: int, n: int) -> Fraction:
    """Sum of negmulti_pmf over all count vectors with total n-1.

    Equals (1/(k+1)) * (k/(k+1))^(n-1): the draw sequence avoids type k+1 for
    n-1 steps and then hits it.
    """
    if k < 1 or n < 1:
        raise ValueError("need k >= 1 and n >= 1")
    return Fraction(1, k + 1) * Fraction(k, k + 1) ** (n - 1)


def lower_tail_bound(s: int, m: int, t: int) -> float:
    """Leading factor of the lower-tail bound for the first-window count:

        P{X <= t} <~ exp(-m/(s+1) + t*log(m/(t*s)) + t + log(t+1))

    valid for 1 <= t <= m/s (the bound may exceed 1 and is then vacuous but
    still an upper bound).  The vanishing finite-size correction factor is not
    modeled.
    """
    if s < 1 or m < 1:
        raise ValueError("need s >= 1 and m >= 1")
    if not 1 <= t <= m / s:
        raise ValueError("need 1 <= t <= m/s")
    return exp(-m / (s + 1) + t * log(m / (t * s)) + t + log(t + 1))


@lru_cache(maxsize=None)
def _enumeration_hists(spec: UrnSpec):
    """Exhaustive enumeration of all multiset permutations of the spec.

    Returns (hist1, hist2, place, total): hist1[m, z] counts permutations with
    z type-0 objects in the first m places; hist2[code] counts permutations by
    the mixed-radix code of the per-type counts before the first type-0.
    All distinct type sequences are equally likely, so favorable/total counts
    give exact probabilities.
    """
    if spec.total > ENUMERATION_MAX_TOTAL:
        raise ValueError(f"enumeration oracle capped at M <= {ENUMERATION_MAX_TOTAL}")
    counts = spec.type_counts
    seq0 = np.repeat(np.arange(len(counts)), counts).astype(np.int64)
    place = np.ones(spec.s, np.int64)
    for j in range(1, spec.s):
        place[j] = place[j - 1] * (counts[j] + 1)
    ncodes = int(place[-1]) * (counts[-1] + 1)
    hist1 = np.zeros((spec.total + 1, spec.m0 + 1), np.int64)
    hist2 = np.zeros(ncodes, np.int64)
    _kernels.multiset_permutation_hists(seq0, place, hist1, hist2)
    total = factorial(spec.total)
    for c in counts:
        total //= factorial(c)
    assert int(hist1[0, 0]) == total
    return hist1, hist2, place, total


def enumeration_first_window_pmf(spec: UrnSpec, m: int, j: int) -> Fraction:
    """Oracle for exact_first_window_pmf by exhaustive enumeration (M <= 9)."""
    if not 0 <= m <= spec.total or not 0 <= j <= min(m, spec.m0):
        raise ValueError("out-of-range (m, j)")
    hist1, _, _, total = _enumeration_hists(spec)
    return Fraction(int(hist1[m, j]), total)


def enumeration_before_first_type0_pmf(spec: UrnSpec, counts) -> Fraction:
    """Oracle for exact_before_first_type0_pmf by exhaustive enumeration."""
    counts = tuple(int(c) for c in counts)
    if len(counts) != spec.s:
        raise ValueError("counts must list one value per non-zero type")
    _, hist2, place, total = _enumeration_hists(spec)
    code = int(sum(p * c for p, c in zip(place, counts)))
    return Fraction(int(hist2[code]), total)


def all_specs_up_to(max_total: int):
    """Every UrnSpec with 2 <= total <= max_total (ordered compositions)."""
    def compositions(total, parts):
        if parts == 1:
            yield (total,)
            return
        for first in range(1, total - parts + 2):
            for rest in compositions(total - first, parts - 1):
                yield (first,) + rest

    for M in range(2, max_total + 1):
        for parts in range(2, M + 1):
            for c in compositions(M, parts):
                yield UrnSpec(c)
