"""Reproducible Monte Carlo campaigns over the graph families.

Each trial owns an RNG stream derived from (master seed, cell, trial index),
so results are a pure function of the inputs: independent of thread count,
execution order, and of which other cells run in the same sweep.  Trial-level
statistics land in per-trial slots and are reduced in fixed order.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np
import numba

from . import _kernels
from .model import MODEL_KINDS, SeedSpec, derive_stream, stream_root

DEFAULT_MEMORY_BUDGET_BYTES = 2 << 30
THREADS_ENV_VAR = "BAGRAPHS_THREADS"
_WILSON_Z95 = 1.959963984540054


class ResourceBudgetError(RuntimeError):
    """A requested cell would exceed the configured memory budget."""


@dataclass(frozen=True)
class SweepCell:
    """Aggregated Monte Carlo statistics for one (n, k) cell."""

    n: int
    k: int
    trials: int
    master_seed: int
    frac_connected: float
    mean_isolated: float
    mean_degree: float
    mean_min_degree: float
    frac_has_isolated: float
    wilson_ci_low: float
    wilson_ci_high: float


@dataclass(frozen=True)
class CorrelationRecord:
    """Joint-isolation estimates for vertices 0 and 1 and their ratio
    p12 / p1^2 (near 1 when pairwise isolation is nearly independent)."""

    n: int
    k: int
    trials: int
    p1_hat: float
    p12_hat: float
    ratio: float
    p1_se: float
    p12_se: float
    ratio_se: float
    ratio_defined: bool


def wilson_interval(successes: int, trials: int, z: float = _WILSON_Z95) -> tuple[float, float]:
    """Wilson score interval for a binomial fraction (well-behaved near 0/1)."""
    if trials < 1 or not 0 <= successes <= trials:
        raise ValueError("need 0 <= successes <= trials, trials >= 1")
    phat = successes / trials
    z2 = z * z
    denom = 1.0 + z2 / trials
    center = (phat + z2 / (2.0 * trials)) / denom
    half = z * math.sqrt(phat * (1.0 - phat) / trials + z2 / (4.0 * trials * trials)) / denom
    # at phat in {0, 1} the corresponding endpoint is exactly 0 or 1; avoid
    # float round-off breaking ci_low <= phat <= ci_high
    lo = 0.0 if successes == 0 else max(0.0, center - half)
    hi = 1.0 if successes == trials else min(1.0, center + half)
    return lo, hi


def set_thread_count(threads: int | None = None) -> int:
    """Cap the compiled-kernel thread pool; returns the effective count.

    Results do not depend on this value; it only bounds parallelism.  Values
    above the hardware limit are clamped.
    """
    if threads is None:
        env = os.environ.get(THREADS_ENV_VAR)
        threads = int(env) if env else numba.config.NUMBA_NUM_THREADS
    if threads < 1:
        raise ValueError("threads must be >= 1")
    effective = min(threads, numba.config.NUMBA_NUM_THREADS)
    numba.set_num_threads(effective)
    return effective


def trial_memory_bytes(n: int, k: int) -> int:
    """Peak per-trial working set of the streaming generator (O(n*k))."""
    return 12 * n * k + 32 * n


def _check_budget(n: int, k: int, budget_bytes: int) -> None:
    need = trial_memory_bytes(n, k) * numba.get_num_threads()
    if need > budget_bytes:
        raise ResourceBudgetError(
            f"cell (n={n}, k={k}) needs ~{need} bytes across threads, "
            f"budget is {budget_bytes}"
        )


def _cell_seed(seed: SeedSpec, n: int, k: int) -> SeedSpec:
    # position-independent: a cell's stream depends only on (seed, n, k)
    return derive_stream(derive_stream(seed, n), k)


def _trial_roots(seed: SeedSpec, trials: int) -> np.ndarray:
    return np.array(
        [stream_root(derive_stream(seed, t)) for t in range(trials)], dtype=np.uint64
    )


def _mutual_stats(n: int, k: int, seed: SeedSpec, trials: int, bilateral: bool) -> np.ndarray:
    return _kernels.mutual_trial_stats(n, k, _trial_roots(seed, trials), bilateral)


def run_sweep(
    n_list,
    k_list,
    trials: int,
    seed: SeedSpec,
    model_kind: str = "bilateral",
    memory_budget_bytes: int = DEFAULT_MEMORY_BUDGET_BYTES,
) -> list[SweepCell]:
    """Monte Carlo sweep over the grid n_list x k_list.

    For the Erdős–Rényi baseline a cell (n, k) uses edge probability
    p = k / (n - 1), matching the preference families' mean-degree scale.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if model_kind not in MODEL_KINDS:
        raise ValueError(f"model_kind must be one of {MODEL_KINDS}")
    cells = []
    for n in n_list:
        for k in k_list:
            if not 1 <= k <= n - 1:
                raise ValueError(f"invalid cell n={n}, k={k}")
            _check_budget(n, k, memory_budget_bytes)
            roots = _trial_roots(_cell_seed(seed, n, k), trials)
            if model_kind == "erdos_renyi":
                stats = _kernels.er_trial_stats(n, k / (n - 1), roots)
            else:
                stats = _kernels.mutual_trial_stats(n, k, roots, model_kind == "bilateral")
            if model_kind == "bilateral":
                assert int(stats[:, _kernels.STAT_MAX_DEG].max()) <= k, \
                    "bilateral degree cap violated"
            elif model_kind == "unilateral":
                assert int(stats[:, _kernels.STAT_MIN_DEG].min()) >= k, \
                    "unilateral degree floor violated"
            connected = int(stats[:, _kernels.STAT_CONNECTED].sum())
            ci_low, ci_high = wilson_interval(connected, trials)
            iso = stats[:, _kernels.STAT_ISOLATED]
            cells.append(
                SweepCell(
                    n=n,
                    k=k,
                    trials=trials,
                    master_seed=seed.master_seed,
                    frac_connected=connected / trials,
                    mean_isolated=float(iso.mean()),
                    mean_degree=float((2.0 * stats[:, _kernels.STAT_EDGES] / n).mean()),
                    mean_min_degree=float(stats[:, _kernels.STAT_MIN_DEG].mean()),
                    frac_has_isolated=float((iso >= 1).mean()),
                    wilson_ci_low=ci_low,
                    wilson_ci_high=ci_high,
                )
            )
    return cells


def estimate_isolation(n: int, k: int, trials: int, seed: SeedSpec) -> tuple[float, float]:
    """(p1_hat, mean_isolated): isolation frequency of vertex 0 and the mean
    isolated-vertex count.  By exchangeability E[mean_isolated] = n * P{I_1}."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    stats = _mutual_stats(n, k, _cell_seed(seed, n, k), trials, True)
    p1_hat = float(stats[:, _kernels.STAT_ISO_V0].mean())
    mean_isolated = float(stats[:, _kernels.STAT_ISOLATED].mean())
    return p1_hat, mean_isolated


def estimate_pair_correlation(n: int, k: int, trials: int, seed: SeedSpec) -> CorrelationRecord:
    """Estimate P{I_0 I_1} / P{I_0}^2 with a delta-method standard error.

    The ratio is flagged undefined (NaN) when no trial isolates vertex 0.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    stats = _mutual_stats(n, k, _cell_seed(seed, n, k), trials, True)
    iso0 = stats[:, _kernels.STAT_ISO_V0]
    both = iso0 * stats[:, _kernels.STAT_ISO_V1]
    p1 = float(iso0.mean())
    p12 = float(both.mean())
    p1_se = math.sqrt(p1 * (1.0 - p1) / trials)
    p12_se = math.sqrt(p12 * (1.0 - p12) / trials)
    if p1 == 0.0:
        return CorrelationRecord(n, k, trials, p1, p12, math.nan, p1_se, p12_se, math.nan, False)
    # delta method on R = p12 / p1^2; I_0 I_1 <= I_0 gives cov = p12 (1 - p1) / T
    cov = p12 * (1.0 - p1) / trials
    var_r = (
        p12_se**2 / p1**4
        + 4.0 * p12**2 * p1_se**2 / p1**6
        - 4.0 * p12 * cov / p1**5
    )
    ratio_se = math.sqrt(max(var_r, 0.0))
    return CorrelationRecord(
        n, k, trials, p1, p12, p12 / p1**2, p1_se, p12_se, ratio_se, True
    )


def an_concentration_check(n: int, t: float, trials: int, seed: SeedSpec) -> float:
    """Fraction of trials in which every vertex's k-th largest exponential
    score (k = floor(t log n)) lies strictly inside the concentration window."""
    from .formulas import an_window

    if trials < 1:
        raise ValueError("trials must be >= 1")
    k = math.floor(t * math.log(n))
    if k < 1:
        raise ValueError("need floor(t log n) >= 1")
    w = an_window(n, t)
    cell = derive_stream(_cell_seed(seed, n, k), 1_000_003)  # distinct from sweeps
    minmax = _kernels.kth_score_minmax(n, k, _trial_roots(cell, trials))
    inside = (minmax[:, 0] > w.lower) & (minmax[:, 1] < w.upper)
    return float(inside.mean())


def rank_connection_frequencies(
    n: int, k: int, trials: int, seed: SeedSpec
) -> tuple[np.ndarray, np.ndarray]:
    """Empirical probability that a vertex's rank-r proposal is reciprocated,
    with a trial-level standard error, for r = 1..k."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    counts = _kernels.rank_connection_counts(
        n, k, _trial_roots(_cell_seed(seed, n, k), trials)
    )
    per_trial = counts / float(n)
    freqs = per_trial.mean(axis=0)
    ses = per_trial.std(axis=0, ddof=1) / math.sqrt(trials)
    return freqs, ses
