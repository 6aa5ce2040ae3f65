"""Bilateral-agreement random graph laboratory.

Three families on n vertices: the bilateral (mutual top-k) graphs where an
edge needs both endpoints to rank each other among their k most-preferred
neighbors, the unilateral variant where one side's proposal suffices, and an
Erdős–Rényi baseline.  Alongside the generators: exact urn and degree
formulas, threshold curves, and a reproducible Monte Carlo harness.
"""

__version__ = "0.1.0"

from .analysis import AnalysisReport, analyze, has_component_in_range, min_degree_at_most
from .experiments import (
    CorrelationRecord,
    ResourceBudgetError,
    SweepCell,
    an_concentration_check,
    estimate_isolation,
    estimate_pair_correlation,
    run_sweep,
    set_thread_count,
)
from .formulas import (
    AnWindow,
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
from .gen import (
    generate,
    generate_bilateral,
    generate_er,
    generate_unilateral,
    graphs_from_top_k,
    top_k_sets,
    top_k_sets_oracle,
)
from .model import (
    ModelParams,
    SeedSpec,
    TopKSets,
    UndirectedGraph,
    canonicalize_edges,
    derive_stream,
    stream_root,
)
from .urn import (
    UrnSpec,
    exact_before_first_type0_pmf,
    exact_first_window_pmf,
    exact_first_window_tail,
    lower_tail_bound,
    negmulti_pmf,
    negmulti_shell_sum,
)
