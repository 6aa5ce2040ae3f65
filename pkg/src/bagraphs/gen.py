"""Graph realization for the three families.

The streaming generator never materializes the score table: each vertex row
feeds a bounded heap of size k, giving O(n*k) peak memory and O(n^2 log k)
time.  A small-instance oracle generator that materializes and sorts all
C(n, 2) scores is kept for equivalence testing and benchmarking.
"""

from __future__ import annotations

import numpy as np

from . import _kernels
from .model import (
    ModelParams,
    SeedSpec,
    TopKSets,
    UndirectedGraph,
    score_bits,
    stream_root,
)

ORACLE_MAX_N = 2000


def _require_kind(params: ModelParams, *kinds: str) -> None:
    if params.model_kind not in kinds:
        raise ValueError(f"model_kind must be one of {kinds}, got {params.model_kind!r}")


def top_k_sets(params: ModelParams, seed: SeedSpec) -> TopKSets:
    """Streaming per-vertex top-k selection over the virtual score table."""
    _require_kind(params, "bilateral", "unilateral")
    ids = _kernels.topk_ids(params.n, params.k, np.uint64(stream_root(seed)))
    return TopKSets(params.n, params.k, ids)


def top_k_sets_oracle(params: ModelParams, seed: SeedSpec) -> TopKSets:
    """Reference implementation: materialize every score, sort per vertex.

    Guarded to n <= ORACLE_MAX_N; the full score matrix is O(n^2).
    """
    _require_kind(params, "bilateral", "unilateral")
    n, k = params.n, params.k
    if n > ORACLE_MAX_N:
        raise ValueError(f"oracle generator is limited to n <= {ORACLE_MAX_N}")
    root = stream_root(seed)
    iu, iv = np.triu_indices(n, 1)
    eids = iu.astype(np.uint64) * np.uint64(n) + iv.astype(np.uint64)
    bits = score_bits(root, eids)
    score = np.zeros((n, n), dtype=np.uint64)
    eid_m = np.zeros((n, n), dtype=np.uint64)
    score[iu, iv] = bits
    score[iv, iu] = bits
    eid_m[iu, iv] = eids
    eid_m[iv, iu] = eids
    ids = np.empty((n, k), dtype=np.int64)
    for i in range(n):
        # ascending by (score, edge id); self sits first as (0, 0)
        order = np.lexsort((eid_m[i], score[i]))
        ids[i] = order[-k:][::-1]
    return TopKSets(n, k, ids)


def _proposal_eids(sets: TopKSets) -> np.ndarray:
    """Canonical edge ids of all n*k proposals, sorted ascending."""
    n, k = sets.n, sets.k
    i = np.repeat(np.arange(n, dtype=np.int64), k)
    j = sets.ids.ravel()
    u = np.minimum(i, j)
    v = np.maximum(i, j)
    eids = u * np.int64(n) + v
    eids.sort()
    return eids


def _eids_to_graph(n: int, eids: np.ndarray) -> UndirectedGraph:
    edges = np.empty((eids.size, 2), dtype=np.int64)
    edges[:, 0] = eids // n
    edges[:, 1] = eids % n
    return UndirectedGraph(n, edges)


def graphs_from_top_k(sets: TopKSets) -> tuple[UndirectedGraph, UndirectedGraph]:
    """(bilateral, unilateral) graphs realized from one proposal table.

    Each unordered pair occurs at most twice among the n*k proposals; a pair
    proposed by both endpoints becomes a bilateral edge, any proposed pair a
    unilateral one.  Hence |E(unilateral)| + |E(bilateral)| = n*k.
    """
    eids = _proposal_eids(sets)
    dup = eids[:-1] == eids[1:]
    mutual = eids[:-1][dup]
    distinct = np.unique(eids)
    return _eids_to_graph(sets.n, mutual), _eids_to_graph(sets.n, distinct)


def generate_bilateral(params: ModelParams, seed: SeedSpec) -> UndirectedGraph:
    """Mutual top-k graph: edge {i, j} iff each ranks the other in its top k."""
    _require_kind(params, "bilateral")
    sets = top_k_sets(params, seed)
    return graphs_from_top_k(sets)[0]


def generate_unilateral(params: ModelParams, seed: SeedSpec) -> UndirectedGraph:
    """Union top-k graph: edge {i, j} iff at least one endpoint proposes it."""
    _require_kind(params, "unilateral")
    sets = top_k_sets(params, seed)
    return graphs_from_top_k(sets)[1]


def generate_er(params: ModelParams, seed: SeedSpec) -> UndirectedGraph:
    """Erdős–Rényi baseline: each pair kept independently with probability p."""
    _require_kind(params, "erdos_renyi")
    edges = _kernels.er_edges(params.n, float(params.p), np.uint64(stream_root(seed)))
    return UndirectedGraph(params.n, edges)


def generate(params: ModelParams, seed: SeedSpec) -> UndirectedGraph:
    if params.model_kind == "bilateral":
        return generate_bilateral(params, seed)
    if params.model_kind == "unilateral":
        return generate_unilateral(params, seed)
    return generate_er(params, seed)


def generate_bilateral_oracle(params: ModelParams, seed: SeedSpec) -> UndirectedGraph:
    _require_kind(params, "bilateral")
    return graphs_from_top_k(top_k_sets_oracle(params, seed))[0]


def generate_unilateral_oracle(params: ModelParams, seed: SeedSpec) -> UndirectedGraph:
    _require_kind(params, "unilateral")
    return graphs_from_top_k(top_k_sets_oracle(params, seed))[1]
