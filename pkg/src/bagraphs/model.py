"""Shared domain types and the deterministic seeding policy.

Every random quantity in this package is a pure function of a
:class:`SeedSpec`.  Edge scores are produced by hashing the canonical edge id
with a SplitMix64-style mixer keyed by the seed, so any edge score can be
recomputed on demand (both endpoints of an edge observe the same score
without it ever being stored).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

MODEL_KINDS = ("bilateral", "unilateral", "erdos_renyi")

_MASK64 = (1 << 64) - 1
# SplitMix64 constants (golden-ratio increment and the two mixing multipliers).
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
_MIX_M1 = 0xBF58476D1CE4E5B9
_MIX_M2 = 0x94D049BB133111EB


def mix64(z: int) -> int:
    """SplitMix64 finalizer: a bijective avalanche mix on 64-bit integers."""
    z &= _MASK64
    z = ((z ^ (z >> 30)) * _MIX_M1) & _MASK64
    z = ((z ^ (z >> 27)) * _MIX_M2) & _MASK64
    return z ^ (z >> 31)


def mix64_array(z: np.ndarray) -> np.ndarray:
    """Vectorized :func:`mix64` on a uint64 array (wrapping arithmetic)."""
    z = z.astype(np.uint64, copy=True)
    z ^= z >> np.uint64(30)
    z *= np.uint64(_MIX_M1)
    z ^= z >> np.uint64(27)
    z *= np.uint64(_MIX_M2)
    z ^= z >> np.uint64(31)
    return z


@dataclass(frozen=True)
class SeedSpec:
    """Master seed plus a stream index; the pair fully determines one RNG stream."""

    master_seed: int
    stream_index: int = 0

    def __post_init__(self) -> None:
        for name in ("master_seed", "stream_index"):
            v = getattr(self, name)
            if not isinstance(v, int) or not (0 <= v <= _MASK64):
                raise ValueError(f"{name} must be an integer in [0, 2^64)")


def derive_stream(seed: SeedSpec, trial: int) -> SeedSpec:
    """Derive the per-trial sub-stream of `seed`.

    Injective over `trial` for a fixed seed: trial t maps to
    mix64(mix64(stream + gamma) + t) and both steps are injective mod 2^64.
    """
    if trial < 0 or trial > _MASK64:
        raise ValueError("trial must be a non-negative 64-bit integer")
    new_stream = mix64((mix64(seed.stream_index + GOLDEN_GAMMA) + trial) & _MASK64)
    return SeedSpec(seed.master_seed, new_stream)


def stream_root(seed: SeedSpec) -> int:
    """Collapse a SeedSpec into the 64-bit key of its score stream."""
    return mix64(mix64(seed.master_seed + GOLDEN_GAMMA) ^ seed.stream_index)


def edge_id(u: int, v: int, n: int) -> int:
    """Canonical id of the unordered edge {u, v} in a graph on n vertices."""
    if u > v:
        u, v = v, u
    return u * n + v


def score_bits(root: int, eids: np.ndarray) -> np.ndarray:
    """Raw 64-bit scores for edge ids under stream key `root` (vectorized).

    Scores of distinct edges are compared as the pair (bits, edge id), which
    makes the preference order a total order with probability one: equal bits
    fall back to the canonical edge id.
    """
    e = np.asarray(eids, dtype=np.uint64)
    return mix64_array(np.uint64(root) + e * np.uint64(GOLDEN_GAMMA))


def uniform_from_bits(bits: np.ndarray) -> np.ndarray:
    """Map raw score bits to floats in [0, 1) (53-bit resolution)."""
    b = np.asarray(bits, dtype=np.uint64)
    return (b >> np.uint64(11)).astype(np.float64) * 2.0**-53


def exponential_from_bits(bits: np.ndarray) -> np.ndarray:
    """Map raw score bits to exponential(1) variates, strictly positive."""
    b = np.asarray(bits, dtype=np.uint64)
    u = ((b >> np.uint64(11)).astype(np.float64) + 0.5) * 2.0**-53
    return -np.log(u)


@dataclass(frozen=True)
class ModelParams:
    """Parameters of one graph-family instance.

    `k` is the per-vertex preference budget for the bilateral (mutual top-k)
    and unilateral families; `p` is the edge probability for the Erdős–Rényi
    baseline and is ignored otherwise.
    """

    n: int
    k: int | None = None
    model_kind: str = "bilateral"
    p: float | None = None

    def __post_init__(self) -> None:
        if self.model_kind not in MODEL_KINDS:
            raise ValueError(f"model_kind must be one of {MODEL_KINDS}")
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError("n must be a positive integer")
        if self.model_kind in ("bilateral", "unilateral"):
            if not isinstance(self.k, int):
                raise ValueError("k is required for preference-based models")
            if not 1 <= self.k <= self.n - 1:
                raise ValueError("k must satisfy 1 <= k <= n-1")
        else:
            if self.p is None or not (0.0 <= float(self.p) <= 1.0):
                raise ValueError("p must lie in [0, 1] for erdos_renyi")


@dataclass(frozen=True, eq=False)
class TopKSets:
    """Per-vertex lists of the k most-preferred neighbors, best first (row i
    holds the neighbor ids of vertex i in strictly descending score order)."""

    n: int
    k: int
    ids: np.ndarray  # shape (n, k), int64

    def __post_init__(self) -> None:
        ids = np.asarray(self.ids, dtype=np.int64)
        if ids.shape != (self.n, self.k):
            raise ValueError("ids must have shape (n, k)")
        ids.setflags(write=False)
        object.__setattr__(self, "ids", ids)


def canonicalize_edges(n: int, edges: Iterable | np.ndarray) -> np.ndarray:
    """Return edges as a deduplicated (m, 2) int64 array, u < v, sorted rows.

    Rejects self-loops and out-of-range vertex ids.  Idempotent on its own
    output.
    """
    arr = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges,
                     dtype=np.int64)
    if arr.size == 0:
        return np.empty((0, 2), dtype=np.int64)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError("edges must be pairs")
    if arr.min() < 0 or arr.max() >= n:
        raise ValueError("vertex id out of range")
    u = np.minimum(arr[:, 0], arr[:, 1])
    v = np.maximum(arr[:, 0], arr[:, 1])
    if np.any(u == v):
        raise ValueError("self-loops are not allowed")
    eid = np.unique(u * np.int64(n) + v)
    out = np.empty((eid.size, 2), dtype=np.int64)
    out[:, 0] = eid // n
    out[:, 1] = eid % n
    return out


@dataclass(frozen=True, eq=False)
class UndirectedGraph:
    """Simple undirected graph with canonical edge storage and a CSR adjacency
    index for traversal.  Immutable after construction."""

    n: int
    edges: np.ndarray  # shape (m, 2), int64, u < v, lexicographically sorted
    _indptr: np.ndarray = field(init=False, repr=False)
    _indices: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("n must be positive")
        edges = canonicalize_edges(self.n, self.edges)
        edges.setflags(write=False)
        object.__setattr__(self, "edges", edges)
        deg = np.bincount(edges.ravel(), minlength=self.n)
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        np.cumsum(deg, out=indptr[1:])
        ends = np.concatenate([edges[:, 0], edges[:, 1]])
        others = np.concatenate([edges[:, 1], edges[:, 0]])
        order = np.argsort(ends, kind="stable")
        indices = others[order]
        indices.setflags(write=False)
        indptr.setflags(write=False)
        object.__setattr__(self, "_indptr", indptr)
        object.__setattr__(self, "_indices", indices)

    @property
    def edge_count(self) -> int:
        return int(self.edges.shape[0])

    def degrees(self) -> np.ndarray:
        return np.diff(self._indptr)

    def neighbors(self, v: int) -> np.ndarray:
        return self._indices[self._indptr[v]:self._indptr[v + 1]]
