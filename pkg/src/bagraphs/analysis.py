"""Deterministic graph statistics: degrees, components, connectivity."""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .model import UndirectedGraph


@dataclass(frozen=True)
class AnalysisReport:
    n: int
    edge_count: int
    degree_histogram: dict
    min_degree: int
    max_degree: int
    mean_degree: float
    isolated_count: int
    component_sizes: tuple
    is_connected: bool

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "edge_count": self.edge_count,
            "degree_histogram": {str(d): c for d, c in sorted(self.degree_histogram.items())},
            "min_degree": self.min_degree,
            "max_degree": self.max_degree,
            "mean_degree": self.mean_degree,
            "isolated_count": self.isolated_count,
            "component_sizes": list(self.component_sizes),
            "is_connected": self.is_connected,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())


def analyze(graph: UndirectedGraph) -> AnalysisReport:
    """Exact degree and component statistics (components via union-find)."""
    n = graph.n
    deg = graph.degrees()
    hist = {int(d): int(c) for d, c in enumerate(np.bincount(deg)) if c > 0}
    labels = _kernels.component_labels(
        n, np.ascontiguousarray(graph.edges[:, 0]), np.ascontiguousarray(graph.edges[:, 1])
    )
    sizes = np.bincount(labels, minlength=n)
    sizes = np.sort(sizes[sizes > 0])[::-1]
    return AnalysisReport(
        n=n,
        edge_count=graph.edge_count,
        degree_histogram=hist,
        min_degree=int(deg.min()),
        max_degree=int(deg.max()),
        mean_degree=float(2.0 * graph.edge_count / n),
        isolated_count=int(np.count_nonzero(deg == 0)),
        component_sizes=tuple(int(s) for s in sizes),
        is_connected=bool(sizes.size == 1),
    )


def has_component_in_range(report: AnalysisReport, lo: int, hi: int) -> bool:
    """True iff some component size s satisfies lo <= s <= hi."""
    if not 1 <= lo <= hi:
        raise ValueError("need 1 <= lo <= hi")
    return any(lo <= s <= hi for s in report.component_sizes)


def min_degree_at_most(report: AnalysisReport, kappa: int) -> bool:
    """True iff the graph has a vertex of degree at most kappa."""
    if kappa < 0:
        raise ValueError("kappa must be non-negative")
    return report.min_degree <= kappa
