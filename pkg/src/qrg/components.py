"""Connected-component and degree analysis of sampled multigraphs.

Components are found by union-find (path halving, union by size) over the
merged edge list; multiplicities never affect membership.  Components are
ranked by vertex count, largest first, with ties broken toward the smaller
minimum vertex id.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .sampler import MultiGraph

__all__ = [
    "ComponentStats",
    "DegreeReport",
    "component_labels",
    "components",
    "component_stats",
    "same_component_length_prob",
    "degree_histogram",
    "degree_length_slope",
    "format_component_table",
]


@dataclass(frozen=True)
class ComponentStats:
    """Aggregate statistics of one component (rank is 1-based, largest first)."""

    rank: int
    vertex_count: int
    total_length: float
    edge_count_simple: int
    edge_count_multi: int
    min_vertex_id: int


_EMPTY = ComponentStats(
    rank=0, vertex_count=0, total_length=0.0, edge_count_simple=0,
    edge_count_multi=0, min_vertex_id=-1,
)


def component_labels(graph: MultiGraph) -> np.ndarray:
    """Component label per vertex (labels are representative vertex ids)."""
    nv = graph.num_vertices
    parent = list(range(nv))
    size = [1] * nv
    for a, b in zip(graph.edge_u.tolist(), graph.edge_v.tolist()):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        while parent[b] != b:
            parent[b] = parent[parent[b]]
            b = parent[b]
        if a == b:
            continue
        if size[a] < size[b]:
            a, b = b, a
        parent[b] = a
        size[a] += size[b]
    labels = np.empty(nv, dtype=np.int64)
    for v in range(nv):
        a = v
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        labels[v] = a
    return labels


def components(graph: MultiGraph) -> list[ComponentStats]:
    """All components of the graph, ranked by size (see module docstring)."""
    labels = component_labels(graph)
    uniq, first_occurrence, inverse = np.unique(
        labels, return_index=True, return_inverse=True
    )
    vertex_counts = np.bincount(inverse)
    length_sums = np.bincount(inverse, weights=graph.lengths)
    ncomp = uniq.size
    if graph.edge_u.size:
        edge_comp = inverse[graph.edge_u]
        edges_simple = np.bincount(edge_comp, minlength=ncomp)
        edges_multi = np.bincount(
            edge_comp, weights=graph.edge_mult.astype(np.float64), minlength=ncomp
        )
    else:
        edges_simple = np.zeros(ncomp, dtype=np.int64)
        edges_multi = np.zeros(ncomp, dtype=np.float64)
    # first occurrence in vertex order is the minimum vertex id of a component
    order = np.lexsort((first_occurrence, -vertex_counts))
    return [
        ComponentStats(
            rank=r + 1,
            vertex_count=int(vertex_counts[c]),
            total_length=float(length_sums[c]),
            edge_count_simple=int(edges_simple[c]),
            edge_count_multi=int(edges_multi[c]),
            min_vertex_id=int(first_occurrence[c]),
        )
        for r, c in enumerate(order.tolist())
    ]


def component_stats(comps: Sequence[ComponentStats], rank: int) -> ComponentStats:
    """Component of the given rank, or an all-zero record when absent."""
    if rank < 1:
        raise ValueError(f"rank is 1-based, got {rank}")
    if rank > len(comps):
        return _EMPTY
    return comps[rank - 1]


def same_component_length_prob(
    comps: Sequence[ComponentStats], beta: float, n: int
) -> float:
    """Probability that two independent length-uniform points fall in the
    same component: sum over components of (total_length / (beta * n))^2."""
    total = beta * n
    return float(sum((c.total_length / total) ** 2 for c in comps))


@dataclass(frozen=True)
class DegreeReport:
    """Degree histogram plus per-length-bin mean degrees.

    counts[d] is the number of vertices with degree d.  Lengths are binned
    into 20 equal bins on (0, beta]; bins record vertex count, mean length
    and mean degree (NaN for empty bins).
    """

    counts: np.ndarray
    bin_edges: np.ndarray
    bin_vertex_count: np.ndarray
    bin_mean_length: np.ndarray
    bin_mean_degree: np.ndarray


_DEGREE_BINS = 20


def degree_histogram(graph: MultiGraph, use_multiplicity: bool = False) -> DegreeReport:
    """Vertex degree distribution, optionally counting parallel edges."""
    nv = graph.num_vertices
    if use_multiplicity:
        w = graph.edge_mult.astype(np.float64)
        deg = np.bincount(graph.edge_u, weights=w, minlength=nv) + np.bincount(
            graph.edge_v, weights=w, minlength=nv
        )
        deg = deg.astype(np.int64)
    else:
        deg = np.bincount(graph.edge_u, minlength=nv) + np.bincount(
            graph.edge_v, minlength=nv
        )
    counts = np.bincount(deg)

    beta = graph.params.beta
    edges = np.linspace(0.0, beta, _DEGREE_BINS + 1)
    # half-open on the left: bin k covers (edges[k], edges[k+1]]
    idx = np.clip(
        np.searchsorted(edges, graph.lengths, side="left") - 1, 0, _DEGREE_BINS - 1
    )
    bin_count = np.bincount(idx, minlength=_DEGREE_BINS).astype(np.int64)
    with np.errstate(invalid="ignore"):
        mean_len = np.bincount(idx, weights=graph.lengths, minlength=_DEGREE_BINS) / bin_count
        mean_deg = np.bincount(idx, weights=deg.astype(np.float64), minlength=_DEGREE_BINS) / bin_count
    return DegreeReport(
        counts=counts,
        bin_edges=edges,
        bin_vertex_count=bin_count,
        bin_mean_length=mean_len,
        bin_mean_degree=mean_deg,
    )


def degree_length_slope(report: DegreeReport) -> float:
    """Weighted least-squares slope through the origin of mean degree against
    mean length over the non-empty bins.  The mean degree of an arc of length
    l is l * (n-1) / n, so the slope approaches 1 for large n."""
    mask = report.bin_vertex_count > 0
    w = report.bin_vertex_count[mask].astype(np.float64)
    x = report.bin_mean_length[mask]
    y = report.bin_mean_degree[mask]
    denom = float((w * x * x).sum())
    if denom == 0.0:
        raise ValueError("no vertices to fit a degree slope")
    return float((w * x * y).sum() / denom)


def format_component_table(comps: Sequence[ComponentStats]) -> str:
    """Component table export: "rank vertices length edges" per component,
    edges counted without multiplicity, length at 9 significant digits."""
    lines = ["# rank vertices length edges"]
    for c in comps:
        lines.append(f"{c.rank} {c.vertex_count} {c.total_length:.9g} {c.edge_count_simple}")
    return "\n".join(lines) + "\n"
