"""Seeded sampling of the random interval multigraph.

Construction per draw:
  1. Each of the n circles receives an independent Poisson(lam * beta) number
     of holes at i.i.d. uniform positions; the holes cut the circle into arc
     vertices.  Zero or one hole leaves a single full-circle vertex.
  2. Edge points arrive as one Poisson process per unordered circle pair with
     intensity 1/n on the circle, realised in aggregate: a single Poisson
     count of beta * (n - 1) / 2 total points, each assigned a uniform
     unordered pair and a uniform position.  Every point joins the two arcs
     that contain its position on the paired circles; parallel edges are
     merged with multiplicities retained.

All randomness flows from a master seed through purpose-tagged substreams,
so a (params, master_seed) pair fully determines the output.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterator, Optional

import numpy as np

from . import streams
from .geometry import VertexInterval
from .params import ModelParams

__all__ = [
    "HoleConfig",
    "EdgePointAudit",
    "MultiGraph",
    "hole_stream",
    "sample_holes",
    "sample_all_holes",
    "build_vertices",
    "sample_edge_points",
    "sample_edge_points_pairwise",
    "build_graph",
    "simplify",
    "per_circle_length_sums",
    "format_vertex_table",
    "format_edge_list",
]

_MAX_RESAMPLE_ROUNDS = 100


@dataclass(frozen=True)
class HoleConfig:
    """Hole positions for every circle, stored circle-major.

    positions[offsets[i]:offsets[i+1]] are circle i's holes, sorted ascending
    and pairwise distinct.
    """

    n: int
    beta: float
    positions: np.ndarray
    offsets: np.ndarray

    def count(self, circle_id: int) -> int:
        return int(self.offsets[circle_id + 1] - self.offsets[circle_id])

    def holes(self, circle_id: int) -> np.ndarray:
        return self.positions[self.offsets[circle_id]: self.offsets[circle_id + 1]]


@dataclass(frozen=True)
class EdgePointAudit:
    """Raw edge points (circle_i, circle_j, position), kept only on request."""

    circle_i: np.ndarray
    circle_j: np.ndarray
    position: np.ndarray


@dataclass(frozen=True)
class MultiGraph:
    """Sampled multigraph with interval vertices.

    Vertices are numbered densely by (circle_id, start) order; parallel edges
    are merged into (edge_u, edge_v, edge_mult) with edge_u < edge_v.
    """

    params: ModelParams
    circle_ids: np.ndarray
    starts: np.ndarray
    lengths: np.ndarray
    edge_u: np.ndarray
    edge_v: np.ndarray
    edge_mult: np.ndarray
    audit: Optional[EdgePointAudit] = None

    @property
    def num_vertices(self) -> int:
        return int(self.circle_ids.size)

    @property
    def num_edges_simple(self) -> int:
        return int(self.edge_u.size)

    @property
    def num_edges_multi(self) -> int:
        return int(self.edge_mult.sum())

    @property
    def excess_edges(self) -> int:
        return self.num_edges_multi - self.num_edges_simple

    def vertex(self, vertex_id: int) -> VertexInterval:
        return VertexInterval(
            int(self.circle_ids[vertex_id]),
            float(self.starts[vertex_id]),
            float(self.lengths[vertex_id]),
        )

    def iter_vertices(self) -> Iterator[VertexInterval]:
        for v in range(self.num_vertices):
            yield self.vertex(v)


def hole_stream(master_seed: int, circle_id: int) -> np.random.Generator:
    """The dedicated stream for one circle's hole process."""
    return streams.substream(master_seed, streams.HOLES, circle_id)


def sample_holes(params: ModelParams, circle_id: int, rng: np.random.Generator) -> np.ndarray:
    """Sorted hole positions for one circle: Poisson(lam*beta) many uniforms.

    Exact duplicate positions (probability ~0 in float64) are resampled so the
    cut arcs always have positive length.
    """
    if not 0 <= circle_id < params.n:
        raise ValueError(f"circle_id must be in [0, {params.n}), got {circle_id}")
    m = int(rng.poisson(params.hole_intensity * params.beta))
    pos = rng.uniform(0.0, params.beta, size=m)
    for _ in range(_MAX_RESAMPLE_ROUNDS):
        pos = np.sort(pos)
        dup = np.flatnonzero(np.diff(pos) == 0.0)
        if dup.size == 0:
            return pos
        pos[dup] = rng.uniform(0.0, params.beta, size=dup.size)
    raise RuntimeError("hole resampling failed to remove duplicates")


def sample_all_holes(params: ModelParams, master_seed: int) -> HoleConfig:
    """Hole processes for all circles, drawn vectorized from the holes stream."""
    rng = streams.substream(master_seed, streams.HOLES)
    n, beta, lam = params.n, params.beta, params.hole_intensity
    counts = rng.poisson(lam * beta, size=n).astype(np.int64)
    total = int(counts.sum())
    pos = rng.uniform(0.0, beta, size=total)
    sorted_circle = np.repeat(np.arange(n, dtype=np.int64), counts)
    pos = pos[np.lexsort((pos, sorted_circle))]
    # reject exact duplicate positions within a circle (probability ~0, but
    # zero-length arcs would break the vertex invariants)
    for _ in range(_MAX_RESAMPLE_ROUNDS):
        if total < 2:
            break
        dup = np.flatnonzero((np.diff(pos) == 0.0) & (np.diff(sorted_circle) == 0))
        if dup.size == 0:
            break
        pos[dup] = rng.uniform(0.0, beta, size=dup.size)
        pos = pos[np.lexsort((pos, sorted_circle))]
    else:
        raise RuntimeError("hole resampling failed to remove duplicates")
    offsets = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=offsets[1:])
    return HoleConfig(n=n, beta=beta, positions=pos, offsets=offsets)


def build_vertices(
    holes: np.ndarray, params: ModelParams, circle_id: int
) -> list[VertexInterval]:
    """Cut one circle into vertices given its sorted hole positions.

    Zero holes yields the canonical full circle [0, beta); one hole yields a
    full-length arc starting at the hole; k >= 2 holes yield the k arcs
    between consecutive holes (the last wraps around).
    """
    beta = params.beta
    holes = np.asarray(holes, dtype=np.float64)
    if holes.size == 0:
        return [VertexInterval(circle_id, 0.0, beta)]
    if np.any(holes < 0.0) or np.any(holes >= beta):
        raise ValueError("hole positions must lie in [0, beta)")
    if np.any(np.diff(holes) <= 0.0):
        raise ValueError("hole positions must be sorted and distinct")
    nxt = np.roll(holes, -1)
    gaps = nxt - holes
    gaps[-1] += beta
    return [
        VertexInterval(circle_id, float(s), float(g)) for s, g in zip(holes, gaps)
    ]


def sample_edge_points(
    params: ModelParams, rng: np.random.Generator
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Aggregate edge-point draw: (circle_i, circle_j, position) arrays.

    One Poisson(beta * (n-1) / 2) total count, then a uniform unordered pair
    and a uniform position per point.  Equivalent in law to independent
    per-pair Poisson(beta / n) processes.
    """
    n, beta = params.n, params.beta
    k = int(rng.poisson(beta * (n - 1) / 2.0))
    u = rng.integers(0, n, size=k)
    v = rng.integers(0, n - 1, size=k)
    v = v + (v >= u)
    x = rng.uniform(0.0, beta, size=k)
    return np.minimum(u, v), np.maximum(u, v), x


def sample_edge_points_pairwise(
    params: ModelParams, rng: np.random.Generator
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Literal per-pair edge-point draw, one Poisson(beta/n) process per pair.

    Kept for small n as the reference construction that the aggregate sampler
    is tested against; cost is Theta(n^2).
    """
    n, beta = params.n, params.beta
    per_pair = beta / n
    ii: list[np.ndarray] = []
    jj: list[np.ndarray] = []
    xx: list[np.ndarray] = []
    for i in range(n - 1):
        counts = rng.poisson(per_pair, size=n - 1 - i)
        tot = int(counts.sum())
        if tot == 0:
            continue
        j = np.repeat(np.arange(i + 1, n), counts)
        ii.append(np.full(tot, i, dtype=np.int64))
        jj.append(j.astype(np.int64))
        xx.append(rng.uniform(0.0, beta, size=tot))
    if not ii:
        empty_i = np.empty(0, dtype=np.int64)
        return empty_i, empty_i.copy(), np.empty(0, dtype=np.float64)
    return np.concatenate(ii), np.concatenate(jj), np.concatenate(xx)


def _locate_vertices(
    holes: HoleConfig,
    vertex_offsets: np.ndarray,
    ep_circle: np.ndarray,
    ep_pos: np.ndarray,
) -> np.ndarray:
    """Vertex id containing each (circle, position) query point.

    A point equal to a hole position belongs to the arc starting at that hole
    (ties go right).  Implemented as one merged lexsort of holes and queries,
    which avoids any per-circle loop and stays exact: the rank of the last
    hole at or before a query within its circle is read off a cumulative
    hole count over the merged order.
    """
    n = holes.n
    counts = np.diff(holes.offsets)
    total = int(holes.positions.size)
    q = ep_circle.size
    sorted_circle = np.repeat(np.arange(n, dtype=np.int64), counts)
    m_circle = np.concatenate([sorted_circle, ep_circle])
    m_pos = np.concatenate([holes.positions, ep_pos])
    m_tie = np.concatenate([np.zeros(total, np.int8), np.ones(q, np.int8)])
    morder = np.lexsort((m_tie, m_pos, m_circle))
    prefix = np.cumsum(m_tie[morder] == 0)
    last_hole_at_or_before = np.empty(total + q, dtype=np.int64)
    last_hole_at_or_before[morder] = prefix - 1
    kglob = last_hole_at_or_before[total:]

    hole_begin = holes.offsets[:-1][ep_circle]
    m_of = counts[ep_circle]
    base = vertex_offsets[ep_circle]
    vtx = np.empty(q, dtype=np.int64)
    bare = m_of == 0
    vtx[bare] = base[bare]
    wrap = ~bare & (kglob < hole_begin)
    vtx[wrap] = base[wrap] + m_of[wrap] - 1
    inner = ~bare & ~wrap
    vtx[inner] = base[inner] + (kglob[inner] - hole_begin[inner])
    return vtx


def build_graph(
    params: ModelParams, master_seed: int, audit: bool = False
) -> MultiGraph:
    """Sample one multigraph; a deterministic function of (params, master_seed).

    audit=True retains the raw (circle_i, circle_j, position) edge points.
    """
    holes = sample_all_holes(params, master_seed)
    n, beta = params.n, params.beta
    counts = np.diff(holes.offsets)

    vertices_per_circle = np.maximum(counts, 1)
    vertex_offsets = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(vertices_per_circle, out=vertex_offsets[1:])
    num_vertices = int(vertex_offsets[-1])
    starts = np.zeros(num_vertices, dtype=np.float64)
    lengths = np.full(num_vertices, beta, dtype=np.float64)
    circle_ids = np.repeat(np.arange(n, dtype=np.int64), vertices_per_circle)

    total = int(holes.positions.size)
    if total:
        with_holes = np.flatnonzero(counts)
        cw_counts = counts[with_holes]
        cw_off = np.zeros(with_holes.size + 1, dtype=np.int64)
        np.cumsum(cw_counts, out=cw_off[1:])
        first = cw_off[:-1]
        last = cw_off[1:] - 1
        nxt = np.empty(total, dtype=np.float64)
        nxt[:-1] = holes.positions[1:]
        nxt[last] = holes.positions[first]
        gaps = nxt - holes.positions
        # adding beta after the subtraction keeps single-hole circles at
        # exactly beta and matches build_vertices bit for bit
        gaps[last] += beta
        hole_rank = np.arange(total, dtype=np.int64) - np.repeat(first, cw_counts)
        slot = vertex_offsets[np.repeat(with_holes, cw_counts)] + hole_rank
        starts[slot] = holes.positions
        lengths[slot] = gaps

    rng_edges = streams.substream(master_seed, streams.EDGES)
    ci, cj, px = sample_edge_points(params, rng_edges)
    k = ci.size
    if k:
        vtx = _locate_vertices(
            holes,
            vertex_offsets[:-1],
            np.concatenate([ci, cj]),
            np.concatenate([px, px]),
        )
        eu = np.minimum(vtx[:k], vtx[k:])
        ev = np.maximum(vtx[:k], vtx[k:])
        key = eu * np.int64(num_vertices) + ev
        uniq, mult = np.unique(key, return_counts=True)
        edge_u = (uniq // num_vertices).astype(np.int64)
        edge_v = (uniq % num_vertices).astype(np.int64)
        edge_mult = mult.astype(np.int64)
    else:
        edge_u = np.empty(0, dtype=np.int64)
        edge_v = np.empty(0, dtype=np.int64)
        edge_mult = np.empty(0, dtype=np.int64)

    audit_rec = EdgePointAudit(ci, cj, px) if audit else None
    return MultiGraph(
        params=params,
        circle_ids=circle_ids,
        starts=starts,
        lengths=lengths,
        edge_u=edge_u,
        edge_v=edge_v,
        edge_mult=edge_mult,
        audit=audit_rec,
    )


def simplify(graph: MultiGraph) -> tuple[MultiGraph, int]:
    """Collapse multiplicities to 1; returns (simple graph, excess edge count)."""
    excess = graph.excess_edges
    simple = replace(graph, edge_mult=np.ones_like(graph.edge_mult))
    return simple, excess


def per_circle_length_sums(graph: MultiGraph) -> np.ndarray:
    """Sum of vertex lengths per circle; each entry equals beta up to rounding."""
    return np.bincount(
        graph.circle_ids, weights=graph.lengths, minlength=graph.params.n
    )


def format_vertex_table(graph: MultiGraph) -> str:
    """Vertex table export: one "id circle start length" line per vertex,
    floats at 9 significant digits."""
    lines = ["# id circle start length"]
    cids = graph.circle_ids.tolist()
    starts = graph.starts.tolist()
    lengths = graph.lengths.tolist()
    for vid, (c, s, ln) in enumerate(zip(cids, starts, lengths)):
        lines.append(f"{vid} {c} {s:.9g} {ln:.9g}")
    return "\n".join(lines) + "\n"


def format_edge_list(graph: MultiGraph) -> str:
    """Edge list export: one "u v multiplicity" line per merged edge."""
    lines = ["# u v multiplicity"]
    for u, v, m in zip(
        graph.edge_u.tolist(), graph.edge_v.tolist(), graph.edge_mult.tolist()
    ):
        lines.append(f"{u} {v} {m}")
    return "\n".join(lines) + "\n"
