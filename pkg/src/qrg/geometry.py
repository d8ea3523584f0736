"""Arc geometry on circles of circumference beta.

Vertices of the sampled graph are open arcs, represented half-open as
[start, start + length) taken modulo beta.  A full circle (a circle whose
hole process produced zero or one hole) is encoded with length == beta;
for a single hole the start is the hole position, for no holes it is 0.
"""
from __future__ import annotations

from dataclasses import dataclass

__all__ = ["VertexInterval", "arc_intersection_length"]


@dataclass(frozen=True)
class VertexInterval:
    """One vertex: an arc on a specific circle.

    Invariants: 0 <= start < beta and 0 < length <= beta, with
    length == beta marking a full circle.
    """

    circle_id: int
    start: float
    length: float


def _validate_arc(start: float, length: float, beta: float, label: str) -> None:
    if not 0.0 <= start < beta:
        raise ValueError(f"{label}: start must lie in [0, beta), got {start} (beta={beta})")
    if not 0.0 < length <= beta:
        raise ValueError(f"{label}: length must lie in (0, beta], got {length} (beta={beta})")


def arc_intersection_length(a: VertexInterval, b: VertexInterval, beta: float) -> float:
    """Total length of the overlap of two arcs on a circle of circumference beta.

    The result is symmetric in (a, b), invariant under joint rotation of both
    arcs, and bounded by min(a.length, b.length).  Full circles (length ==
    beta) overlap any arc over the arc's whole length.
    """
    if beta <= 0:
        raise ValueError(f"beta must be > 0, got {beta}")
    _validate_arc(a.start, a.length, beta, "a")
    _validate_arc(b.start, b.length, beta, "b")
    # order the operands canonically so the result is exactly symmetric
    if (b.start, b.length) < (a.start, a.length):
        a, b = b, a
    if a.length >= beta:
        return b.length
    if b.length >= beta:
        return a.length
    # rotate so a starts at 0; b then covers [rel, rel + b.length) mod beta
    rel = (b.start - a.start) % beta
    end_b = rel + b.length
    if end_b <= beta:
        overlap = min(a.length, end_b) - rel
        overlap = overlap if overlap > 0.0 else 0.0
    else:
        head = a.length - rel
        overlap = (head if head > 0.0 else 0.0) + min(a.length, end_b - beta)
    return min(overlap, a.length, b.length)
