"""Depth-weighted conceptual distance over the hypernym graph.

The distance between two words (given as concept sets) is the cheapest
undirected hypernym path between any cross pair of their concepts, where
visiting a concept costs the reciprocal of its depth.  Both endpoints
contribute, so the distance between identical concepts is 1/depth, not 0.

All path costs are computed with exact rational arithmetic so that ties are
exact and results are bit-reproducible; floats appear only in the returned
records.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import DataFormatError
from .semnet import SemanticNet


@dataclass(frozen=True)
class WeightedPath:
    """A concrete path: visited concept ids (endpoints included) and its cost."""

    concepts: tuple[str, ...]
    cost: float


@dataclass(frozen=True)
class DistanceResult:
    distance: float
    best_pair: tuple[str, str]
    path: WeightedPath


def _node_costs(net: SemanticNet) -> dict[str, Fraction]:
    return {cid: Fraction(1, c.depth) for cid, c in net.concepts.items()}


def _cheapest_paths(
    net: SemanticNet, source: str, targets: frozenset[str]
) -> dict[str, tuple[Fraction, tuple[str, ...]]]:
    """Cheapest (cost, path) from source to each reachable target.

    Dijkstra keyed on (cost, path); among equal-cost paths the
    lexicographically smallest id sequence wins, which is exact because the
    costs are Fractions.
    """
    weights = _node_costs(net)
    settled: dict[str, tuple[Fraction, tuple[str, ...]]] = {}
    remaining = set(targets)
    heap: list[tuple[Fraction, tuple[str, ...]]] = [(weights[source], (source,))]
    while heap and remaining:
        cost, path = heapq.heappop(heap)
        node = path[-1]
        if node in settled:
            continue
        settled[node] = (cost, path)
        remaining.discard(node)
        for nxt in net.neighbors(node):
            if nxt not in settled:
                heapq.heappush(heap, (cost + weights[nxt], path + (nxt,)))
    return {t: settled[t] for t in targets if t in settled}


def _require_known(net: SemanticNet, concept_ids: Iterable[str]) -> None:
    for cid in concept_ids:
        if cid not in net.concepts:
            raise DataFormatError(f"unknown concept id {cid!r}")


def shortest_weighted_path(
    net: SemanticNet, c1: str, c2: str
) -> WeightedPath | None:
    """Cheapest path between two concepts, or None when disconnected."""
    _require_known(net, (c1, c2))
    found = _cheapest_paths(net, c1, frozenset((c2,)))
    if c2 not in found:
        return None
    cost, path = found[c2]
    return WeightedPath(concepts=path, cost=float(cost))


def conceptual_distance(
    net: SemanticNet,
    w1_concepts: Iterable[str],
    w2_concepts: Iterable[str],
) -> DistanceResult | None:
    """Minimum cheapest-path cost over all cross pairs of the two concept sets.

    Returns the achieving pair and its path; ties break on the smallest
    (c1, c2) id pair.  None when no cross pair is connected.
    """
    set1 = sorted(set(w1_concepts))
    set2 = frozenset(w2_concepts)
    if not set1 or not set2:
        raise ValueError("empty concept set")
    _require_known(net, set1)
    _require_known(net, set2)

    best: tuple[Fraction, str, str, tuple[str, ...]] | None = None
    for c1 in set1:
        for c2, (cost, path) in sorted(_cheapest_paths(net, c1, set2).items()):
            key = (cost, c1, c2, path)
            if best is None or key < best:
                best = key
    if best is None:
        return None
    cost, c1, c2, path = best
    return DistanceResult(
        distance=float(cost),
        best_pair=(c1, c2),
        path=WeightedPath(concepts=path, cost=float(cost)),
    )
