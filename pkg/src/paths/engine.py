from __future__ import annotations
import math
from heapq import heappop, heappush
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Tuple

import numpy as np

from ..config import EtaVariant, KappaMode
from ..errors import UsageError
from ..graph.core import DegreeTable, DirectedGraph
from ..predictors.attraction import AttractionIndex, popularity_vec


INF = math.inf


class WeightedEdgeMap:
    """
    Positive length per directed edge, stored aligned with the graph's CSR
    out-adjacency so the search can walk ``indptr``/``indices``/``weights``.
    """

    def __init__(self, g: DirectedGraph, weights: np.ndarray):
        weights = np.asarray(weights, dtype=np.float64)
        if weights.shape != (g.m,):
            raise ValueError(f"Expected {g.m} weights, got {weights.shape}")
        if weights.size and not np.all(weights > 0):
            raise ValueError("Edge weights must be strictly positive")
        weights.setflags(write=False)
        self.graph = g
        self.weights = weights

    def __len__(self) -> int:
        return int(self.weights.shape[0])

    def __getitem__(self, edge: Tuple[int, int]) -> float:
        i, j = edge
        g = self.graph
        lo, hi = int(g.out_indptr[i]), int(g.out_indptr[i + 1])
        pos = lo + int(np.searchsorted(g.out_indices[lo:hi], j))
        if pos >= hi or int(g.out_indices[pos]) != j:
            raise KeyError(edge)
        return float(self.weights[pos])

    def as_lists(self) -> Tuple[List[int], List[int], List[float]]:
        g = self.graph
        return g.out_indptr.tolist(), g.out_indices.tolist(), self.weights.tolist()


class DistanceMap(Mapping[int, float]):
    """Finite hop-bounded distances from one source; absent targets are +inf."""

    def __init__(self, source: int, distances: Dict[int, float]):
        self.source = source
        self._d = distances

    def __getitem__(self, target: int) -> float:
        return self._d.get(target, INF)

    def __contains__(self, target: object) -> bool:
        return target in self._d

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self._d))

    def __len__(self) -> int:
        return len(self._d)

    def finite(self) -> Dict[int, float]:
        return dict(self._d)


def alg1_edge_weights(g: DirectedGraph, deg: DegreeTable) -> WeightedEdgeMap:
    """Weight of edge (i, j) is its popularity term."""
    return WeightedEdgeMap(g, popularity_vec(deg, g.edge_sources, g.out_indices))


def alg2_edge_weights(
    g: DirectedGraph,
    deg: DegreeTable,
    variant: EtaVariant = EtaVariant.EQUATIONS,
    kappa: KappaMode = KappaMode.SUM,
    attraction: Optional[AttractionIndex] = None,
) -> WeightedEdgeMap:
    """Weight of edge (i, j) is ``2π / (1 + η)``: strongly attracted pairs are shorter."""
    if attraction is None:
        attraction = AttractionIndex(g, deg, variant, kappa)
    src, dst = g.edge_sources, g.out_indices
    pi = popularity_vec(deg, src, dst)
    eta = attraction.eta(src, dst)
    return WeightedEdgeMap(g, 2.0 * pi / (1.0 + eta))


def _search(
    indptr: List[int], indices: List[int], weights: List[float], source: int, h: int
) -> Dict[int, float]:
    # States are (node, hops used). A state is dominated once its node has
    # been settled with no more hops, since that settlement had no larger
    # distance either.
    dist: Dict[int, float] = {}
    settled_hops: Dict[int, int] = {}
    heap: List[Tuple[float, int, int]] = [(0.0, 0, source)]
    while heap:
        d, k, v = heappop(heap)
        best = settled_hops.get(v)
        if best is not None and best <= k:
            continue
        if v not in dist:
            dist[v] = d
        settled_hops[v] = k
        if k == h:
            continue
        nk = k + 1
        for idx in range(indptr[v], indptr[v + 1]):
            u = indices[idx]
            hu = settled_hops.get(u)
            if hu is not None and hu <= nk:
                continue
            heappush(heap, (d + weights[idx], nk, u))
    return dist


def _check_horizon(h: int) -> None:
    if h < 1:
        raise UsageError(f"Horizon h must be >= 1, got {h}")


def bounded_dijkstra(g: DirectedGraph, w: WeightedEdgeMap, source: int, h: int) -> DistanceMap:
    """
    Minimum path weight from ``source`` to every node over directed paths of
    at most ``h`` edges. The search runs over (node, hops) states, so a
    cheaper path that needs more than ``h`` edges never hides a valid one.
    """
    _check_horizon(h)
    if not 0 <= source < g.n:
        raise IndexError(f"source {source} outside 0..{g.n - 1}")
    indptr, indices, weights = w.as_lists()
    return DistanceMap(source, _search(indptr, indices, weights, source, h))


def iter_sources_within_horizon(
    g: DirectedGraph, w: WeightedEdgeMap, h: int, sources: Optional[Iterable[int]] = None
) -> Iterator[DistanceMap]:
    _check_horizon(h)
    indptr, indices, weights = w.as_lists()
    for s in range(g.n) if sources is None else sources:
        yield DistanceMap(s, _search(indptr, indices, weights, s, h))


def all_sources_within_horizon(g: DirectedGraph, w: WeightedEdgeMap, h: int) -> Dict[int, DistanceMap]:
    return {dm.source: dm for dm in iter_sources_within_horizon(g, w, h)}
