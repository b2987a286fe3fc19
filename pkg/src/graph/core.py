from __future__ import annotations
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, List, Sequence, Tuple

import numpy as np
import scipy.sparse as ssp

from ..config import KappaMode


Edge = Tuple[int, int]


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


def _csr_from_pairs(n: int, rows: np.ndarray, cols: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Return (indptr, indices) with each row's indices sorted ascending."""
    order = np.lexsort((cols, rows))
    indices = cols[order].astype(np.int64)
    counts = np.bincount(rows, minlength=n) if n else np.zeros(0, dtype=np.int64)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    return indptr, indices


class DirectedGraph:
    """
    Immutable directed simple graph over dense node ids ``0..n-1``.

    Out- and in-adjacency are held in CSR form (``indptr``/``indices``) with
    every neighbor list sorted ascending. Node labels are kept alongside so
    that results can be reported with the identifiers of the input file.
    """

    def __init__(self, n: int, edges: Iterable[Edge], labels: Sequence[str] | None = None):
        if n < 0:
            raise ValueError("n must be non-negative")
        pairs = {(int(i), int(j)) for i, j in edges if i != j}
        for i, j in pairs:
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"Edge ({i}, {j}) outside node range 0..{n - 1}")
        if labels is None:
            labels = [str(i) for i in range(n)]
        if len(labels) != n:
            raise ValueError("labels must have one entry per node")
        if len(set(labels)) != n:
            raise ValueError("labels must be unique")

        if pairs:
            arr = np.array(sorted(pairs), dtype=np.int64)
            src, dst = arr[:, 0], arr[:, 1]
        else:
            src = dst = np.zeros(0, dtype=np.int64)

        self._n = n
        self._labels = tuple(str(x) for x in labels)
        out_indptr, out_indices = _csr_from_pairs(n, src, dst)
        in_indptr, in_indices = _csr_from_pairs(n, dst, src)
        self._out_indptr = _frozen(out_indptr)
        self._out_indices = _frozen(out_indices)
        self._in_indptr = _frozen(in_indptr)
        self._in_indices = _frozen(in_indices)

    # -------- Size --------
    @property
    def n(self) -> int:
        return self._n

    @property
    def m(self) -> int:
        return int(self._out_indices.shape[0])

    @property
    def labels(self) -> Tuple[str, ...]:
        return self._labels

    # -------- Adjacency --------
    @property
    def out_indptr(self) -> np.ndarray:
        return self._out_indptr

    @property
    def out_indices(self) -> np.ndarray:
        return self._out_indices

    @property
    def in_indptr(self) -> np.ndarray:
        return self._in_indptr

    @property
    def in_indices(self) -> np.ndarray:
        return self._in_indices

    def out_neighbors(self, i: int) -> np.ndarray:
        return self._out_indices[self._out_indptr[i] : self._out_indptr[i + 1]]

    def in_neighbors(self, i: int) -> np.ndarray:
        return self._in_indices[self._in_indptr[i] : self._in_indptr[i + 1]]

    def has_edge(self, i: int, j: int) -> bool:
        row = self.out_neighbors(i)
        pos = int(np.searchsorted(row, j))
        return pos < row.shape[0] and int(row[pos]) == j

    @cached_property
    def edge_sources(self) -> np.ndarray:
        """Source id of every edge, aligned with ``out_indices`` (CSR order)."""
        return _frozen(np.repeat(np.arange(self._n, dtype=np.int64), np.diff(self._out_indptr)))

    def edges(self) -> Iterator[Edge]:
        for i, j in zip(self.edge_sources.tolist(), self._out_indices.tolist()):
            yield i, j

    @cached_property
    def edge_codes(self) -> np.ndarray:
        """Sorted ``i * n + j`` codes of every edge, for vectorized membership tests."""
        return _frozen(self.edge_sources * self._n + self._out_indices)

    @cached_property
    def adjacency(self) -> ssp.csr_matrix:
        """0/1 adjacency matrix ``A[i, j] = 1`` iff ``(i, j)`` is an edge."""
        data = np.ones(self.m, dtype=np.float64)
        return ssp.csr_matrix(
            (data, self._out_indices.copy(), self._out_indptr.copy()), shape=(self._n, self._n)
        )

    # -------- Derived graphs --------
    def without_edges(self, removed: Iterable[Edge]) -> "DirectedGraph":
        drop = set(removed)
        return DirectedGraph(self._n, (e for e in self.edges() if e not in drop), self._labels)

    def __eq__(self, other: object) -> bool:
        # Label-level equality: ids are an internal detail of each parse
        if not isinstance(other, DirectedGraph):
            return NotImplemented
        return set(self._labels) == set(other._labels) and self.labeled_edges() == other.labeled_edges()

    def __hash__(self) -> int:
        return hash((frozenset(self._labels), frozenset(self.labeled_edges())))

    def labeled_edges(self) -> set[Tuple[str, str]]:
        lab = self._labels
        return {(lab[i], lab[j]) for i, j in self.edges()}

    def __repr__(self) -> str:
        return f"DirectedGraph(n={self._n}, m={self.m})"

    def __getstate__(self) -> dict:
        return {"n": self._n, "labels": self._labels, "edges": list(self.edges())}

    def __setstate__(self, state: dict) -> None:
        self.__init__(state["n"], state["edges"], state["labels"])


@dataclass(frozen=True, eq=False)
class DegreeTable:
    """
    Per-node degree columns. ``k_total`` is the union cardinality
    ``|in-neighbors ∪ out-neighbors|``; ``k_sum`` is ``k_in + k_out``.
    """

    k_in: np.ndarray
    k_out: np.ndarray
    k_total: np.ndarray
    k_sum: np.ndarray
    k_in_max: int
    k_out_max: int
    k_total_max: int
    k_sum_max: int

    def kappa(self, mode: KappaMode) -> np.ndarray:
        return self.k_sum if mode is KappaMode.SUM else self.k_total

    def kappa_max(self, mode: KappaMode) -> int:
        return self.k_sum_max if mode is KappaMode.SUM else self.k_total_max


def degrees(g: DirectedGraph) -> DegreeTable:
    k_out = np.diff(g.out_indptr).astype(np.int64)
    k_in = np.diff(g.in_indptr).astype(np.int64)
    # Reciprocal neighbors are counted once in the union
    reciprocal = np.zeros(g.n, dtype=np.int64)
    if g.m:
        reverse_codes = g.out_indices * g.n + g.edge_sources
        mutual = np.isin(reverse_codes, g.edge_codes)
        reciprocal = np.bincount(g.edge_sources[mutual], minlength=g.n).astype(np.int64)
    k_total = k_in + k_out - reciprocal
    k_sum = k_in + k_out

    def _max(col: np.ndarray) -> int:
        return int(col.max()) if col.size else 0

    return DegreeTable(
        k_in=_frozen(k_in),
        k_out=_frozen(k_out),
        k_total=_frozen(k_total),
        k_sum=_frozen(k_sum),
        k_in_max=_max(k_in),
        k_out_max=_max(k_out),
        k_total_max=_max(k_total),
        k_sum_max=_max(k_sum),
    )


def common_out_in(g: DirectedGraph, i: int, j: int) -> List[int]:
    """Sorted ``out-neighbors(i) ∩ in-neighbors(j)``: the middles of every 2-path i→k→j."""
    return np.intersect1d(g.out_neighbors(i), g.in_neighbors(j), assume_unique=True).tolist()


def dataset_stats(g: DirectedGraph) -> dict:
    deg = degrees(g)
    possible = g.n * (g.n - 1)
    reciprocity = 0.0
    if g.m:
        reverse_codes = g.out_indices * g.n + g.edge_sources
        reciprocity = float(np.isin(reverse_codes, g.edge_codes).sum()) / g.m
    return {
        "n": g.n,
        "m": g.m,
        "density": (g.m / possible) if possible else 0.0,
        "k_in_max": deg.k_in_max,
        "k_out_max": deg.k_out_max,
        "k_total_max": deg.k_total_max,
        "reciprocity": reciprocity,
    }
