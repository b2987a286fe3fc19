from __future__ import annotations
import logging
import math
from dataclasses import dataclass
from typing import Iterator, List, Optional

import numpy as np

from ..config import CandidateMode, ScoringOptions
from ..errors import InfeasiblePlanError
from ..graph.core import DegreeTable, DirectedGraph, degrees
from ..paths.engine import alg1_edge_weights, alg2_edge_weights, iter_sources_within_horizon
from .attraction import AttractionIndex, popularity_vec
from .baselines import baseline_from_evidence, evidence_matrix
from .methods import Method


logger = logging.getLogger(__name__)


# ---------------------------
# Score formulas
# ---------------------------
def score_alg1_vec(pi: np.ndarray, d: np.ndarray) -> np.ndarray:
    """``(1 + d/π)^-1``; infinite distance scores 0, and so does π = 0."""
    pi = np.asarray(pi, dtype=np.float64)
    d = np.asarray(d, dtype=np.float64)
    out = np.zeros(np.broadcast(pi, d).shape, dtype=np.float64)
    pi_b, d_b = np.broadcast_arrays(pi, d)
    finite = np.isfinite(d_b)
    ok = finite & (pi_b > 0)
    out[ok] = 1.0 / (1.0 + d_b[ok] / pi_b[ok])
    degenerate = int(np.count_nonzero(finite & (pi_b <= 0)))
    if degenerate:
        logger.debug("ALG1: %d pair(s) with zero popularity at finite distance scored 0", degenerate)
    return out


def score_alg1(pi: float, d: float) -> float:
    return float(score_alg1_vec(np.array([pi]), np.array([d]))[0])


def score_alg2_vec(pi: np.ndarray, eta: np.ndarray, d: np.ndarray) -> np.ndarray:
    """``(π + η) · σ`` with similarity ``σ = 1 / (1 + d)``."""
    pi, eta, d = np.broadcast_arrays(
        np.asarray(pi, dtype=np.float64), np.asarray(eta, dtype=np.float64), np.asarray(d, dtype=np.float64)
    )
    out = np.zeros(pi.shape, dtype=np.float64)
    finite = np.isfinite(d)
    out[finite] = (pi[finite] + eta[finite]) / (1.0 + d[finite])
    return out


def score_alg2(pi: float, eta: float, d: float) -> float:
    return float(score_alg2_vec(np.array([pi]), np.array([eta]), np.array([d]))[0])


# ---------------------------
# Candidate containers
# ---------------------------
@dataclass(frozen=True, eq=False)
class ScoreChunk:
    sources: np.ndarray
    targets: np.ndarray
    scores: np.ndarray

    def __len__(self) -> int:
        return int(self.scores.shape[0])


@dataclass(frozen=True, eq=False)
class ScoredPairs:
    """
    Scored candidate pairs. In sparse mode only nonzero scores are listed and
    ``implicit_zero_count`` accounts for the rest of the candidate universe.
    """

    n: int
    sources: np.ndarray
    targets: np.ndarray
    scores: np.ndarray
    implicit_zero_count: int
    implicit_zero_positives: int = 0

    def __len__(self) -> int:
        return int(self.scores.shape[0])

    @property
    def universe_size(self) -> int:
        return len(self) + self.implicit_zero_count

    def codes(self) -> np.ndarray:
        return self.sources * self.n + self.targets

    def with_positives(self, positive_codes: np.ndarray) -> tuple["ScoredPairs", np.ndarray]:
        """Flag listed pairs found in ``positive_codes`` and count the positives hidden among implicit zeros."""
        flags = np.isin(self.codes(), positive_codes)
        hidden = int(np.unique(positive_codes).shape[0]) - int(flags.sum())
        pairs = ScoredPairs(
            self.n, self.sources, self.targets, self.scores, self.implicit_zero_count, hidden
        )
        return pairs, flags

    def as_dict(self) -> dict:
        return {
            (int(i), int(j)): float(s)
            for i, j, s in zip(self.sources.tolist(), self.targets.tolist(), self.scores.tolist())
        }


def candidate_universe_size(g: DirectedGraph) -> int:
    return g.n * (g.n - 1) - g.m


def _check_mode(method: Method, mode: CandidateMode) -> None:
    if mode is CandidateMode.SPARSE and method.requires_full_stream:
        raise InfeasiblePlanError(
            f"{method.value} is nonzero for nearly every pair and cannot be scored in sparse mode; "
            "use full_stream"
        )


def default_mode(method: Method) -> CandidateMode:
    return CandidateMode.FULL_STREAM if method.requires_full_stream else CandidateMode.SPARSE


def _non_edge_mask(g: DirectedGraph, i: int, targets: np.ndarray) -> np.ndarray:
    """True where (i, t) is a candidate: t ≠ i and (i, t) not an edge."""
    return (targets != i) & ~np.isin(targets, g.out_neighbors(i), assume_unique=False)


# ---------------------------
# Path-based chunks
# ---------------------------
def _path_chunks(
    g: DirectedGraph,
    deg: DegreeTable,
    method: Method,
    options: ScoringOptions,
    mode: CandidateMode,
) -> Iterator[ScoreChunk]:
    if g.m == 0:
        if mode is CandidateMode.FULL_STREAM:
            yield from _zero_chunks(g)
        return
    attraction: Optional[AttractionIndex] = None
    if method is Method.ALG1:
        w = alg1_edge_weights(g, deg)
    else:
        attraction = AttractionIndex(g, deg, options.eta_variant, options.eta_kappa)
        w = alg2_edge_weights(g, deg, attraction=attraction)

    everyone = np.arange(g.n, dtype=np.int64)
    for dm in iter_sources_within_horizon(g, w, options.h):
        i = dm.source
        finite = dm.finite()
        if mode is CandidateMode.SPARSE:
            targets = np.fromiter(sorted(finite), dtype=np.int64, count=len(finite))
            targets = targets[_non_edge_mask(g, i, targets)]
        else:
            targets = everyone[_non_edge_mask(g, i, everyone)]
        if targets.size == 0:
            continue
        d = np.array([finite.get(int(t), math.inf) for t in targets.tolist()], dtype=np.float64)
        src = np.full(targets.shape[0], i, dtype=np.int64)
        pi = popularity_vec(deg, src, targets)
        if method is Method.ALG1:
            scores = score_alg1_vec(pi, d)
        else:
            scores = score_alg2_vec(pi, attraction.eta(src, targets), d)
        if mode is CandidateMode.SPARSE:
            keep = scores > 0
            src, targets, scores = src[keep], targets[keep], scores[keep]
            if targets.size == 0:
                continue
        yield ScoreChunk(src, targets, scores)


# ---------------------------
# Baseline chunks
# ---------------------------
def _baseline_chunks(
    g: DirectedGraph,
    deg: DegreeTable,
    method: Method,
    options: ScoringOptions,
    mode: CandidateMode,
) -> Iterator[ScoreChunk]:
    if method is Method.DPAT:
        evidence = None
    else:
        evidence = evidence_matrix(g, deg, method, options.baseline_kappa)

    if mode is CandidateMode.SPARSE:
        coo = evidence.tocoo()
        rows = coo.row.astype(np.int64)
        cols = coo.col.astype(np.int64)
        vals = coo.data
        codes = rows * g.n + cols
        keep = (rows != cols) & ~np.isin(codes, g.edge_codes) & (vals > 0)
        rows, cols, vals = rows[keep], cols[keep], vals[keep]
        order = np.lexsort((cols, rows))
        rows, cols, vals = rows[order], cols[order], vals[order]
        scores = baseline_from_evidence(method, vals, deg.k_out[rows], deg.k_in[cols])
        keep = scores > 0
        if keep.any():
            yield ScoreChunk(rows[keep], cols[keep], scores[keep])
        return

    everyone = np.arange(g.n, dtype=np.int64)
    for i in range(g.n):
        targets = everyone[_non_edge_mask(g, i, everyone)]
        if targets.size == 0:
            continue
        row_evidence = np.zeros(g.n, dtype=np.float64)
        if evidence is not None:
            lo, hi = evidence.indptr[i], evidence.indptr[i + 1]
            row_evidence[evidence.indices[lo:hi]] = evidence.data[lo:hi]
        src = np.full(targets.shape[0], i, dtype=np.int64)
        scores = baseline_from_evidence(method, row_evidence[targets], deg.k_out[src], deg.k_in[targets])
        yield ScoreChunk(src, targets, scores)


def _zero_chunks(g: DirectedGraph) -> Iterator[ScoreChunk]:
    everyone = np.arange(g.n, dtype=np.int64)
    for i in range(g.n):
        targets = everyone[_non_edge_mask(g, i, everyone)]
        if targets.size:
            yield ScoreChunk(np.full(targets.shape[0], i, dtype=np.int64), targets, np.zeros(targets.shape[0]))


def iter_candidate_chunks(
    g: DirectedGraph,
    method: Method,
    options: ScoringOptions | None = None,
    mode: CandidateMode | None = None,
    deg: DegreeTable | None = None,
) -> Iterator[ScoreChunk]:
    """
    Stream scored candidates in (source, target) order. Sparse mode yields
    only provably nonzero scores; full_stream yields every candidate pair,
    one source at a time, without holding the whole universe in memory.
    """
    options = options or ScoringOptions()
    mode = mode or default_mode(method)
    _check_mode(method, mode)
    deg = deg or degrees(g)
    if method.is_path_based:
        return _path_chunks(g, deg, method, options, mode)
    return _baseline_chunks(g, deg, method, options, mode)


def score_candidates(
    g: DirectedGraph,
    method: Method,
    options: ScoringOptions | None = None,
    mode: CandidateMode | None = None,
    deg: DegreeTable | None = None,
) -> ScoredPairs:
    """Materialize :func:`iter_candidate_chunks` into one :class:`ScoredPairs`."""
    chunks: List[ScoreChunk] = list(iter_candidate_chunks(g, method, options, mode, deg))
    if chunks:
        sources = np.concatenate([c.sources for c in chunks])
        targets = np.concatenate([c.targets for c in chunks])
        scores = np.concatenate([c.scores for c in chunks])
    else:
        sources = targets = np.zeros(0, dtype=np.int64)
        scores = np.zeros(0, dtype=np.float64)
    implicit = candidate_universe_size(g) - int(scores.shape[0])
    return ScoredPairs(g.n, sources, targets, scores, implicit)
