from __future__ import annotations
import logging
from dataclasses import dataclass
from enum import Enum
from typing import List, Sequence

import numpy as np
from scipy import stats

from .. import settings
from ..config import Metric
from ..errors import InconsistentResultsError, UsageError
from ..evaluation.trials import TrialMatrix
from .significance import bhy_adjust, mann_whitney_one_tailed, paired_t_test


logger = logging.getLogger(__name__)


class Adjustment(str, Enum):
    BHY = "bhy"
    NONE = "none"


@dataclass
class RankTable:
    """
    Per-network significance scores (sum of pairwise +1/-1/0 outcomes), the
    within-network ranks they induce, and the per-method average rank.
    """

    metric: Metric
    networks: List[str]
    methods: List[str]
    scores: np.ndarray  # networks x methods, int
    ranks: np.ndarray  # networks x methods
    means: np.ndarray  # networks x methods, mean metric value
    average_ranks: np.ndarray  # methods


@dataclass
class PairwiseTable:
    """Upper triangle: adjusted p-values. Lower triangle: '<', '>' or '' markers."""

    methods: List[str]
    p_values: np.ndarray  # methods x methods, NaN outside the upper triangle
    markers: List[List[str]]
    alpha: float
    adjustment: Adjustment


def _aligned_methods(matrices: Sequence[TrialMatrix]) -> List[str]:
    if not matrices:
        raise UsageError("At least one result set is required")
    methods = list(matrices[0].methods)
    for tm in matrices[1:]:
        if set(tm.methods) != set(methods):
            raise InconsistentResultsError(
                f"Method set of '{tm.dataset}' ({', '.join(sorted(tm.methods))}) differs from "
                f"'{matrices[0].dataset}' ({', '.join(sorted(methods))})"
            )
    return methods


def significant_scores(
    matrices: Sequence[TrialMatrix], metric: Metric, alpha: float = settings.DEFAULT_ALPHA
) -> tuple[List[str], np.ndarray, np.ndarray]:
    """
    For each network and method pair, a paired t-test on the per-trial metric
    vectors; below ``alpha`` the higher mean wins +1 and the other gets -1.
    Returns (methods, scores[network, method], means[network, method]).
    """
    if not 0.0 <= alpha <= 1.0:
        raise UsageError(f"alpha must lie in [0, 1], got {alpha}")
    methods = _aligned_methods(matrices)
    M = len(methods)
    scores = np.zeros((len(matrices), M), dtype=np.int64)
    means = np.zeros((len(matrices), M), dtype=np.float64)
    for r, tm in enumerate(matrices):
        if metric not in tm.metrics:
            raise InconsistentResultsError(f"'{tm.dataset}' has no {metric.value} values")
        vectors = [tm.vector(m, metric) for m in methods]
        means[r] = [tm.mean(m, metric) for m in methods]
        for a in range(M):
            for b in range(a + 1, M):
                _, p = paired_t_test(vectors[a], vectors[b])
                if p >= alpha or means[r, a] == means[r, b]:
                    continue
                winner, loser = (a, b) if means[r, a] > means[r, b] else (b, a)
                scores[r, winner] += 1
                scores[r, loser] -= 1
    return methods, scores, means


def average_significant_rank(scores: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """
    Rank methods within each network by score (1 = best, ties share the
    average position), then average over networks. Lower is better.
    """
    scores = np.atleast_2d(np.asarray(scores, dtype=np.float64))
    ranks = stats.rankdata(-scores, method="average", axis=1)
    return ranks, ranks.mean(axis=0)


def rank_table(
    matrices: Sequence[TrialMatrix], metric: Metric, alpha: float = settings.DEFAULT_ALPHA
) -> RankTable:
    methods, scores, means = significant_scores(matrices, metric, alpha)
    ranks, average = average_significant_rank(scores)
    return RankTable(
        metric=metric,
        networks=[tm.dataset for tm in matrices],
        methods=methods,
        scores=scores,
        ranks=ranks,
        means=means,
        average_ranks=average,
    )


def pairwise_comparison(
    methods: Sequence[str],
    ranks: np.ndarray,
    adjustment: Adjustment = Adjustment.BHY,
    alpha: float = settings.DEFAULT_ALPHA,
) -> PairwiseTable:
    """
    One-tailed Mann-Whitney-Wilcoxon test between the per-network rank
    samples of every method pair, oriented towards the method with the lower
    average rank, then adjusted across all pairs.
    """
    ranks = np.atleast_2d(np.asarray(ranks, dtype=np.float64))
    M = len(methods)
    if ranks.shape[1] != M:
        raise InconsistentResultsError("Rank matrix does not match the method list")
    average = ranks.mean(axis=0)
    pairs = [(a, b) for a in range(M) for b in range(a + 1, M)]
    raw = []
    for a, b in pairs:
        better, worse = (a, b) if average[a] <= average[b] else (b, a)
        raw.append(mann_whitney_one_tailed(ranks[:, better], ranks[:, worse]))
    adjusted = bhy_adjust(raw) if adjustment is Adjustment.BHY else np.asarray(raw, dtype=np.float64)

    p_values = np.full((M, M), np.nan)
    markers = [["" for _ in range(M)] for _ in range(M)]
    for (a, b), p in zip(pairs, adjusted.tolist()):
        p_values[a, b] = p
        if p < alpha and average[a] != average[b]:
            # Row b against column a
            markers[b][a] = "<" if average[b] < average[a] else ">"
    logger.debug("Pairwise comparison over %d network(s), %d pair(s)", ranks.shape[0], len(pairs))
    return PairwiseTable(list(methods), p_values, markers, alpha, adjustment)
