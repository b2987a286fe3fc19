from __future__ import annotations
from dataclasses import dataclass
from typing import Dict, Iterable, Optional

import numpy as np

from ..config import Metric
from ..errors import NumericError, UndefinedMetricError


@dataclass(frozen=True, eq=False)
class TieGroups:
    """
    Candidate scoring collapsed to tie groups, sorted by score descending.
    ``sizes[g]`` candidates share ``scores[g]``; ``positives[g]`` of them are
    removed (true) edges. Every metric below is a function of this table only.
    """

    scores: np.ndarray
    sizes: np.ndarray
    positives: np.ndarray

    @property
    def total(self) -> int:
        return int(self.sizes.sum())

    @property
    def total_positives(self) -> int:
        return int(self.positives.sum())

    @property
    def total_negatives(self) -> int:
        return self.total - self.total_positives

    @classmethod
    def from_scores(
        cls,
        scores: np.ndarray,
        is_positive: np.ndarray,
        implicit_zero_total: int = 0,
        implicit_zero_positives: int = 0,
    ) -> "TieGroups":
        acc = TieGroupAccumulator()
        acc.add(scores, is_positive)
        acc.add_implicit_zeros(implicit_zero_total, implicit_zero_positives)
        return acc.groups()


class TieGroupAccumulator:
    """Merge scored chunks into tie groups without keeping the chunks."""

    def __init__(self) -> None:
        self._sizes: Dict[float, int] = {}
        self._positives: Dict[float, int] = {}

    def add(self, scores: np.ndarray, is_positive: np.ndarray) -> None:
        scores = np.asarray(scores, dtype=np.float64)
        if scores.size == 0:
            return
        is_positive = np.asarray(is_positive, dtype=bool)
        values, inverse, counts = np.unique(scores, return_inverse=True, return_counts=True)
        pos = np.bincount(inverse.ravel(), weights=is_positive.astype(np.float64), minlength=values.size)
        for v, c, p in zip(values.tolist(), counts.tolist(), pos.tolist()):
            self._sizes[v] = self._sizes.get(v, 0) + int(c)
            self._positives[v] = self._positives.get(v, 0) + int(round(p))

    def add_implicit_zeros(self, total: int, positives: int) -> None:
        if positives > total:
            raise NumericError("More positives than candidates in the implicit-zero group")
        if total <= 0:
            return
        self._sizes[0.0] = self._sizes.get(0.0, 0) + int(total)
        self._positives[0.0] = self._positives.get(0.0, 0) + int(positives)

    def groups(self) -> TieGroups:
        keys = sorted(self._sizes, reverse=True)
        return TieGroups(
            scores=np.array(keys, dtype=np.float64),
            sizes=np.array([self._sizes[k] for k in keys], dtype=np.int64),
            positives=np.array([self._positives[k] for k in keys], dtype=np.int64),
        )


def _require_both_classes(groups: TieGroups) -> None:
    if groups.total_positives == 0 or groups.total_negatives == 0:
        raise UndefinedMetricError(
            f"Metric undefined with {groups.total_positives} positive(s) and "
            f"{groups.total_negatives} negative(s)"
        )


def top_precision(groups: TieGroups, k: Optional[int] = None) -> float:
    """
    Fraction of removed edges among the top ``k`` candidates (``k`` defaults
    to the number of positives). A tie group straddling rank ``k`` contributes
    its positives in proportion to the slots it takes, the expected value of a
    uniformly random tie break.
    """
    if k is None:
        k = groups.total_positives
    if k < 1:
        raise NumericError("TPR cutoff k must be >= 1")
    if k > groups.total:
        raise NumericError(f"TPR cutoff k={k} exceeds the {groups.total} candidates")
    remaining = k
    credit = 0.0
    for size, pos in zip(groups.sizes.tolist(), groups.positives.tolist()):
        if remaining <= 0:
            break
        taken = min(size, remaining)
        if taken == size:
            credit += pos
        else:
            credit += pos * (taken / size)
        remaining -= taken
    return credit / k


def auroc(groups: TieGroups) -> float:
    """
    Probability that a positive outranks a negative, ties counting one half,
    from group counts (no pairwise loop).
    """
    _require_both_classes(groups)
    pos = groups.positives.astype(np.float64)
    neg = (groups.sizes - groups.positives).astype(np.float64)
    # Negatives in strictly lower-scored groups
    neg_below = neg.sum() - np.cumsum(neg)
    wins = float(np.dot(pos, neg_below))
    ties = float(np.dot(pos, neg))
    return (wins + 0.5 * ties) / (float(pos.sum()) * float(neg.sum()))


def aupr(groups: TieGroups) -> float:
    """
    Area under the precision-recall curve with one threshold per distinct
    score (tie groups enter together), trapezoids over recall, and a leading
    point at recall 0 carrying the first group's precision.
    """
    _require_both_classes(groups)
    tp = np.cumsum(groups.positives).astype(np.float64)
    seen = np.cumsum(groups.sizes).astype(np.float64)
    precision = tp / seen
    recall = tp / float(groups.total_positives)
    recall = np.concatenate(([0.0], recall))
    precision = np.concatenate(([precision[0]], precision))
    return float(np.sum(np.diff(recall) * (precision[1:] + precision[:-1]) / 2.0))


METRIC_FUNCTIONS = {
    Metric.TPR: top_precision,
    Metric.AUPR: aupr,
    Metric.AUROC: auroc,
}


def compute_metrics(groups: TieGroups, metrics: Iterable[Metric]) -> Dict[Metric, float]:
    return {metric: float(METRIC_FUNCTIONS[metric](groups)) for metric in metrics}
