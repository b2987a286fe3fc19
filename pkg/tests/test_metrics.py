from __future__ import annotations
from itertools import product

import numpy as np
import pytest

from src.config import CandidateMode, Metric, ScoringOptions
from src.errors import NumericError, UndefinedMetricError
from src.metrics.ranking import TieGroupAccumulator, TieGroups, aupr, auroc, compute_metrics, top_precision
from src.predictors.candidates import iter_candidate_chunks
from src.predictors.methods import Method


def exhaustive_auroc(scores, flags) -> float:
    pos = [s for s, f in zip(scores, flags) if f]
    neg = [s for s, f in zip(scores, flags) if not f]
    total = 0.0
    for p, n in product(pos, neg):
        total += 1.0 if p > n else 0.5 if p == n else 0.0
    return total / (len(pos) * len(neg))


def test_tie_groups_from_scores():
    groups = TieGroups.from_scores(np.array([0.5, 0.2, 0.5, 0.1]), np.array([1, 0, 0, 1]), 3, 1)
    assert groups.scores.tolist() == [0.5, 0.2, 0.1, 0.0]
    assert groups.sizes.tolist() == [2, 1, 1, 3]
    assert groups.positives.tolist() == [1, 0, 1, 1]
    assert groups.total == 7 and groups.total_positives == 3


def test_accumulator_merges_chunks():
    acc = TieGroupAccumulator()
    acc.add(np.array([0.3, 0.0]), np.array([True, False]))
    acc.add(np.array([0.3]), np.array([False]))
    acc.add_implicit_zeros(4, 2)
    groups = acc.groups()
    assert groups.sizes.tolist() == [2, 5]
    assert groups.positives.tolist() == [1, 2]
    with pytest.raises(NumericError):
        acc.add_implicit_zeros(1, 2)


def test_top_precision_without_ties():
    groups = TieGroups.from_scores(np.array([0.9, 0.8, 0.7, 0.1]), np.array([1, 0, 1, 0]))
    assert top_precision(groups) == pytest.approx(0.5)
    assert top_precision(groups, k=3) == pytest.approx(2 / 3)


def test_top_precision_fractional_tie():
    # Cutoff k = 2 falls inside a 3-way tie holding one positive
    groups = TieGroups.from_scores(np.array([0.9, 0.5, 0.5, 0.5, 0.1]), np.array([1, 1, 0, 0, 0]))
    assert top_precision(groups) == pytest.approx((1 + 1 / 3) / 2)


def test_top_precision_matches_random_tie_breaks():
    rng = np.random.default_rng(3)
    scores = rng.integers(0, 4, size=40).astype(float)
    flags = rng.random(40) < 0.3
    groups = TieGroups.from_scores(scores, flags)
    k = groups.total_positives
    hits = []
    for _ in range(10_000):
        order = np.lexsort((rng.random(40), -scores))
        hits.append(flags[order[:k]].sum() / k)
    assert top_precision(groups) == pytest.approx(np.mean(hits), abs=0.01)


def test_top_precision_cutoff_bounds():
    groups = TieGroups.from_scores(np.array([0.2, 0.1]), np.array([1, 0]))
    with pytest.raises(NumericError):
        top_precision(groups, k=3)


def test_auroc_matches_exhaustive_comparison():
    rng = np.random.default_rng(11)
    for _ in range(30):
        size = int(rng.integers(2, 60))
        scores = np.round(rng.random(size), 1)
        flags = rng.random(size) < 0.4
        flags[0], flags[1] = True, False
        groups = TieGroups.from_scores(scores, flags)
        assert auroc(groups) == pytest.approx(exhaustive_auroc(scores, flags), abs=1e-12)


def test_auroc_extremes():
    perfect = TieGroups.from_scores(np.array([0.9, 0.8, 0.1]), np.array([1, 1, 0]))
    assert auroc(perfect) == 1.0
    all_tied = TieGroups.from_scores(np.zeros(5), np.array([1, 0, 0, 1, 0]))
    assert auroc(all_tied) == 0.5


def test_aupr_values():
    perfect = TieGroups.from_scores(np.array([0.9, 0.8, 0.1, 0.0]), np.array([1, 1, 0, 0]))
    assert aupr(perfect) == pytest.approx(1.0)
    # One threshold: precision 2/5 everywhere
    all_tied = TieGroups.from_scores(np.zeros(5), np.array([1, 0, 0, 1, 0]))
    assert aupr(all_tied) == pytest.approx(0.4)
    # Points (0, 0), (0, 0), (1, 0.5)
    worst_first = TieGroups.from_scores(np.array([0.9, 0.1]), np.array([0, 1]))
    assert aupr(worst_first) == pytest.approx(0.25)


def test_undefined_metrics():
    only_pos = TieGroups.from_scores(np.array([0.3, 0.2]), np.array([1, 1]))
    with pytest.raises(UndefinedMetricError):
        auroc(only_pos)
    only_neg = TieGroups.from_scores(np.array([0.3, 0.2]), np.array([0, 0]))
    with pytest.raises(UndefinedMetricError):
        aupr(only_neg)


@pytest.mark.parametrize("method", [Method.ALG1, Method.ALG2, Method.DADA, Method.DSOI])
def test_sparse_with_implicit_zeros_equals_full_enumeration(make_graph, method):
    g = make_graph(4, 40, 0.06)
    rng = np.random.default_rng(9)
    universe = np.array(
        [i * g.n + j for i in range(g.n) for j in range(g.n) if i != j and not g.has_edge(i, j)]
    )
    positives = rng.choice(universe, size=12, replace=False)
    options = ScoringOptions(h=2)
    metrics = [Metric.TPR, Metric.AUPR, Metric.AUROC]

    results = {}
    for mode in CandidateMode:
        acc = TieGroupAccumulator()
        listed = hits = 0
        for chunk in iter_candidate_chunks(g, method, options, mode):
            flags = np.isin(chunk.sources * g.n + chunk.targets, positives)
            acc.add(chunk.scores, flags)
            listed += len(chunk)
            hits += int(flags.sum())
        acc.add_implicit_zeros(universe.size - listed, positives.size - hits)
        results[mode] = compute_metrics(acc.groups(), metrics)
    assert results[CandidateMode.SPARSE] == results[CandidateMode.FULL_STREAM]


def stepwise_aupr(scores, flags) -> float:
    """Walk distinct thresholds from the top, adding one trapezoid per step."""
    scores = np.asarray(scores, dtype=float)
    flags = np.asarray(flags, dtype=bool)
    positives = flags.sum()
    area = 0.0
    prev_recall = None
    prev_precision = None
    for threshold in sorted(set(scores.tolist()), reverse=True):
        chosen = scores >= threshold
        tp = (flags & chosen).sum()
        recall = tp / positives
        precision = tp / chosen.sum()
        if prev_recall is None:
            prev_recall, prev_precision = 0.0, precision
        area += (recall - prev_recall) * (precision + prev_precision) / 2
        prev_recall, prev_precision = recall, precision
    return area


def test_aupr_matches_stepwise_reference():
    rng = np.random.default_rng(21)
    for _ in range(30):
        size = int(rng.integers(2, 50))
        scores = np.round(rng.random(size), 1)
        flags = rng.random(size) < 0.3
        flags[0], flags[1] = True, False
        groups = TieGroups.from_scores(scores, flags)
        assert aupr(groups) == pytest.approx(stepwise_aupr(scores, flags), abs=1e-12)


def test_all_identical_scores_give_base_rate():
    groups = TieGroups.from_scores(np.full(10, 0.3), np.array([1, 1, 1] + [0] * 7))
    assert top_precision(groups) == pytest.approx(0.3)


def test_metrics_ignore_monotone_rescaling():
    rng = np.random.default_rng(8)
    scores = rng.random(30)
    flags = rng.random(30) < 0.3
    flags[0], flags[1] = True, False
    metrics = [Metric.TPR, Metric.AUPR, Metric.AUROC]
    plain = compute_metrics(TieGroups.from_scores(scores, flags), metrics)
    squashed = compute_metrics(TieGroups.from_scores(np.sqrt(scores) * 3 + 1, flags), metrics)
    for metric in metrics:
        assert plain[metric] == pytest.approx(squashed[metric], abs=1e-12)
