from __future__ import annotations
from itertools import combinations

import numpy as np
import pytest
from scipy import stats

from src.config import Metric
from src.errors import InconsistentResultsError, InputError, NumericError, UsageError
from src.evaluation.trials import TrialMatrix
from src.statrank.ranks import (
    Adjustment,
    average_significant_rank,
    pairwise_comparison,
    rank_table,
    significant_scores,
)
from src.statrank.significance import bhy_adjust, mann_whitney_one_tailed, paired_t_test
from src.statrank.tables import (
    AVERAGE_ROW,
    parse_rank_table,
    render_means_table,
    render_pairwise_table,
    render_rank_table,
)


def matrix(name: str, vectors: dict) -> TrialMatrix:
    methods = list(vectors)
    values = np.array([vectors[m] for m in methods], dtype=np.float64)[:, :, None]
    return TrialMatrix(name, methods, [Metric.TPR], values, 0)


# ---------------------------
# Significance tests
# ---------------------------
def test_t_test_p_at_critical_value():
    # Differences with mean 0.754 and sd sqrt(10/9): t ≈ 2.262 on 9 degrees of freedom
    e = np.array([1.0, -1.0] * 5)
    x = 2.262 * e.std(ddof=1) / np.sqrt(10) + e
    t, p = paired_t_test(x, np.zeros(10))
    assert t == pytest.approx(2.262, abs=1e-9)
    assert p == pytest.approx(0.05, abs=1e-3)


def test_t_test_matches_scipy():
    rng = np.random.default_rng(1)
    for _ in range(20):
        x, y = rng.random(15), rng.random(15)
        t, p = paired_t_test(x, y)
        ref = stats.ttest_rel(x, y)
        assert t == pytest.approx(ref.statistic, rel=1e-9)
        assert p == pytest.approx(ref.pvalue, rel=1e-9, abs=1e-15)


def test_t_test_degenerate_conventions():
    assert paired_t_test([0.2, 0.3], [0.2, 0.3]) == (0.0, 1.0)
    t, p = paired_t_test([1.5, 2.5], [0.5, 1.5])
    assert p == 0.0 and t > 0
    with pytest.raises(NumericError):
        paired_t_test([0.1], [0.2])
    with pytest.raises(UsageError):
        paired_t_test([0.1, 0.2], [0.2])


def test_mann_whitney_exact_small():
    assert mann_whitney_one_tailed([1, 2], [3, 4]) == pytest.approx(1 / 6)
    assert mann_whitney_one_tailed([3, 4], [1, 2]) == pytest.approx(1.0)
    assert mann_whitney_one_tailed([2, 2, 2], [2, 2]) == 0.5


def test_mann_whitney_exact_matches_permutation_enumeration():
    rng = np.random.default_rng(5)
    for _ in range(15):
        n1, n2 = int(rng.integers(1, 7)), int(rng.integers(1, 6))
        a = rng.integers(1, 5, size=n1).astype(float)
        b = rng.integers(1, 5, size=n2).astype(float)
        pooled = np.concatenate([a, b])
        if np.all(pooled == pooled[0]):
            continue
        u_obs = stats.mannwhitneyu(a, b, method="asymptotic").statistic
        splits = list(combinations(range(n1 + n2), n1))
        at_most = 0
        for idx in splits:
            mask = np.zeros(n1 + n2, dtype=bool)
            mask[list(idx)] = True
            u = stats.mannwhitneyu(pooled[mask], pooled[~mask], method="asymptotic").statistic
            at_most += u <= u_obs + 1e-9
        assert mann_whitney_one_tailed(a, b) == pytest.approx(at_most / len(splits), abs=1e-12)


def test_mann_whitney_large_samples_use_normal_approximation():
    a = np.arange(10, dtype=float)
    b = np.arange(5, 15, dtype=float)
    ref = stats.mannwhitneyu(a, b, alternative="less", method="asymptotic", use_continuity=True)
    assert mann_whitney_one_tailed(a, b) == pytest.approx(ref.pvalue, rel=1e-12)


def test_bhy_hand_values():
    assert bhy_adjust([0.01, 0.04]).tolist() == pytest.approx([0.03, 0.06], abs=1e-15)
    assert bhy_adjust([]).size == 0
    with pytest.raises(NumericError):
        bhy_adjust([1.2])


# ---------------------------
# Ranks
# ---------------------------
def test_clear_winner_on_one_network():
    tm = matrix("net", {"A": [0.9, 0.8, 0.85, 0.9], "B": [0.1, 0.2, 0.15, 0.1]})
    table = rank_table([tm], Metric.TPR)
    assert table.scores.tolist() == [[1, -1]]
    assert table.average_ranks.tolist() == [1.0, 2.0]


def test_insignificant_methods_share_ranks():
    tm = matrix("net", {"A": [0.1, 0.9, 0.5], "B": [0.9, 0.1, 0.5], "C": [0.5, 0.5, 0.5]})
    table = rank_table([tm], Metric.TPR)
    assert table.scores.tolist() == [[0, 0, 0]]
    assert table.average_ranks.tolist() == [2.0, 2.0, 2.0]


def test_average_significant_rank():
    ranks, average = average_significant_rank(np.array([[2, 0, -2], [0, 0, 0]]))
    assert ranks.tolist() == [[1.0, 2.0, 3.0], [2.0, 2.0, 2.0]]
    assert average.tolist() == [1.5, 2.0, 2.5]


def test_mismatched_method_sets():
    a = matrix("a", {"A": [0.1, 0.2], "B": [0.3, 0.4]})
    b = matrix("b", {"A": [0.1, 0.2], "C": [0.3, 0.4]})
    with pytest.raises(InconsistentResultsError):
        significant_scores([a, b], Metric.TPR)
    with pytest.raises(InconsistentResultsError):
        significant_scores([a], Metric.AUROC)


def planted_networks(count: int = 14):
    rng = np.random.default_rng(2)
    out = []
    for r in range(count):
        base = rng.random(20) * 0.1
        out.append(matrix(f"net{r}", {"BEST": base + 0.8, "MID": base + 0.5, "LOW": base + rng.random(20) * 0.1}))
    return out


def test_planted_dominance():
    table = rank_table(planted_networks(), Metric.TPR)
    assert table.average_ranks[0] == 1.0
    pairwise = pairwise_comparison(table.methods, table.ranks, Adjustment.BHY)
    assert pairwise.p_values[0, 1] < 0.05
    assert pairwise.p_values[0, 2] < 0.05
    assert pairwise.markers[1][0] == ">"
    assert pairwise.markers[2][0] == ">"


def test_pairwise_without_adjustment_is_raw():
    ranks = np.array([[1.0, 2.0], [1.0, 2.0]])
    table = pairwise_comparison(["A", "B"], ranks, Adjustment.NONE)
    assert table.p_values[0, 1] == pytest.approx(1 / 6)
    assert np.isnan(table.p_values[1, 0])
    assert table.markers[1][0] == ""


# ---------------------------
# Tables
# ---------------------------
def test_rank_table_round_trip():
    table = rank_table(planted_networks(3), Metric.TPR)
    text = render_rank_table(table)
    assert text.splitlines()[-1].startswith(AVERAGE_ROW)
    networks, methods, ranks = parse_rank_table(text)
    assert networks == ["net0", "net1", "net2"]
    assert methods == ["BEST", "MID", "LOW"]
    assert ranks.tolist() == table.ranks.tolist()


def test_means_and_pairwise_rendering():
    table = rank_table(planted_networks(2), Metric.TPR)
    lines = render_means_table(table).splitlines()
    assert lines[0] == "network\tBEST\tMID\tLOW"
    assert lines[-1] == f"{AVERAGE_ROW}\t1.000\t2.000\t3.000"
    pairwise = pairwise_comparison(table.methods, table.ranks, Adjustment.NONE)
    rows = render_pairwise_table(pairwise).splitlines()
    assert rows[1].split("\t")[:2] == ["BEST", "-"]
    assert render_means_table(table, pretty=True).count("\t") == 0


def test_parse_rank_table_errors():
    with pytest.raises(InputError):
        parse_rank_table("network\tA\n")
    with pytest.raises(InputError):
        parse_rank_table("network\tA\tB\nx\t1.0\n")


def test_alpha_extremes():
    tm = matrix("net", {"A": [0.9, 0.8, 0.7], "B": [0.1, 0.3, 0.2], "C": [0.5, 0.4, 0.6]})
    _, zero, _ = significant_scores([tm], Metric.TPR, alpha=0.0)
    assert zero.tolist() == [[0, 0, 0]]
    _, full, _ = significant_scores([tm], Metric.TPR, alpha=1.0)
    assert full.tolist() == [[2, -2, 0]]
    assert int(full.sum()) == 0


def test_bhy_bounds_and_single_value():
    assert bhy_adjust([0.02]).tolist() == [0.02]
    rng = np.random.default_rng(4)
    p = rng.random(12)
    adjusted = bhy_adjust(p)
    assert np.all(adjusted >= p) and np.all(adjusted <= 1.0)
    order = rng.permutation(12)
    assert bhy_adjust(p[order]).tolist() == pytest.approx(adjusted[order].tolist(), abs=1e-15)


def test_rank_sums_are_preserved():
    ranks, _ = average_significant_rank(np.array([[1, 1, -1, -1], [3, 1, -1, -3]]))
    assert ranks.sum(axis=1).tolist() == [10.0, 10.0]
