from __future__ import annotations
import math
from itertools import combinations
from typing import Sequence, Tuple

import numpy as np
from scipy import special, stats
from statsmodels.stats.multitest import multipletests

from .. import settings
from ..errors import NumericError, UsageError


def paired_t_test(x: Sequence[float], y: Sequence[float]) -> Tuple[float, float]:
    """
    Two-tailed paired t-test. Returns (t, p).

    Degenerate cases follow fixed conventions: identical vectors give p = 1,
    a constant nonzero difference gives p = 0 (a deterministic winner).
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape:
        raise UsageError(f"Paired samples differ in length: {x.shape[0]} vs {y.shape[0]}")
    T = int(x.shape[0])
    if T < 2:
        raise NumericError(f"Paired t-test needs at least 2 trials, got {T}")
    d = (x - y).tolist()
    mean = math.fsum(d) / T
    sd = math.sqrt(math.fsum((v - mean) ** 2 for v in d) / (T - 1))
    if sd == 0.0:
        if mean == 0.0:
            return 0.0, 1.0
        return math.copysign(math.inf, mean), 0.0
    t = mean / (sd / math.sqrt(T))
    df = T - 1
    # Two-tailed tail mass of Student's t through the regularized incomplete beta
    p = float(special.betainc(df / 2.0, 0.5, df / (df + t * t)))
    return t, min(1.0, max(0.0, p))


def _exact_lower_tail(a: np.ndarray, b: np.ndarray) -> float:
    pooled = np.concatenate([a, b])
    ranks = stats.rankdata(pooled, method="average")
    n1 = a.shape[0]
    observed = float(ranks[:n1].sum())
    total = 0
    at_most = 0
    for idx in combinations(range(pooled.shape[0]), n1):
        total += 1
        if float(ranks[list(idx)].sum()) <= observed + 1e-9:
            at_most += 1
    return at_most / total


def mann_whitney_one_tailed(a: Sequence[float], b: Sequence[float]) -> float:
    """
    One-tailed Mann-Whitney-Wilcoxon p-value for "a is stochastically
    smaller than b" (lower ranks are better). Midranks for ties; exact
    enumeration of every rank assignment for small pooled samples, otherwise
    the tie-corrected normal approximation with continuity correction.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.size < 1 or b.size < 1:
        raise NumericError("Mann-Whitney test needs at least one value per sample")
    pooled = np.concatenate([a, b])
    if np.all(pooled == pooled[0]):
        return 0.5
    if pooled.size <= settings.MWW_EXACT_MAX_TOTAL:
        return _exact_lower_tail(a, b)
    res = stats.mannwhitneyu(a, b, alternative="less", method="asymptotic", use_continuity=True)
    return float(res.pvalue)


def bhy_adjust(p: Sequence[float]) -> np.ndarray:
    """Benjamini-Hochberg-Yekutieli step-up adjustment, valid under any dependence."""
    p = np.asarray(p, dtype=np.float64)
    if p.size == 0:
        return p.copy()
    if np.any((p < 0) | (p > 1)) or not np.all(np.isfinite(p)):
        raise NumericError("p-values must lie in [0, 1]")
    return multipletests(p, method="fdr_by")[1]
