from __future__ import annotations
import math
from dataclasses import dataclass
from typing import Dict, List

from ..config import Metric
from .trials import TrialMatrix


@dataclass(frozen=True)
class MetricSummary:
    mean: float
    sd: float
    values: List[float]


def summarize(values: List[float]) -> MetricSummary:
    """Mean and sample standard deviation with compensated (fsum) accumulation."""
    T = len(values)
    mean = math.fsum(values) / T
    if T < 2:
        return MetricSummary(mean, 0.0, list(values))
    var = math.fsum((v - mean) ** 2 for v in values) / (T - 1)
    return MetricSummary(mean, math.sqrt(var), list(values))


def aggregate(tm: TrialMatrix) -> Dict[str, Dict[Metric, MetricSummary]]:
    return {
        method: {metric: summarize(tm.vector(method, metric).tolist()) for metric in tm.metrics}
        for method in tm.methods
    }
