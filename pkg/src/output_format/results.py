from __future__ import annotations
from typing import Dict, List
from pydantic import BaseModel, Field


RESULTS_SCHEMA = '''
{
  "schema_version": int,
  "dataset": str,
  "graph": {"n": int, "m": int, "density": float, "k_in_max": int, "k_out_max": int, "k_total_max": int, "reciprocity": float},
  "config": {
    "methods": [str], "h": int, "fraction": float, "trials": int, "metrics": [str],
    "seed": int, "tie_policy": str, "eta_variant": str, "eta_kappa": str,
    "baseline_kappa": str, "allow_large_metrics": bool
  },
  "summary": {method: {metric: {"mean": float, "sd": float}}},
  "trials": {method: {metric: [float]}}
}
'''


class GraphStats(BaseModel):
    n: int
    m: int
    density: float = 0.0
    k_in_max: int = 0
    k_out_max: int = 0
    k_total_max: int = 0
    reciprocity: float = 0.0


class ConfigSnapshot(BaseModel):
    methods: List[str]
    h: int
    fraction: float
    trials: int
    metrics: List[str]
    seed: int
    tie_policy: str = "fractional"
    eta_variant: str = "equations"
    eta_kappa: str = "sum"
    baseline_kappa: str = "union"
    allow_large_metrics: bool = False


class SummaryStat(BaseModel):
    mean: float
    sd: float


class EvaluationResults(BaseModel):
    schema_version: int = Field(ge=1)
    dataset: str
    graph: GraphStats
    config: ConfigSnapshot
    summary: Dict[str, Dict[str, SummaryStat]]
    trials: Dict[str, Dict[str, List[float]]]
