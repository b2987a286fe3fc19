from __future__ import annotations
from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, Field, field_validator

from . import settings
from .predictors.methods import Method


class EdgeListFormat(str, Enum):
    WHITESPACE = "whitespace"
    CSV = "csv"
    # Canonical output: tab-separated, labels may hold spaces
    TSV = "tsv"


class CandidateMode(str, Enum):
    SPARSE = "sparse"
    FULL_STREAM = "full_stream"


class Metric(str, Enum):
    TPR = "tpr"
    AUPR = "aupr"
    AUROC = "auroc"


class EtaVariant(str, Enum):
    # Local attraction exactly as the closed-form equations read
    EQUATIONS = "equations"
    # Extra "1 -" on each product, as the algorithm listing reads
    PSEUDOCODE = "pseudocode"


class KappaMode(str, Enum):
    SUM = "sum"  # k_in + k_out
    UNION = "union"  # |in-neighbors ∪ out-neighbors|


class TiePolicy(str, Enum):
    FRACTIONAL = "fractional"


class ScoringOptions(BaseModel):
    """Knobs shared by every predictor call."""

    h: int = Field(default=settings.DEFAULT_HORIZON, ge=1)
    eta_variant: EtaVariant = EtaVariant.EQUATIONS
    eta_kappa: KappaMode = KappaMode.SUM
    baseline_kappa: KappaMode = KappaMode.UNION

    model_config = {"frozen": True}


class RunConfig(BaseModel):
    """
    Full configuration of one evaluation run. ``trials`` and ``metrics`` left
    as None are resolved against the graph size by :meth:`resolved`.
    """

    methods: List[Method] = Field(default_factory=lambda: list(Method))
    h: int = Field(default=settings.DEFAULT_HORIZON, ge=1)
    fraction: float = Field(default=settings.DEFAULT_TEST_FRACTION, gt=0.0, lt=1.0)
    trials: Optional[int] = Field(default=None, ge=1)
    metrics: Optional[List[Metric]] = None
    seed: int = Field(default=settings.DEFAULT_SEED, ge=0)
    tie_policy: TiePolicy = TiePolicy.FRACTIONAL
    eta_variant: EtaVariant = EtaVariant.EQUATIONS
    eta_kappa: KappaMode = KappaMode.SUM
    baseline_kappa: KappaMode = KappaMode.UNION
    allow_large_metrics: bool = False
    jobs: int = Field(default=1, ge=1)

    @field_validator("methods")
    @classmethod
    def _non_empty_methods(cls, value: List[Method]) -> List[Method]:
        if not value:
            raise ValueError("at least one method is required")
        return list(dict.fromkeys(value))

    def resolved(self, n: int) -> "RunConfig":
        """Return a copy with auto fields filled in for an n-node network."""
        small = n < settings.SMALL_NETWORK_NODES
        trials = self.trials
        if trials is None:
            trials = settings.SMALL_NETWORK_TRIALS if small else settings.LARGE_NETWORK_TRIALS
        metrics = self.metrics
        if metrics is None:
            metrics = [Metric.TPR, Metric.AUPR, Metric.AUROC] if small else [Metric.TPR]
        return self.model_copy(update={"trials": trials, "metrics": list(metrics)})

    def scoring(self) -> ScoringOptions:
        return ScoringOptions(
            h=self.h,
            eta_variant=self.eta_variant,
            eta_kappa=self.eta_kappa,
            baseline_kappa=self.baseline_kappa,
        )

    def snapshot(self) -> dict:
        """Serializable view written into results files (jobs excluded: it never changes values)."""
        return self.model_dump(mode="json", exclude={"jobs"})
