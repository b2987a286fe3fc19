from __future__ import annotations
import logging
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from tqdm import tqdm

from .. import settings
from ..config import CandidateMode, Metric, RunConfig, ScoringOptions
from ..errors import InfeasiblePlanError, NumericError
from ..graph.core import DirectedGraph, Edge, degrees
from ..metrics.ranking import TieGroupAccumulator, compute_metrics
from ..predictors.candidates import candidate_universe_size, default_mode, iter_candidate_chunks, score_candidates
from ..predictors.methods import Method
from .split import split_edges, trial_seed


logger = logging.getLogger(__name__)


@dataclass
class TrialMatrix:
    """
    ``values[m, t, k]``: metric k of method m in trial t, all methods of a
    trial scored on the same split.
    """

    dataset: str
    methods: List[str]
    metrics: List[Metric]
    values: np.ndarray
    master_seed: int
    config: dict = field(default_factory=dict)
    stats: dict = field(default_factory=dict)

    @property
    def trials(self) -> int:
        return int(self.values.shape[1])

    def vector(self, method: str, metric: Metric) -> np.ndarray:
        return self.values[self.methods.index(method), :, self.metrics.index(metric)]

    def mean(self, method: str, metric: Metric) -> float:
        return math.fsum(self.vector(method, metric).tolist()) / self.trials

    def relabeled(self, labels: Sequence[str]) -> "TrialMatrix":
        if len(labels) != len(self.methods):
            raise ValueError("one label per method is required")
        return TrialMatrix(
            self.dataset, list(labels), list(self.metrics), self.values, self.master_seed, self.config, self.stats
        )

    def select(self, methods: Sequence[str]) -> "TrialMatrix":
        rows = [self.methods.index(m) for m in methods]
        return TrialMatrix(
            self.dataset, list(methods), list(self.metrics), self.values[rows], self.master_seed, self.config, self.stats
        )

    @classmethod
    def stack_methods(cls, parts: Sequence["TrialMatrix"]) -> "TrialMatrix":
        """Join matrices of the same dataset and trial count side by side along methods."""
        first = parts[0]
        for p in parts[1:]:
            if p.metrics != first.metrics or p.trials != first.trials:
                raise ValueError("matrices disagree on metrics or trial count")
        methods = [m for p in parts for m in p.methods]
        values = np.concatenate([p.values for p in parts], axis=0)
        return cls(first.dataset, methods, list(first.metrics), values, first.master_seed, first.config, first.stats)


def validate_plan(g: DirectedGraph, config: RunConfig) -> None:
    """Reject infeasible runs before any work starts."""
    if g.m < 2:
        raise InfeasiblePlanError(f"Need at least 2 edges to evaluate, graph has {g.m}")
    metrics = config.metrics or []
    ranked = [m for m in metrics if m in (Metric.AUPR, Metric.AUROC)]
    if ranked and g.n > settings.METRIC_GATE_NODES and not config.allow_large_metrics:
        names = ", ".join(m.value for m in ranked)
        raise InfeasiblePlanError(
            f"{names} requested on a {g.n}-node network (gate: {settings.METRIC_GATE_NODES}); "
            "pass --allow-large-metrics to override"
        )


def evaluate_split(
    g_train: DirectedGraph,
    removed: Sequence[Edge],
    methods: Sequence[Method],
    metrics: Sequence[Metric],
    options: ScoringOptions,
) -> np.ndarray:
    """Score every method on one split; returns ``values[method, metric]``."""
    n = g_train.n
    deg = degrees(g_train)
    positive_codes = np.array(sorted(i * n + j for i, j in removed), dtype=np.int64)
    universe = candidate_universe_size(g_train)
    out = np.zeros((len(methods), len(metrics)), dtype=np.float64)
    for a, method in enumerate(methods):
        mode = default_mode(method)
        acc = TieGroupAccumulator()
        if mode is CandidateMode.SPARSE:
            pairs, flags = score_candidates(g_train, method, options, mode, deg).with_positives(positive_codes)
            acc.add(pairs.scores, flags)
            acc.add_implicit_zeros(pairs.implicit_zero_count, pairs.implicit_zero_positives)
        else:
            # full_stream never holds the whole universe
            listed = 0
            for chunk in iter_candidate_chunks(g_train, method, options, mode, deg):
                acc.add(chunk.scores, np.isin(chunk.sources * n + chunk.targets, positive_codes))
                listed += len(chunk)
            if listed != universe:
                raise NumericError(f"{method.value}: streamed {listed} of {universe} candidates")
        values = compute_metrics(acc.groups(), metrics)
        out[a] = [values[metric] for metric in metrics]
    return out


# Per-process state for pooled trials (set once by the initializer)
_WORKER: Dict[str, object] = {}


def _init_worker(g: DirectedGraph, config: RunConfig) -> None:
    _WORKER["graph"] = g
    _WORKER["config"] = config


def _run_trial(t: int, g: Optional[DirectedGraph] = None, config: Optional[RunConfig] = None) -> Tuple[int, np.ndarray]:
    g = g if g is not None else _WORKER["graph"]
    config = config if config is not None else _WORKER["config"]
    seed = trial_seed(config.seed, t)
    g_train, removed = split_edges(g, config.fraction, seed)
    values = evaluate_split(g_train, removed, config.methods, config.metrics, config.scoring())
    return t, values


def run_trials(
    g: DirectedGraph,
    config: RunConfig,
    dataset: str = "network",
    progress: bool = True,
) -> TrialMatrix:
    """
    Run the removal / predict / measure protocol ``config.trials`` times.
    Trial t always uses the split derived from (seed, t), whatever the worker
    count, so the matrix is reproducible.
    """
    config = config.resolved(g.n)
    validate_plan(g, config)
    T = int(config.trials)
    values = np.full((len(config.methods), T, len(config.metrics)), np.nan, dtype=np.float64)
    logger.info(
        "Evaluating %s (n=%d, m=%d): %d trial(s), methods=%s, metrics=%s",
        dataset,
        g.n,
        g.m,
        T,
        ",".join(m.value for m in config.methods),
        ",".join(m.value for m in config.metrics),
    )
    bar = tqdm(total=T, desc=dataset, unit="trial", file=sys.stderr, disable=not progress)
    try:
        if config.jobs <= 1 or T == 1:
            for t in range(T):
                _, vals = _run_trial(t, g, config)
                values[:, t, :] = vals
                bar.update(1)
        else:
            with ProcessPoolExecutor(
                max_workers=min(config.jobs, T), initializer=_init_worker, initargs=(g, config)
            ) as pool:
                for t, vals in pool.map(_run_trial, range(T), chunksize=max(1, T // (4 * config.jobs))):
                    values[:, t, :] = vals
                    bar.update(1)
    finally:
        bar.close()

    if not np.all(np.isfinite(values)):
        raise NumericError(f"Non-finite metric values in {dataset}")
    return TrialMatrix(
        dataset=dataset,
        methods=[m.value for m in config.methods],
        metrics=list(config.metrics),
        values=values,
        master_seed=config.seed,
        config=config.snapshot(),
    )
