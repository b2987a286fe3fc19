from __future__ import annotations
import pathlib
from typing import List

import numpy as np
import yaml
from pydantic import ValidationError

from . import settings
from .config import Metric
from .errors import InputError
from .evaluation.aggregate import aggregate
from .evaluation.trials import TrialMatrix
from .output_format.results import RESULTS_SCHEMA, EvaluationResults


def results_root(base: str | pathlib.Path | None = None) -> pathlib.Path:
    return pathlib.Path(base or settings.RESULTS_DIR)


def to_yaml_text(content: dict) -> str:
    """Stable YAML text (insertion key order, trailing newline)."""
    text = yaml.safe_dump(content, allow_unicode=True, sort_keys=False)
    if not text.endswith("\n"):
        text = text + "\n"
    return text


def results_document(tm: TrialMatrix, graph_stats: dict) -> EvaluationResults:
    summary = aggregate(tm)
    return EvaluationResults(
        schema_version=settings.RESULTS_SCHEMA_VERSION,
        dataset=tm.dataset,
        graph=graph_stats,
        config=tm.config,
        summary={
            method: {metric.value: {"mean": s.mean, "sd": s.sd} for metric, s in per.items()}
            for method, per in summary.items()
        },
        trials={
            method: {metric.value: tm.vector(method, metric).tolist() for metric in tm.metrics}
            for method in tm.methods
        },
    )


def write_results(path: str | pathlib.Path, tm: TrialMatrix, graph_stats: dict) -> str:
    p = pathlib.Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    doc = results_document(tm, graph_stats)
    p.write_text(to_yaml_text(doc.model_dump(mode="json")), encoding="utf-8")
    return str(p)


def load_results(path: str | pathlib.Path) -> EvaluationResults:
    p = pathlib.Path(path)
    if not p.exists() or not p.is_file():
        raise InputError(f"Results file not found: {p}")
    try:
        data = yaml.safe_load(p.read_text(encoding="utf-8")) or {}
        doc = EvaluationResults.model_validate(data)
    except (yaml.YAMLError, ValidationError) as exc:
        raise InputError(f"Invalid results file {p}: {exc}\nExpected layout:{RESULTS_SCHEMA}") from exc
    if doc.schema_version > settings.RESULTS_SCHEMA_VERSION:
        raise InputError(f"{p}: schema_version {doc.schema_version} is newer than supported")
    return doc


def trial_matrix_from_results(doc: EvaluationResults) -> TrialMatrix:
    methods = list(doc.trials.keys())
    try:
        metrics = [Metric(m) for m in doc.config.metrics]
    except ValueError as exc:
        raise InputError(f"{doc.dataset}: {exc} (known: tpr, aupr, auroc)") from exc
    T = doc.config.trials
    values = np.zeros((len(methods), T, len(metrics)), dtype=np.float64)
    for a, method in enumerate(methods):
        for k, metric in enumerate(metrics):
            vec = doc.trials[method].get(metric.value)
            if vec is None or len(vec) != T:
                raise InputError(f"{doc.dataset}: {method}/{metric.value} does not hold {T} trial values")
            values[a, :, k] = vec
    return TrialMatrix(
        dataset=doc.dataset,
        methods=methods,
        metrics=metrics,
        values=values,
        master_seed=doc.config.seed,
        config=doc.config.model_dump(mode="json"),
        stats=doc.graph.model_dump(mode="json"),
    )


def list_results(base: str | pathlib.Path | None = None) -> List[str]:
    root = results_root(base)
    if not root.exists():
        return []
    return sorted(str(p) for p in root.rglob("*.yaml"))
