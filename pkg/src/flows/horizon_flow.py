from __future__ import annotations
import logging
import pathlib
from typing import Any, Dict, List, Optional, Sequence

from .. import settings
from ..config import EdgeListFormat, Metric, RunConfig
from ..errors import UsageError
from ..evaluation.trials import TrialMatrix, run_trials
from ..graph.io import read_edge_list
from ..predictors.methods import Method
from ..statrank.ranks import rank_table
from ..tools.file_system import write_text_file


logger = logging.getLogger(__name__)

DEFAULT_HORIZONS = tuple(range(2, 10))


def horizon_label(method: Method, h: int) -> str:
    return f"{method.value}@h={h}"


def run_horizon(
    graph_paths: Sequence[str],
    config: RunConfig,
    horizons: Sequence[int] = DEFAULT_HORIZONS,
    alpha: float = settings.DEFAULT_ALPHA,
    out: Optional[str] = None,
    fmt: EdgeListFormat = EdgeListFormat.WHITESPACE,
    progress: bool = True,
) -> Dict[str, Any]:
    """
    Horizon-depth study: every horizon value of a path-based method competes
    against the others on the same splits; the average significant rank of
    each value across networks is reported per metric.
    """
    methods = [m for m in config.methods if m.is_path_based]
    if not methods:
        raise UsageError("The horizon study needs ALG1 and/or ALG2")
    if not horizons or min(horizons) < 1:
        raise UsageError("Horizons must be positive integers")

    per_network: List[TrialMatrix] = []
    for path in graph_paths:
        g = read_edge_list(path, fmt)
        name = pathlib.Path(path).stem
        parts = []
        for h in horizons:
            cfg = config.model_copy(update={"h": int(h), "methods": methods})
            tm = run_trials(g, cfg, dataset=f"{name} h={h}", progress=progress)
            parts.append(tm.relabeled([horizon_label(m, h) for m in methods]))
        stacked = TrialMatrix.stack_methods(parts)
        stacked.dataset = name
        per_network.append(stacked)

    metrics = [m for m in Metric if all(m in tm.metrics for tm in per_network)]
    rows: List[List[str]] = [["method", "h", *(m.value for m in metrics)]]
    curves: Dict[str, Dict[int, Dict[str, float]]] = {}
    for method in methods:
        labels = [horizon_label(method, h) for h in horizons]
        subset = [tm.select(labels) for tm in per_network]
        ranks_by_metric = {metric: rank_table(subset, metric, alpha).average_ranks for metric in metrics}
        curves[method.value] = {}
        for idx, h in enumerate(horizons):
            point = {metric.value: float(ranks_by_metric[metric][idx]) for metric in metrics}
            curves[method.value][int(h)] = point
            rows.append([method.value, str(h), *(f"{point[m.value]:.3f}" for m in metrics)])

    text = "".join("\t".join(r) + "\n" for r in rows)
    written = write_text_file(out, text) if out else None
    return {"curves": curves, "rendered": text, "written": written}
