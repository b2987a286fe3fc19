from __future__ import annotations
import logging
import pathlib
from typing import Any, Dict, Optional

from .. import settings
from ..config import EdgeListFormat, RunConfig
from ..evaluation.trials import run_trials, validate_plan
from ..graph.core import dataset_stats
from ..graph.io import read_edge_list
from ..storage import results_root, write_results


logger = logging.getLogger(__name__)


def default_results_path(graph_path: str) -> pathlib.Path:
    return results_root() / f"{pathlib.Path(graph_path).stem}.yaml"


def run_evaluate(
    graph_path: str,
    config: RunConfig,
    out: Optional[str] = None,
    dataset: Optional[str] = None,
    fmt: EdgeListFormat = EdgeListFormat.WHITESPACE,
    progress: bool = True,
) -> Dict[str, Any]:
    """
    Evaluate the configured methods on one network and write its results
    file. Infeasible method/metric/size combinations fail before any trial.
    """
    g = read_edge_list(graph_path, fmt)
    name = dataset or pathlib.Path(graph_path).stem
    resolved = config.resolved(g.n)
    validate_plan(g, resolved)
    tm = run_trials(g, resolved, dataset=name, progress=progress)
    path = write_results(out or default_results_path(graph_path), tm, dataset_stats(g))
    logger.info("Results for %s written to %s (schema v%d)", name, path, settings.RESULTS_SCHEMA_VERSION)
    return {"dataset": name, "results": path, "trials": tm.trials, "matrix": tm}
