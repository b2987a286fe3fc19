from __future__ import annotations
import logging
import pathlib
from typing import Any, Dict, List, Optional, Sequence

from .. import settings
from ..config import Metric
from ..errors import InputError
from ..statrank.ranks import Adjustment, pairwise_comparison, rank_table
from ..statrank.tables import (
    parse_rank_table,
    render_means_table,
    render_pairwise_table,
    render_rank_table,
    render_scores_table,
)
from ..storage import list_results, load_results, trial_matrix_from_results
from ..tools.file_system import create_directory, write_text_file


logger = logging.getLogger(__name__)


def run_rank(
    result_files: Sequence[str],
    metric: Metric,
    alpha: float = settings.DEFAULT_ALPHA,
    out_dir: Optional[str] = None,
    pretty: bool = False,
) -> Dict[str, Any]:
    """
    Average significant ranks across networks. Writes ``means_<metric>.tsv``
    (per-network means, closed by the average rank row), ``ranks_<metric>.tsv``
    (input of ``compare``) and ``scores_<metric>.tsv`` when ``out_dir`` is set.
    """
    files: List[str] = []
    for entry in result_files:
        # A directory stands for every results file below it
        files.extend(list_results(entry) if pathlib.Path(entry).is_dir() else [entry])
    if not files:
        raise InputError("No results files given")
    matrices = [trial_matrix_from_results(load_results(p)) for p in files]
    table = rank_table(matrices, metric, alpha)
    rendered = {
        "means": render_means_table(table, pretty),
        "ranks": render_rank_table(table),
        "scores": render_scores_table(table),
    }
    written: List[str] = []
    if out_dir:
        create_directory(out_dir)
        for kind, text in rendered.items():
            written.append(write_text_file(pathlib.Path(out_dir) / f"{kind}_{metric.value}.tsv", text))
        logger.info("Rank tables written to %s", out_dir)
    return {"table": table, "rendered": rendered, "written": written}


def run_compare(
    rank_file: str,
    adjustment: Adjustment = Adjustment.BHY,
    alpha: float = settings.DEFAULT_ALPHA,
    out: Optional[str] = None,
    pretty: bool = False,
) -> Dict[str, Any]:
    """Pairwise one-tailed comparison of per-network rank samples."""
    path = pathlib.Path(rank_file)
    if not path.exists() or not path.is_file():
        raise InputError(f"Rank file not found: {path}")
    networks, methods, ranks = parse_rank_table(path.read_text(encoding="utf-8"))
    table = pairwise_comparison(methods, ranks, adjustment, alpha)
    text = render_pairwise_table(table, pretty)
    written = write_text_file(out, render_pairwise_table(table)) if out else None
    logger.info("Compared %d method(s) over %d network(s)", len(methods), len(networks))
    return {"table": table, "rendered": text, "written": written}
