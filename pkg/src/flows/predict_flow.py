from __future__ import annotations
import logging
from typing import Any, Dict, List, Optional, Tuple

from ..config import CandidateMode, EdgeListFormat, ScoringOptions
from ..graph.io import read_edge_list
from ..predictors.candidates import default_mode, iter_candidate_chunks
from ..predictors.methods import Method
from ..predictors.topk import top_candidates


logger = logging.getLogger(__name__)


def run_predict(
    graph_path: str,
    method: Method,
    top_n: int,
    options: ScoringOptions,
    fmt: EdgeListFormat = EdgeListFormat.WHITESPACE,
    mode: Optional[CandidateMode] = None,
) -> Dict[str, Any]:
    """
    Score every candidate pair of the observed graph and keep the ``top_n``
    best, labelled with the identifiers of the input file.
    """
    g = read_edge_list(graph_path, fmt)
    mode = mode or default_mode(method)
    logger.info("Scoring %s on %s (n=%d, m=%d, mode=%s)", method.value, graph_path, g.n, g.m, mode.value)
    chunks = iter_candidate_chunks(g, method, options, mode)
    top = top_candidates(chunks, top_n)
    rows: List[Tuple[str, str, float]] = [(g.labels[i], g.labels[j], s) for i, j, s in top]
    return {"method": method.value, "rows": rows}


def render_predictions(rows: List[Tuple[str, str, float]]) -> str:
    return "".join(f"{s}\t{t}\t{score:.6f}\n" for s, t, score in rows)
