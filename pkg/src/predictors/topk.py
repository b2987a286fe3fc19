from __future__ import annotations
from typing import Iterable, List, Tuple

import numpy as np

from .candidates import ScoreChunk


def top_candidates(chunks: Iterable[ScoreChunk], top_n: int) -> List[Tuple[int, int, float]]:
    """
    Streaming top-n over scored chunks: ordered by score descending, then
    (source, target) ascending. Zero scores are never reported.
    """
    if top_n <= 0:
        return []
    best_s = np.zeros(0, dtype=np.float64)
    best_i = np.zeros(0, dtype=np.int64)
    best_j = np.zeros(0, dtype=np.int64)
    for chunk in chunks:
        keep = chunk.scores > 0
        if not keep.any():
            continue
        s = np.concatenate([best_s, chunk.scores[keep]])
        i = np.concatenate([best_i, chunk.sources[keep]])
        j = np.concatenate([best_j, chunk.targets[keep]])
        order = np.lexsort((j, i, -s))[:top_n]
        best_s, best_i, best_j = s[order], i[order], j[order]
    return list(zip(best_i.tolist(), best_j.tolist(), best_s.tolist()))
