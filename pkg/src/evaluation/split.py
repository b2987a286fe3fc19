from __future__ import annotations
import math
from typing import List, Tuple

import numpy as np

from ..errors import InfeasiblePlanError, UsageError
from ..graph.core import DirectedGraph, Edge


def trial_seed(master_seed: int, trial: int) -> int:
    """
    Seed of one trial, mixed from (master seed, trial index) by numpy's
    SeedSequence hash, so trials can run in any order or process.
    """
    state = np.random.SeedSequence([int(master_seed), int(trial)]).generate_state(1, dtype=np.uint64)
    return int(state[0])


def removal_count(m: int, fraction: float) -> int:
    return max(1, math.floor(fraction * m))


def split_edges(g: DirectedGraph, fraction: float, seed: int) -> Tuple[DirectedGraph, List[Edge]]:
    """
    Hide ``max(1, floor(fraction·m))`` edges drawn uniformly without
    replacement. Returns the training graph and the removed edges (sorted).
    """
    if not 0.0 < fraction < 1.0:
        raise UsageError(f"Test fraction must be in (0, 1), got {fraction}")
    if g.m < 2:
        raise InfeasiblePlanError(f"Need at least 2 edges to split, graph has {g.m}")
    k = removal_count(g.m, fraction)
    rng = np.random.default_rng(seed)
    picked = np.sort(rng.choice(g.m, size=k, replace=False))
    removed = list(zip(g.edge_sources[picked].tolist(), g.out_indices[picked].tolist()))
    return g.without_edges(removed), removed
