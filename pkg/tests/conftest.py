from __future__ import annotations
from typing import Callable

import numpy as np
import pytest

from src.graph.core import DirectedGraph
from src.graph.io import parse_edge_list


G1_TEXT = "1 2\n1 3\n2 3\n3 4\n"


@pytest.fixture
def g1() -> DirectedGraph:
    """1→2, 1→3, 2→3, 3→4. Labels "1".."4" get ids 0..3."""
    return parse_edge_list(G1_TEXT)


def random_digraph(seed: int, n: int, p: float) -> DirectedGraph:
    rng = np.random.default_rng(seed)
    mask = rng.random((n, n)) < p
    np.fill_diagonal(mask, False)
    rows, cols = np.nonzero(mask)
    return DirectedGraph(n, zip(rows.tolist(), cols.tolist()))


@pytest.fixture
def make_graph() -> Callable[[int, int, float], DirectedGraph]:
    return random_digraph


@pytest.fixture
def g1_file(tmp_path):
    path = tmp_path / "g1.txt"
    path.write_text(G1_TEXT, encoding="utf-8")
    return path
