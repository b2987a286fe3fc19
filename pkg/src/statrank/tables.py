from __future__ import annotations
import math
from typing import List, Sequence, Tuple

import numpy as np

from ..errors import InputError
from .ranks import PairwiseTable, RankTable


AVERAGE_ROW = "Average significant rank"


def _fmt(value: float, digits: int = 3) -> str:
    if isinstance(value, float) and math.isnan(value):
        return ""
    return f"{value:.{digits}f}"


def _render(rows: Sequence[Sequence[str]], pretty: bool) -> str:
    if not pretty:
        return "".join("\t".join(r) + "\n" for r in rows)
    widths = [max(len(r[c]) for r in rows) for c in range(len(rows[0]))]
    lines = []
    for r in rows:
        cells = [r[0].ljust(widths[0])] + [cell.rjust(widths[c]) for c, cell in enumerate(r) if c > 0]
        lines.append("  ".join(cells).rstrip())
    return "\n".join(lines) + "\n"


def render_means_table(table: RankTable, pretty: bool = False) -> str:
    """Mean metric value per network and method, closed by the average significant rank row."""
    rows: List[List[str]] = [["network", *table.methods]]
    for r, network in enumerate(table.networks):
        rows.append([network, *(_fmt(v) for v in table.means[r].tolist())])
    rows.append([AVERAGE_ROW, *(_fmt(v) for v in table.average_ranks.tolist())])
    return _render(rows, pretty)


def render_rank_table(table: RankTable, pretty: bool = False) -> str:
    """Per-network ranks (machine-readable input of ``compare``) plus the average row."""
    rows: List[List[str]] = [["network", *table.methods]]
    for r, network in enumerate(table.networks):
        rows.append([network, *(_fmt(v, 1) for v in table.ranks[r].tolist())])
    rows.append([AVERAGE_ROW, *(_fmt(v) for v in table.average_ranks.tolist())])
    return _render(rows, pretty)


def render_scores_table(table: RankTable, pretty: bool = False) -> str:
    rows: List[List[str]] = [["network", *table.methods]]
    for r, network in enumerate(table.networks):
        rows.append([network, *(str(int(v)) for v in table.scores[r].tolist())])
    return _render(rows, pretty)


def parse_rank_table(text: str) -> Tuple[List[str], List[str], np.ndarray]:
    """Read a rank TSV back into (networks, methods, ranks); the average row is recomputed, not read."""
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if len(lines) < 2:
        raise InputError("Rank table holds no network rows")
    header = lines[0].split("\t")
    methods = header[1:]
    networks: List[str] = []
    values: List[List[float]] = []
    for lineno, line in enumerate(lines[1:], start=2):
        cells = line.split("\t")
        if cells[0] == AVERAGE_ROW:
            continue
        if len(cells) != len(header):
            raise InputError(f"Rank table line {lineno}: expected {len(header)} columns, got {len(cells)}")
        try:
            values.append([float(c) for c in cells[1:]])
        except ValueError as exc:
            raise InputError(f"Rank table line {lineno}: {exc}") from exc
        networks.append(cells[0])
    if not networks:
        raise InputError("Rank table holds no network rows")
    return networks, methods, np.array(values, dtype=np.float64)


def render_pairwise_table(table: PairwiseTable, pretty: bool = False) -> str:
    rows: List[List[str]] = [["method", *table.methods]]
    M = len(table.methods)
    for r in range(M):
        row = [table.methods[r]]
        for c in range(M):
            if c > r:
                row.append(_fmt(float(table.p_values[r, c])))
            elif c < r:
                row.append(table.markers[r][c])
            else:
                row.append("-")
        rows.append(row)
    return _render(rows, pretty)
