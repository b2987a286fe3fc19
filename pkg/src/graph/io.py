from __future__ import annotations
import csv
import io
import logging
from pathlib import Path
from typing import Dict, Iterable, List, Tuple, Union, TextIO

from ..config import EdgeListFormat
from ..errors import EmptyGraphError, GraphParseError
from .core import DirectedGraph


logger = logging.getLogger(__name__)

COMMENT_PREFIXES = ("#", "%")


def _tokenize(stream: TextIO, fmt: EdgeListFormat) -> Iterable[Tuple[int, List[str]]]:
    if fmt is EdgeListFormat.CSV:
        reader = csv.reader(stream)
        for row in reader:
            cells = [cell.strip() for cell in row]
            if not any(cells) or cells[0].startswith(COMMENT_PREFIXES):
                continue
            yield reader.line_num, cells
        return
    for lineno, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line.startswith(COMMENT_PREFIXES):
            continue
        if fmt is EdgeListFormat.TSV:
            yield lineno, [cell.strip() for cell in raw.rstrip("\r\n").split("\t")]
        else:
            yield lineno, line.split()


def parse_edge_list(
    text: Union[str, TextIO],
    fmt: EdgeListFormat = EdgeListFormat.WHITESPACE,
    source_name: str | None = None,
) -> DirectedGraph:
    """
    Parse an edge list into a :class:`DirectedGraph`.

    - Lines starting with ``#`` or ``%`` and blank lines are skipped.
    - The first two tokens of a line are (source, target); extra columns such
      as weights or timestamps are ignored because the model is unweighted.
    - Labels get dense ids in order of first appearance.
    - Self-loops are dropped (their labels are not registered as nodes) and
      duplicate edges collapse to one.

    Raises
    ------
    GraphParseError
        A line holds fewer than two tokens.
    EmptyGraphError
        No edge survives cleaning.
    """
    stream = io.StringIO(text) if isinstance(text, str) else text
    ids: Dict[str, int] = {}
    edges: set[Tuple[int, int]] = set()
    self_loops = 0
    duplicates = 0

    for lineno, tokens in _tokenize(stream, fmt):
        tokens = [t for t in tokens if t]
        if len(tokens) < 2:
            raise GraphParseError(
                f"expected 'source target', got {' '.join(tokens)!r}", line=lineno, path=source_name
            )
        src, dst = tokens[0], tokens[1]
        for label in (src, dst):
            if "\t" in label or "\n" in label or "\r" in label:
                raise GraphParseError(
                    f"label {label!r} holds a tab or line break", line=lineno, path=source_name
                )
        if src == dst:
            self_loops += 1
            continue
        i = ids.setdefault(src, len(ids))
        j = ids.setdefault(dst, len(ids))
        if (i, j) in edges:
            duplicates += 1
            continue
        edges.add((i, j))

    if not edges:
        where = f" in {source_name}" if source_name else ""
        raise EmptyGraphError(f"No edges found{where}")
    if self_loops or duplicates:
        logger.info("Dropped %d self-loop(s) and %d duplicate edge(s)", self_loops, duplicates)

    labels = [""] * len(ids)
    for label, idx in ids.items():
        labels[idx] = label
    return DirectedGraph(len(labels), edges, labels)


def read_edge_list(path: Union[str, Path], fmt: EdgeListFormat = EdgeListFormat.WHITESPACE) -> DirectedGraph:
    path = Path(path).expanduser()
    if not path.exists() or not path.is_file():
        raise GraphParseError(f"Graph file not found: {path}")
    data = path.read_bytes()
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        line = data.count(b"\n", 0, exc.start) + 1
        raise GraphParseError(f"not valid UTF-8 ({exc.reason})", line=line, path=str(path)) from exc
    return parse_edge_list(io.StringIO(text, newline=""), fmt, source_name=str(path))


def serialize_edge_list(g: DirectedGraph) -> str:
    """Canonical text: ``SRC<TAB>DST`` per edge, sorted by (source label, target label)."""
    rows = sorted(g.labeled_edges())
    return "".join(f"{s}\t{t}\n" for s, t in rows)


def serialize_label_map(g: DirectedGraph) -> str:
    return "".join(f"{idx}\t{label}\n" for idx, label in enumerate(g.labels))


def canonicalize(g: DirectedGraph) -> DirectedGraph:
    """Re-parse the canonical text so ids follow the canonical line order."""
    return parse_edge_list(serialize_edge_list(g), EdgeListFormat.TSV)
