from __future__ import annotations
import logging
import pathlib
from typing import Any, Dict, Optional

from ..config import EdgeListFormat
from ..graph.core import dataset_stats
from ..graph.io import canonicalize, read_edge_list, serialize_edge_list, serialize_label_map
from ..tools.file_system import sibling_path, write_text_file


logger = logging.getLogger(__name__)


def run_ingest(path: str, fmt: EdgeListFormat, out: Optional[str] = None) -> Dict[str, Any]:
    """
    Parse a raw edge list, write its canonical TSV and label map, and return
    the dataset statistics.
    """
    g = canonicalize(read_edge_list(path, fmt))
    source = pathlib.Path(path)
    if out:
        out_path = pathlib.Path(out)
        labels_path = sibling_path(out_path, ".labels.tsv")
    else:
        out_path = sibling_path(source, ".canonical.tsv")
        labels_path = sibling_path(source, ".labels.tsv")

    written = write_text_file(out_path, serialize_edge_list(g))
    labels_written = write_text_file(labels_path, serialize_label_map(g))
    stats = dataset_stats(g)
    logger.info("Canonical edge list written to %s (n=%d, m=%d)", written, g.n, g.m)
    return {"graph": written, "labels": labels_written, "stats": stats}
