from __future__ import annotations

from pathlib import Path
from typing import Union


def write_text_file(path: Union[str, Path], content: str) -> str:
    """
    Write ``content`` to ``path`` (UTF-8, ``\\n`` line endings).

    - Ensures parent directories exist.
    - Raises if the path points to a directory.

    Returns
    -------
    str
        Absolute path of the written file.
    """
    if path is None:
        raise ValueError("path cannot be None")

    path = Path(path).expanduser()

    if path.exists() and path.is_dir():
        raise IsADirectoryError(f"Path points to a directory, not a file: {path}")

    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="\n") as fp:
        fp.write(content)

    return str(path.resolve())


def create_directory(path: Union[str, Path]) -> str:
    """
    Ensure directory exists for ``path``.

    - Creates the directory (and parents) if it does not exist.
    - Raises if a path exists and points to a file.
    """
    if path is None:
        raise ValueError("path cannot be None")

    path = Path(path).expanduser()

    if path.exists() and path.is_file():
        raise NotADirectoryError(f"Path points to a file, not a directory: {path}")

    path.mkdir(parents=True, exist_ok=True)

    return str(path.resolve())


def sibling_path(path: Union[str, Path], suffix: str) -> Path:
    """``data/foo.tsv`` + ``.labels.tsv`` -> ``data/foo.labels.tsv``."""
    path = Path(path)
    return path.with_name(f"{path.stem}{suffix}")
