"""Signal and matrix serialization.

Signals travel as plain text, one value per line, printed with 12
significant digits; reconstruction matrices as comma-separated grids in
row-major order.  Both formats round-trip losslessly at the precision the
pipeline needs and diff cleanly under version control.
"""

from __future__ import annotations

from pathlib import Path
from typing import IO

import numpy as np

__all__ = ["write_signal", "read_signal", "write_matrix", "read_matrix", "format_value"]


def format_value(x: float) -> str:
    return f"{float(x):.12g}"


def write_signal(values, target: IO[str] | str | Path) -> None:
    text = "\n".join(format_value(v) for v in np.asarray(values, dtype=float)) + "\n"
    if isinstance(target, (str, Path)):
        Path(target).write_text(text, encoding="utf-8")
    else:
        target.write(text)


def read_signal(source: IO[str] | str | Path) -> np.ndarray:
    if isinstance(source, (str, Path)):
        text = Path(source).read_text(encoding="utf-8")
    else:
        text = source.read()
    lines = [line.strip() for line in text.splitlines() if line.strip()]
    try:
        return np.array([float(line) for line in lines])
    except ValueError as exc:
        raise ValueError(f"malformed signal file: {exc}") from None


def write_matrix(entries, target: IO[str] | str | Path) -> None:
    rows = np.asarray(entries, dtype=float)
    if rows.ndim != 2:
        raise ValueError(f"matrix must be two-dimensional, got shape {rows.shape}")
    text = "\n".join(",".join(format_value(v) for v in row) for row in rows) + "\n"
    if isinstance(target, (str, Path)):
        Path(target).write_text(text, encoding="utf-8")
    else:
        target.write(text)


def read_matrix(source: IO[str] | str | Path) -> np.ndarray:
    if isinstance(source, (str, Path)):
        text = Path(source).read_text(encoding="utf-8")
    else:
        text = source.read()
    rows = [line for line in text.splitlines() if line.strip()]
    return np.array([[float(v) for v in row.split(",")] for row in rows])
