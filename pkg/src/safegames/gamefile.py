"""Game-file ingestion and emission.

A game file is a JSON object ``{"rows": m, "cols": n, "A": [[...]], "B":
[[...]], "labels": {...}}``. ``B`` may be omitted for symmetric games, in
which case it is taken to be the transpose of ``A`` (so the file's matrix is
square). ``labels`` optionally maps ``"rows"``/``"cols"`` to strategy names.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Mapping

import numpy as np

from .errors import DimensionError, ParseError
from .games import Game


def _matrix_from(value: Any, name: str) -> np.ndarray:
    if not isinstance(value, list) or not value:
        raise ParseError(f"field {name!r} must be a nonempty list of rows")
    widths = set()
    for i, row in enumerate(value):
        if not isinstance(row, list) or not row:
            raise DimensionError(f"field {name!r} row {i} must be a nonempty list")
        widths.add(len(row))
        for j, cell in enumerate(row):
            if isinstance(cell, bool) or not isinstance(cell, (int, float)):
                raise ParseError(f"field {name!r} entry [{i}][{j}] must be a number")
    if len(widths) != 1:
        raise DimensionError(f"field {name!r} is ragged: row lengths {sorted(widths)}")
    arr = np.asarray(value, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ParseError(f"field {name!r} must contain only finite numbers")
    return arr


def game_from_dict(data: Mapping[str, Any]) -> Game:
    """Validate a parsed game object and build a Game.

    Expands the symmetric shorthand (``A`` only) to B = A^T.
    """
    if not isinstance(data, Mapping):
        raise ParseError("game file must contain a JSON object")
    if "A" not in data:
        raise ParseError("game file is missing the required field 'A'")
    a = _matrix_from(data["A"], "A")
    if "B" in data and data["B"] is not None:
        b = _matrix_from(data["B"], "B")
        if b.shape != a.shape:
            raise DimensionError(f"'A' has shape {a.shape} but 'B' has shape {b.shape}")
    else:
        if a.shape[0] != a.shape[1]:
            raise DimensionError(
                f"'B' may be omitted only for square 'A' (symmetric game), got shape {a.shape}"
            )
        b = a.T
    m, n = a.shape
    for key, expect in (("rows", m), ("cols", n)):
        if key in data and data[key] is not None:
            declared = data[key]
            if not isinstance(declared, int) or isinstance(declared, bool):
                raise ParseError(f"field {key!r} must be an integer")
            if declared != expect:
                raise DimensionError(f"field {key!r} is {declared} but 'A' has {expect}")
    row_labels = col_labels = None
    labels = data.get("labels")
    if labels is not None:
        if not isinstance(labels, Mapping):
            raise ParseError("field 'labels' must be an object")
        if "rows" in labels:
            row_labels = tuple(str(x) for x in labels["rows"])
            if len(row_labels) != m:
                raise DimensionError(f"labels.rows must have {m} entries")
        if "cols" in labels:
            col_labels = tuple(str(x) for x in labels["cols"])
            if len(col_labels) != n:
                raise DimensionError(f"labels.cols must have {n} entries")
    return Game(a, b, row_labels, col_labels)


def load_game(path) -> Game:
    """Read and validate a game file from disk."""
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read game file {p}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{p}: invalid JSON at line {exc.lineno} column {exc.colno}") from exc
    return game_from_dict(data)


def game_to_dict(game: Game, symmetric_shorthand: bool = False) -> dict:
    """Serialize a Game back to the file schema."""
    m, n = game.shape
    out: dict[str, Any] = {"rows": m, "cols": n, "A": game.A.tolist()}
    if not (symmetric_shorthand and np.array_equal(game.B, game.A.T)):
        out["B"] = game.B.tolist()
    labels = {}
    if game.row_labels is not None:
        labels["rows"] = list(game.row_labels)
    if game.col_labels is not None:
        labels["cols"] = list(game.col_labels)
    if labels:
        out["labels"] = labels
    return out
