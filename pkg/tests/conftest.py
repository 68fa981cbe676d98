import json
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from safegames import Game

# 4x3 bimatrix game with a known column maximin of about -33.479 and a row
# maximin of 28 (row 4 guarantees 28 against the first column).
BIMATRIX_A = np.array(
    [
        [-62.0, 44.0, 62.0],
        [-42.0, 4.0, 62.0],
        [24.0, -77.0, -68.0],
        [28.0, 80.0, 53.0],
    ]
)
BIMATRIX_B = np.array(
    [
        [13.0, -33.0, -63.0],
        [-76.0, -90.0, 34.0],
        [-30.0, -63.0, -39.0],
        [85.0, -33.0, -24.0],
    ]
)

# Hawk-Dove: type 1 is the hawk. Column maximin is exactly 15 at the pure
# dove strategy.
HAWK_DOVE = np.array([[-25.0, 45.0], [5.0, 15.0]])

# Per-interaction payoff standard deviations for the stochastic Hawk-Dove
# runs: hawk-hawk 75, hawk-dove 15, dove-hawk 15, dove-dove 25.
HAWK_DOVE_SIGMA = np.array([[75.0, 15.0], [15.0, 25.0]])

# Symmetric 3x3 game with full-support maximin 1292/207 (about 6.2415) and
# five Nash equilibria, two of them mixed with rational weights.
THREE_TYPE = np.array(
    [
        [64.0, -58.0, 50.0],
        [-34.0, 51.0, -66.0],
        [75.0, -1.0, 11.0],
    ]
)
THREE_TYPE_MAXIMIN = 1292.0 / 207.0


@pytest.fixture
def bimatrix_game() -> Game:
    return Game(BIMATRIX_A, BIMATRIX_B)


@pytest.fixture
def hawk_dove_game() -> Game:
    return Game.symmetric(HAWK_DOVE)


@pytest.fixture
def three_type_game() -> Game:
    return Game.symmetric(THREE_TYPE)


@pytest.fixture
def bimatrix_file(tmp_path) -> Path:
    path = tmp_path / "bimatrix.json"
    path.write_text(
        json.dumps(
            {"rows": 4, "cols": 3, "A": BIMATRIX_A.tolist(), "B": BIMATRIX_B.tolist()}
        )
    )
    return path


@pytest.fixture
def hawk_dove_file(tmp_path) -> Path:
    path = tmp_path / "hawk_dove.json"
    path.write_text(json.dumps({"A": HAWK_DOVE.tolist()}))
    return path


@pytest.fixture
def three_type_file(tmp_path) -> Path:
    path = tmp_path / "three_type.json"
    path.write_text(json.dumps({"A": THREE_TYPE.tolist()}))
    return path


def random_game_matrix(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    return rng.uniform(-100.0, 100.0, size=(rows, cols))
