"""Bimatrix game primitives.

Conventions used throughout the package: the row player mixes over the m rows
of her payoff matrix A and earns A[i, j] when the column player picks column j;
the column player mixes over the n columns of his matrix B and earns B[i, j].
A row mixture p has portfolio A^T p (its payoff against each pure column); a
column mixture q has portfolio B q. Risk aversion rescales a portfolio's worst
entry onto [0, 1] between the matrix minimum and the player's maximin value.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Literal, Optional

import numpy as np

from .errors import DegenerateScale, DimensionMismatch, OutOfRange

Side = Literal["row", "column"]

#: Tolerance for probability-vector validation; LP output carries float noise.
PROB_TOL = 1e-9


def _frozen(arr: np.ndarray) -> np.ndarray:
    out = np.array(arr, dtype=float)
    out.setflags(write=False)
    return out


def as_payoff_matrix(values, name: str = "matrix") -> np.ndarray:
    """Validate and return a finite 2-d float array with at least one entry."""
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise DimensionMismatch(f"{name} must be a nonempty 2-d matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise OutOfRange(f"{name} must contain only finite entries")
    return arr


@dataclass(frozen=True)
class Game:
    """A finite two-player normal-form game.

    ``A[i, j]`` is the row player's payoff and ``B[i, j]`` the column player's
    when row i meets column j. Both matrices are m x n with finite entries.
    """

    A: np.ndarray
    B: np.ndarray
    row_labels: Optional[tuple[str, ...]] = None
    col_labels: Optional[tuple[str, ...]] = None

    def __post_init__(self):
        a = as_payoff_matrix(self.A, "A")
        b = as_payoff_matrix(self.B, "B")
        if a.shape != b.shape:
            raise DimensionMismatch(f"A has shape {a.shape} but B has shape {b.shape}")
        object.__setattr__(self, "A", _frozen(a))
        object.__setattr__(self, "B", _frozen(b))
        for attr, length in (("row_labels", a.shape[0]), ("col_labels", a.shape[1])):
            labels = getattr(self, attr)
            if labels is not None:
                labels = tuple(str(x) for x in labels)
                if len(labels) != length:
                    raise DimensionMismatch(f"{attr} must have length {length}")
                object.__setattr__(self, attr, labels)

    @property
    def shape(self) -> tuple[int, int]:
        return self.A.shape

    @classmethod
    def symmetric(cls, A, **kwargs) -> "Game":
        """Build a symmetric game from a square row matrix, with B = A^T."""
        a = as_payoff_matrix(A, "A")
        if a.shape[0] != a.shape[1]:
            raise DimensionMismatch("symmetric games need a square matrix")
        return cls(a, a.T, **kwargs)

    def swap_sides(self) -> "Game":
        """Return the same game with the players' roles exchanged."""
        return Game(self.B.T, self.A.T, self.col_labels, self.row_labels)

    def strategy_length(self, side: Side) -> int:
        return self.shape[0] if side == "row" else self.shape[1]

    def own_matrix(self, side: Side) -> np.ndarray:
        """The payoff matrix of the player on ``side``."""
        return self.A if side == "row" else self.B


@dataclass(frozen=True)
class MixedStrategy:
    """A probability vector over one player's pure strategies.

    Entries in [-PROB_TOL, 0) are clamped to zero and the vector is
    renormalized; anything farther from the simplex is rejected.
    """

    weights: np.ndarray
    side: Side

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        if w.ndim != 1 or w.size < 1:
            raise DimensionMismatch("strategy weights must be a nonempty vector")
        if not np.all(np.isfinite(w)):
            raise OutOfRange("strategy weights must be finite")
        if np.any(w < -PROB_TOL):
            raise OutOfRange(f"strategy weights must be >= -{PROB_TOL}, got min {w.min()}")
        w = np.maximum(w, 0.0)
        total = w.sum()
        if abs(total - 1.0) > PROB_TOL:
            raise OutOfRange(f"strategy weights must sum to 1 within {PROB_TOL}, got {total}")
        if self.side not in ("row", "column"):
            raise OutOfRange(f"side must be 'row' or 'column', got {self.side!r}")
        object.__setattr__(self, "weights", _frozen(w / total))

    def __len__(self) -> int:
        return self.weights.size

    @classmethod
    def pure(cls, index: int, size: int, side: Side) -> "MixedStrategy":
        w = np.zeros(size)
        w[index] = 1.0
        return cls(w, side)


@dataclass(frozen=True)
class Portfolio:
    """A player's payoffs against each opponent pure strategy."""

    values: np.ndarray
    owner: Side

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.ndim != 1 or v.size < 1:
            raise DimensionMismatch("portfolio values must be a nonempty vector")
        object.__setattr__(self, "values", _frozen(v))

    def worst(self) -> float:
        return float(self.values.min())


@dataclass(frozen=True)
class RiskProfile:
    """A risk-aversion threshold together with the payoff requirement it encodes.

    ``phi = min(M) + theta * (v - min(M))`` where M is the owning player's
    payoff matrix and v their maximin value.
    """

    theta: float
    phi: float

    def __post_init__(self):
        if not 0.0 <= self.theta <= 1.0:
            raise OutOfRange(f"theta must lie in [0, 1], got {self.theta}")
        if not np.isfinite(self.phi):
            raise OutOfRange("phi must be finite")


def side_maximin(game: Game, side: Side) -> float:
    """Maximin value of the player on ``side`` (their highest guaranteed payoff)."""
    from .linprog import column_maximin, row_maximin  # deferred: linprog imports this module

    if side == "row":
        return row_maximin(game.A).value
    return column_maximin(game.B).value


def portfolio(game: Game, strategy: MixedStrategy) -> Portfolio:
    """Payoff vector of ``strategy`` against every opponent pure strategy.

    Row mixtures map to A^T p (length n); column mixtures to B q (length m).
    """
    expected = game.strategy_length(strategy.side)
    if len(strategy) != expected:
        raise DimensionMismatch(
            f"{strategy.side} strategy must have length {expected}, got {len(strategy)}"
        )
    if strategy.side == "row":
        return Portfolio(game.A.T @ strategy.weights, "row")
    return Portfolio(game.B @ strategy.weights, "column")


def risk_aversion(port: Portfolio, game: Game, maximin_value: float) -> float:
    """Rescale a portfolio's worst entry onto [0, 1].

    0 marks the matrix-wide worst payoff, 1 the maximin guarantee. Only
    meaningful when min(M) < maximin value; otherwise no improvement over the
    worst outcome exists and DegenerateScale is raised.
    """
    matrix = game.own_matrix(port.owner)
    lo = float(matrix.min())
    if not lo < maximin_value:
        raise DegenerateScale(
            f"risk scale requires min(M)={lo} < maximin value={maximin_value}"
        )
    return (port.worst() - lo) / (maximin_value - lo)


def threshold_to_requirement(
    theta: float, game: Game, side: Side, maximin_value: Optional[float] = None
) -> float:
    """Convert a risk-aversion threshold into a minimum payoff requirement.

    Returns ``phi = min(M) + theta * (v - min(M))``. The maximin value is
    computed with the LP solver when not supplied.
    """
    if not 0.0 <= theta <= 1.0:
        raise OutOfRange(f"theta must lie in [0, 1], got {theta}")
    v = side_maximin(game, side) if maximin_value is None else float(maximin_value)
    lo = float(game.own_matrix(side).min())
    if not lo < v:
        raise DegenerateScale(f"risk scale requires min(M)={lo} < maximin value={v}")
    return lo + theta * (v - lo)


def requirement_to_threshold(
    phi: float, game: Game, side: Side, maximin_value: Optional[float] = None
) -> float:
    """Inverse of :func:`threshold_to_requirement` on the same scale."""
    v = side_maximin(game, side) if maximin_value is None else float(maximin_value)
    lo = float(game.own_matrix(side).min())
    if not lo < v:
        raise DegenerateScale(f"risk scale requires min(M)={lo} < maximin value={v}")
    return (phi - lo) / (v - lo)


def risk_profile(
    game: Game,
    side: Side,
    *,
    theta: Optional[float] = None,
    phi: Optional[float] = None,
    maximin_value: Optional[float] = None,
) -> RiskProfile:
    """Build a consistent (theta, phi) pair from either coordinate."""
    if (theta is None) == (phi is None):
        raise OutOfRange("exactly one of theta and phi must be given")
    if theta is not None:
        return RiskProfile(theta, threshold_to_requirement(theta, game, side, maximin_value))
    return RiskProfile(requirement_to_threshold(phi, game, side, maximin_value), float(phi))


#: Fallback sentinel for games whose payoffs are small relative to 1e6.
DEFAULT_SENTINEL_LOW = -1e6


def default_sentinel_low(game: Game) -> float:
    """A finite stand-in for minus infinity, strictly below any payoff in play."""
    return -(float(np.abs(game.A).max()) + float(np.abs(game.B).max()) + 1e6)


def malice_utility(
    pi_row: float,
    pi_col: float,
    phi: float,
    *,
    g: Optional[Callable[[float], float]] = None,
    sentinel_low: Optional[float] = None,
    game: Optional[Game] = None,
) -> float:
    """Decision value of a partially malicious column player.

    Below the requirement ``phi`` the outcome is worth ``sentinel_low`` (a
    finite sentinel in place of minus infinity, so arithmetic stays total);
    at or above it the player scores the opponent's payoff through the
    strictly decreasing ``g``, by default g(x) = -x.
    """
    if sentinel_low is None:
        sentinel_low = default_sentinel_low(game) if game is not None else DEFAULT_SENTINEL_LOW
    if pi_col < phi:
        return float(sentinel_low)
    if g is None:
        return -float(pi_row)
    return float(g(pi_row))


def verify_nash(game: Game, p: MixedStrategy, q: MixedStrategy, tol: float = 1e-9) -> bool:
    """Check that (p, q) is a Nash equilibrium within ``tol``.

    True iff no pure deviation improves either player: every pure-row payoff
    against q is at most p's payoff + tol, and symmetrically for columns.
    """
    if p.side != "row" or q.side != "column":
        raise DimensionMismatch("verify_nash expects a row strategy and a column strategy")
    m, n = game.shape
    if len(p) != m or len(q) != n:
        raise DimensionMismatch(
            f"strategies must have lengths {m} and {n}, got {len(p)} and {len(q)}"
        )
    row_payoffs = game.A @ q.weights          # payoff of each pure row vs q
    col_payoffs = game.B.T @ p.weights        # payoff of each pure column vs p
    row_value = float(p.weights @ row_payoffs)
    col_value = float(q.weights @ col_payoffs)
    return bool(row_payoffs.max() <= row_value + tol and col_payoffs.max() <= col_value + tol)
