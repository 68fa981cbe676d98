"""Strategy computation against, or as, a partially malicious player.

A partially malicious player insists on a minimum payoff ``phi`` for
themselves and, once it is secured, plays to hurt the opponent. Their usable
mixtures form the polytope ``{p in simplex : M^T p >= phi}`` (M being their
own payoff matrix), whose vertices are enumerated here. The defender then
solves a maximin problem restricted to those vertices; the malicious player
solves the matching minimax with the requirement as an extra constraint. The
two optimal values coincide.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, EmptyRestriction, InfeasibleRequirement, NumericalFailure
from .games import Game, MixedStrategy, Side
from .linprog import LinearProgram, column_maximin, solve_lp
from .polytope import HRep, h_to_v

#: Inward slack on the requirement constraint. Keeps the restricted set
#: nonempty when ``phi`` sits exactly at the maximin value, where the exact
#: polytope degenerates to the maximin set and float noise could lose it.
REQUIREMENT_SLACK = 1e-9


@dataclass(frozen=True)
class RestrictedStrategySet:
    """Vertices (one per row) of a malicious player's feasible mixtures."""

    vertices: np.ndarray
    phi: float
    side: Side

    def __post_init__(self):
        v = np.asarray(self.vertices, dtype=float)
        if v.ndim != 2:
            raise DimensionMismatch("vertices must form a 2-d array (one strategy per row)")
        object.__setattr__(self, "vertices", v)

    def __len__(self) -> int:
        return self.vertices.shape[0]

    @property
    def is_empty(self) -> bool:
        return len(self) == 0

    def strategies(self) -> list[MixedStrategy]:
        return [MixedStrategy(row, self.side) for row in self.vertices]


def restricted_vertices(game: Game, phi: float, side: Side) -> RestrictedStrategySet:
    """Vertices of ``{p in simplex : own-portfolio of p >= phi}``.

    For a row-side malicious player the own portfolio is A^T p; for the
    column side it is B q. An empty result means the requirement is
    unattainable for any mixture.
    """
    own = game.own_matrix(side)
    if side == "row":
        dim = game.shape[0]
        requirement_rows = own.T  # one row per opponent pure column
    else:
        dim = game.shape[1]
        requirement_rows = own
    n_req = requirement_rows.shape[0]
    region = HRep(
        dim=dim,
        ineq_matrix=np.vstack([np.eye(dim), requirement_rows]),
        ineq_rhs=np.concatenate([np.zeros(dim), np.full(n_req, phi - REQUIREMENT_SLACK)]),
        eq_matrix=np.ones((1, dim)),
        eq_rhs=np.ones(1),
    )
    return RestrictedStrategySet(h_to_v(region).vertices, float(phi), side)


@dataclass(frozen=True)
class DefensiveSolution:
    """A defender's strategy, its guaranteed payoff against the restricted
    opponent, and the classical maximin baseline it improves on."""

    strategy: MixedStrategy
    guaranteed_value: float
    baseline_maximin: float


def generalized_maximin(game: Game, restricted: RestrictedStrategySet) -> DefensiveSolution:
    """Best defensive mixture against an opponent confined to ``restricted``.

    The worst case over the opponent's polytope is attained at one of its
    vertices, so maximizing the minimum payoff against the vertex strategies
    is exactly a maximin problem for the matrix of per-vertex payoffs. When
    the vertices span the whole simplex this reduces to the classical maximin.
    """
    if restricted.is_empty:
        raise EmptyRestriction(
            "the opponent cannot meet their requirement; fall back to classical maximin"
        )
    if restricted.side == "row":
        if restricted.vertices.shape[1] != game.shape[0]:
            raise DimensionMismatch("restriction does not match the game's row count")
        per_vertex_payoffs = restricted.vertices @ game.B   # rows: opponent vertices
        baseline = column_maximin(game.B)
        defender_side: Side = "column"
    else:
        if restricted.vertices.shape[1] != game.shape[1]:
            raise DimensionMismatch("restriction does not match the game's column count")
        per_vertex_payoffs = restricted.vertices @ game.A.T
        from .linprog import row_maximin

        baseline = row_maximin(game.A)
        defender_side = "row"
    best = column_maximin(per_vertex_payoffs)
    value = best.value
    if value < baseline.value - 1e-6:
        raise NumericalFailure(
            f"defensive value {value} fell below the maximin baseline {baseline.value}"
        )
    strategy = MixedStrategy(best.strategy.weights, defender_side)
    return DefensiveSolution(strategy, value, baseline.value)


def generalized_minimax(game: Game, phi: float, side: Side = "row") -> tuple[MixedStrategy, float]:
    """Malicious player's play: cap the opponent's best response while keeping
    their own portfolio at or above ``phi``.

    Solved directly as an LP with the cap as a free variable (split into a
    difference of nonnegative variables). Returns the malicious mixture and
    the cap value, which equals the matching generalized maximin value.
    """
    if side == "row":
        dim = game.shape[0]
        opponent_payoffs = game.B.T   # one row per opponent pure column
        own_rows = game.A.T
    else:
        dim = game.shape[1]
        opponent_payoffs = game.A
        own_rows = game.B
    n_opp = opponent_payoffs.shape[0]
    n_own = own_rows.shape[0]
    # variables: [p (dim), v_plus, v_minus]
    objective = np.zeros(dim + 2)
    objective[dim] = 1.0
    objective[dim + 1] = -1.0
    cap_block = np.hstack([opponent_payoffs, -np.ones((n_opp, 1)), np.ones((n_opp, 1))])
    req_block = np.hstack([own_rows, np.zeros((n_own, 2))])
    lp = LinearProgram(
        objective=objective,
        sense="minimize",
        ineq_matrix=np.vstack([cap_block, req_block]),
        ineq_rhs=np.concatenate([np.zeros(n_opp), np.full(n_own, phi)]),
        ineq_directions=["<="] * n_opp + [">="] * n_own,
        eq_matrix=np.hstack([np.ones((1, dim)), np.zeros((1, 2))]),
        eq_rhs=np.ones(1),
    )
    sol = solve_lp(lp)
    if sol.status == "infeasible":
        raise InfeasibleRequirement(f"no mixture keeps the own portfolio at or above {phi}")
    if sol.status != "optimal":
        raise NumericalFailure(f"minimax LP ended with status {sol.status}")
    p = MixedStrategy(sol.point[:dim], side)
    value = float(sol.point[dim] - sol.point[dim + 1])
    return p, value
