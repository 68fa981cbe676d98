"""Model-in, model-out solver handlers.

Plain functions shared by the HTTP endpoints and the CLI. They raise the
package's exception types; each front end maps those onto its own error
surface (HTTP status codes or process exit codes).
"""

from __future__ import annotations

import secrets
from typing import Optional

import numpy as np

from .. import sim as simulation
from ..errors import DimensionMismatch
from ..games import (
    Game,
    portfolio,
    requirement_to_threshold,
    side_maximin,
    threshold_to_requirement,
)
from ..linprog import column_maximin, row_maximin
from ..malice import generalized_maximin, generalized_minimax, restricted_vertices
from ..truncation import (
    safe_space_all_supports,
    safe_space_full_support,
    threshold_grid,
    two_by_two_boundary,
)
from .schemas import (
    BoundaryPoint,
    BoundarySweepRequest,
    BoundarySweepResponse,
    MaliceAttackResponse,
    MaliceDefendResponse,
    MaliceRequest,
    MaximinRequest,
    MaximinResponse,
    PopulationStatePayload,
    SafeSpaceRequest,
    SafeSpaceResponse,
    SafeSpaceSlicePayload,
    SimulateRequest,
    SimulateResponse,
    StrategyPayload,
)


def solve_maximin(request: MaximinRequest) -> MaximinResponse:
    game = request.game.to_game()
    result = row_maximin(game.A) if request.side == "row" else column_maximin(game.B)
    folio = portfolio(game, result.strategy)
    return MaximinResponse(
        side=request.side,
        value=result.value,
        strategy=StrategyPayload(side=request.side, weights=result.strategy.weights.tolist()),
        portfolio=folio.values.tolist(),
    )


def _resolve_requirement(request: MaliceRequest, game: Game) -> tuple[float, Optional[float]]:
    """The malicious player's payoff requirement, plus theta when derivable."""
    maximin_value = side_maximin(game, request.side)
    if request.theta is not None:
        phi = threshold_to_requirement(request.theta, game, request.side, maximin_value)
        return phi, request.theta
    phi = float(request.phi)
    lo = float(game.own_matrix(request.side).min())
    theta = None
    if lo < maximin_value and lo <= phi <= maximin_value:
        theta = requirement_to_threshold(phi, game, request.side, maximin_value)
    return phi, theta


def solve_malice_defend(request: MaliceRequest) -> MaliceDefendResponse:
    game = request.game.to_game()
    phi, theta = _resolve_requirement(request, game)
    restricted = restricted_vertices(game, phi, request.side)
    solution = generalized_maximin(game, restricted)
    return MaliceDefendResponse(
        malicious_side=request.side,
        defender_side=solution.strategy.side,
        phi=phi,
        theta=theta,
        value=solution.guaranteed_value,
        strategy=StrategyPayload(
            side=solution.strategy.side, weights=solution.strategy.weights.tolist()
        ),
        baseline_maximin=solution.baseline_maximin,
        restricted_vertex_count=len(restricted),
    )


def solve_malice_attack(request: MaliceRequest) -> MaliceAttackResponse:
    game = request.game.to_game()
    phi, theta = _resolve_requirement(request, game)
    strategy, cap = generalized_minimax(game, phi, request.side)
    return MaliceAttackResponse(
        malicious_side=request.side,
        phi=phi,
        theta=theta,
        value_cap=cap,
        strategy=StrategyPayload(side=strategy.side, weights=strategy.weights.tolist()),
    )


def _symmetric_row_matrix(request) -> np.ndarray:
    game = request.game.to_game()
    if game.shape[0] != game.shape[1]:
        raise DimensionMismatch("truncation analysis needs a square row matrix")
    return game.A


def compute_safe_space(request: SafeSpaceRequest) -> SafeSpaceResponse:
    matrix = _symmetric_row_matrix(request)
    maximin_value = column_maximin(matrix).value
    if request.phi is not None:
        phis = [float(request.phi)]
    else:
        phis = [float(p) for p in threshold_grid(matrix, request.grid)]
    slices = []
    for phi in phis:
        if request.all_supports:
            found = safe_space_all_supports(matrix, phi)
        else:
            full = safe_space_full_support(matrix, phi)
            found = [] if full.is_empty else [full]
        for s in found:
            slices.append(
                SafeSpaceSlicePayload(
                    support=list(s.support),
                    phi=s.phi,
                    vertices=s.vertices.tolist(),
                    maximin_of_support=s.maximin_of_support,
                )
            )
    return SafeSpaceResponse(maximin_value=maximin_value, phi_values=phis, slices=slices)


def compute_boundary(request: BoundarySweepRequest) -> BoundarySweepResponse:
    matrix = _symmetric_row_matrix(request)
    if request.phi_values is not None:
        phis = [float(p) for p in request.phi_values]
    else:
        phis = [float(p) for p in threshold_grid(matrix, request.grid)]
    points = [
        BoundaryPoint(phi=phi, x_max=None if np.isnan(x) else float(x))
        for phi, x in two_by_two_boundary(matrix, phis)
    ]
    return BoundarySweepResponse(points=points)


def run_simulation(request: SimulateRequest) -> SimulateResponse:
    matrix = _symmetric_row_matrix(request)
    seed = request.seed if request.seed is not None else secrets.randbits(63)
    config = simulation.SimConfig(
        payoffs=matrix,
        population=request.population,
        phi=request.phi,
        mode=request.mode,
        seed=seed,
        max_rounds=request.max_rounds,
        sigma=np.asarray(request.sigma, dtype=float) if request.sigma is not None else None,
        initial_state=request.initial_state,
        patience=request.patience,
    )
    result = simulation.run(config)
    trajectory = [state.x.tolist() for state in result.trajectory]
    mean_fitness = [(matrix @ state.x).tolist() for state in result.trajectory]
    return SimulateResponse(
        outcome=result.outcome,
        rounds_elapsed=result.rounds_elapsed,
        final_state=PopulationStatePayload(
            frequencies=result.final_state.x.tolist(),
            support=list(result.final_state.support),
        ),
        seed=seed,
        trajectory=trajectory,
        mean_fitness=mean_fitness,
    )
