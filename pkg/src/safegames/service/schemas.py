"""Pydantic request/response models for the solver service.

The CLI builds these same models and calls the handlers in-process, so the
wire schema is the single description of every solver interface.
"""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..gamefile import game_from_dict
from ..games import Game

SideName = Literal["row", "column"]


class GamePayload(BaseModel):
    """A game in the same schema as the on-disk game file."""

    model_config = ConfigDict(extra="forbid")

    rows: Optional[int] = Field(default=None, ge=1)
    cols: Optional[int] = Field(default=None, ge=1)
    A: list[list[float]]
    B: Optional[list[list[float]]] = None
    labels: Optional[dict[str, list[str]]] = None

    def to_game(self) -> Game:
        return game_from_dict(self.model_dump(exclude_none=True))

    @classmethod
    def from_game(cls, game: Game) -> "GamePayload":
        from ..gamefile import game_to_dict

        return cls(**game_to_dict(game))


class StrategyPayload(BaseModel):
    side: SideName
    weights: list[float]


class MaximinRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    game: GamePayload
    side: SideName = "column"


class MaximinResponse(BaseModel):
    side: SideName
    value: float
    strategy: StrategyPayload
    portfolio: list[float]


class MaliceRequest(BaseModel):
    """Shared inputs of the defend/attack verbs.

    ``side`` names the partially malicious player. Exactly one of ``theta``
    (risk-aversion threshold in [0, 1]) and ``phi`` (payoff requirement) must
    be given; theta is converted on the malicious player's own scale.
    """

    model_config = ConfigDict(extra="forbid")

    game: GamePayload
    side: SideName = "row"
    theta: Optional[float] = Field(default=None, ge=0.0, le=1.0)
    phi: Optional[float] = None

    @model_validator(mode="after")
    def _exactly_one_requirement(self):
        if (self.theta is None) == (self.phi is None):
            raise ValueError("exactly one of 'theta' and 'phi' must be provided")
        return self


class MaliceDefendResponse(BaseModel):
    malicious_side: SideName
    defender_side: SideName
    phi: float
    theta: Optional[float]
    value: float
    strategy: StrategyPayload
    baseline_maximin: float
    restricted_vertex_count: int


class MaliceAttackResponse(BaseModel):
    malicious_side: SideName
    phi: float
    theta: Optional[float]
    value_cap: float
    strategy: StrategyPayload


class SafeSpaceRequest(BaseModel):
    """Safe-space slices of a symmetric game's row matrix.

    Provide ``phi`` for a single threshold or ``grid`` for a sweep of evenly
    spaced thresholds from min(A) to the column maximin value.
    """

    model_config = ConfigDict(extra="forbid")

    game: GamePayload
    phi: Optional[float] = None
    grid: Optional[int] = Field(default=None, ge=2)
    all_supports: bool = True

    @model_validator(mode="after")
    def _exactly_one_mode(self):
        if (self.phi is None) == (self.grid is None):
            raise ValueError("exactly one of 'phi' and 'grid' must be provided")
        return self


class SafeSpaceSlicePayload(BaseModel):
    support: list[int]
    phi: float
    vertices: list[list[float]]
    maximin_of_support: float


class SafeSpaceResponse(BaseModel):
    maximin_value: float
    phi_values: list[float]
    slices: list[SafeSpaceSlicePayload]


class BoundarySweepRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    game: GamePayload
    grid: int = Field(default=101, ge=2)
    phi_values: Optional[list[float]] = None


class BoundaryPoint(BaseModel):
    phi: float
    x_max: Optional[float]  # None marks an empty safe space


class BoundarySweepResponse(BaseModel):
    points: list[BoundaryPoint]


class SimulateRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    game: GamePayload
    population: int = Field(ge=2)
    phi: float
    mode: Literal["deterministic", "stochastic"] = "deterministic"
    seed: Optional[int] = None
    max_rounds: int = Field(default=1000, ge=1)
    sigma: Optional[list[list[float]]] = None
    initial_state: Optional[list[float]] = None
    patience: int = Field(default=10, ge=1)


class PopulationStatePayload(BaseModel):
    frequencies: list[float]
    support: list[int]


class SimulateResponse(BaseModel):
    outcome: Literal["equilibrium", "extinction", "max_rounds_reached"]
    rounds_elapsed: int
    final_state: PopulationStatePayload
    seed: int
    trajectory: list[list[float]]
    mean_fitness: list[list[float]]


class ErrorBody(BaseModel):
    code: Literal["input", "infeasible", "numerical"]
    message: str


class HealthResponse(BaseModel):
    status: Literal["ok"]
    version: str
