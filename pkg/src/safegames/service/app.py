"""FastAPI wrapper around the solver handlers.

Package exceptions map onto three error classes: bad input (HTTP 422),
infeasible model (HTTP 409), numerical failure (HTTP 500). Responses carry
the same pydantic models the CLI writes to disk.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..errors import (
    DegenerateScale,
    DimensionMismatch,
    EmptyRestriction,
    InfeasibleRegion,
    InfeasibleRequirement,
    Not2x2,
    OutOfRange,
    ParseError,
    SafegamesError,
    UnboundedRegion,
)
from . import handlers
from .schemas import (
    BoundarySweepRequest,
    BoundarySweepResponse,
    ErrorBody,
    HealthResponse,
    MaliceAttackResponse,
    MaliceDefendResponse,
    MaliceRequest,
    MaximinRequest,
    MaximinResponse,
    SafeSpaceRequest,
    SafeSpaceResponse,
    SimulateRequest,
    SimulateResponse,
)

INPUT_ERRORS = (ParseError, DimensionMismatch, OutOfRange, Not2x2, DegenerateScale)
INFEASIBLE_ERRORS = (EmptyRestriction, InfeasibleRequirement, InfeasibleRegion, UnboundedRegion)


def error_code(exc: SafegamesError) -> str:
    if isinstance(exc, INPUT_ERRORS):
        return "input"
    if isinstance(exc, INFEASIBLE_ERRORS):
        return "infeasible"
    return "numerical"


_HTTP_STATUS = {"input": 422, "infeasible": 409, "numerical": 500}


def create_app() -> FastAPI:
    app = FastAPI(
        title="safegames",
        version=__version__,
        description=(
            "Worst-case game solvers: maximin strategies, defensive play against "
            "partially malicious opponents, and truncation-selection safe spaces."
        ),
    )

    @app.exception_handler(SafegamesError)
    async def _domain_error(_: Request, exc: SafegamesError) -> JSONResponse:
        code = error_code(exc)
        body = ErrorBody(code=code, message=str(exc))
        return JSONResponse(status_code=_HTTP_STATUS[code], content={"error": body.model_dump()})

    @app.get("/healthz", response_model=HealthResponse)
    def healthz() -> HealthResponse:
        return HealthResponse(status="ok", version=__version__)

    @app.post("/maximin", response_model=MaximinResponse)
    def maximin(request: MaximinRequest) -> MaximinResponse:
        return handlers.solve_maximin(request)

    @app.post("/malice/defend", response_model=MaliceDefendResponse)
    def malice_defend(request: MaliceRequest) -> MaliceDefendResponse:
        return handlers.solve_malice_defend(request)

    @app.post("/malice/attack", response_model=MaliceAttackResponse)
    def malice_attack(request: MaliceRequest) -> MaliceAttackResponse:
        return handlers.solve_malice_attack(request)

    @app.post("/safe-space", response_model=SafeSpaceResponse)
    def safe_space(request: SafeSpaceRequest) -> SafeSpaceResponse:
        return handlers.compute_safe_space(request)

    @app.post("/boundary-sweep", response_model=BoundarySweepResponse)
    def boundary_sweep(request: BoundarySweepRequest) -> BoundarySweepResponse:
        return handlers.compute_boundary(request)

    @app.post("/simulate", response_model=SimulateResponse)
    def simulate(request: SimulateRequest) -> SimulateResponse:
        return handlers.run_simulation(request)

    return app


app = create_app()
