"""Worst-case reasoning for finite two-player games.

Three connected toolkits share one LP core:

* maximin/minimax values and strategies of bimatrix games,
* defensive play against partially malicious opponents (players who insist on
  a minimum payoff and then turn spiteful), via vertex enumeration of the
  opponent's restricted mixture polytope,
* safe spaces of independent truncation selection (population states where no
  type's fitness falls below the survival threshold), both analytically and
  by agent-based simulation.

The package is wrapped by a FastAPI service (``safegames.service``) and a CLI
(``safegames.cli``) that acts as a thin client over the same handlers.
"""

from .errors import (
    DegenerateScale,
    DimensionError,
    DimensionMismatch,
    EmptyRestriction,
    InfeasibleRegion,
    InfeasibleRequirement,
    Not2x2,
    NumericalFailure,
    OutOfRange,
    ParseError,
    SafegamesError,
    UnboundedRegion,
)
from .gamefile import game_from_dict, game_to_dict, load_game
from .games import (
    Game,
    MixedStrategy,
    Portfolio,
    RiskProfile,
    default_sentinel_low,
    malice_utility,
    portfolio,
    requirement_to_threshold,
    risk_aversion,
    risk_profile,
    side_maximin,
    threshold_to_requirement,
    verify_nash,
)
from .linprog import (
    LinearProgram,
    LpSolution,
    MaximinResult,
    column_maximin,
    row_maximin,
    solve_lp,
)
from .malice import (
    DefensiveSolution,
    RestrictedStrategySet,
    generalized_maximin,
    generalized_minimax,
    restricted_vertices,
)
from .polytope import HRep, VRep, contains, extreme_points_by_lp, h_to_v, probability_simplex
from .sim import (
    FitnessModel,
    SimConfig,
    SimResult,
    fitness_distribution,
    run,
    run_deterministic,
    run_stochastic,
    step_deterministic,
)
from .truncation import (
    PopulationState,
    SafeSpaceSlice,
    safe_space_all_supports,
    safe_space_full_support,
    shifted_matrix,
    threshold_grid,
    two_by_two_boundary,
)

__version__ = "0.1.0"

__all__ = [
    "DegenerateScale",
    "DefensiveSolution",
    "DimensionError",
    "DimensionMismatch",
    "EmptyRestriction",
    "FitnessModel",
    "Game",
    "HRep",
    "InfeasibleRegion",
    "InfeasibleRequirement",
    "LinearProgram",
    "LpSolution",
    "MaximinResult",
    "MixedStrategy",
    "Not2x2",
    "NumericalFailure",
    "OutOfRange",
    "ParseError",
    "PopulationState",
    "Portfolio",
    "RestrictedStrategySet",
    "RiskProfile",
    "SafeSpaceSlice",
    "SafegamesError",
    "SimConfig",
    "SimResult",
    "UnboundedRegion",
    "VRep",
    "column_maximin",
    "contains",
    "default_sentinel_low",
    "extreme_points_by_lp",
    "fitness_distribution",
    "game_from_dict",
    "game_to_dict",
    "generalized_maximin",
    "generalized_minimax",
    "h_to_v",
    "load_game",
    "malice_utility",
    "portfolio",
    "probability_simplex",
    "requirement_to_threshold",
    "restricted_vertices",
    "risk_aversion",
    "risk_profile",
    "row_maximin",
    "run",
    "run_deterministic",
    "run_stochastic",
    "safe_space_all_supports",
    "safe_space_full_support",
    "shifted_matrix",
    "side_maximin",
    "solve_lp",
    "step_deterministic",
    "threshold_grid",
    "threshold_to_requirement",
    "two_by_two_boundary",
    "verify_nash",
]
