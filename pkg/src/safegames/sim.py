"""Agent-based independent truncation selection.

Deterministic mode works on frequencies: every individual of a type earns the
type's mean fitness (A x)_i, whole types below the threshold are culled, and
survivors are renormalized. Stochastic mode replaces the quadratic
round-robin tournament with its normal approximation: an individual of type i
at state x draws its average payoff from
``Normal((A x)_i, sum_j sigma_ij^2 x_j / N)``, so the noise shrinks like
1/sqrt(N) and the deterministic picture is recovered for large populations.
Culled individuals are replaced by survivor offspring in proportion, with
largest-remainder rounding so the population size is restored exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Optional

import numpy as np

from .errors import DimensionMismatch, OutOfRange
from .games import as_payoff_matrix
from .truncation import PopulationState

Mode = Literal["deterministic", "stochastic"]
Outcome = Literal["equilibrium", "extinction", "max_rounds_reached"]

#: Stochastic culling never strictly stabilizes, so a run is declared settled
#: after this many consecutive rounds with an unchanged composition.
DEFAULT_PATIENCE = 10


@dataclass(frozen=True)
class SimConfig:
    """Inputs of one truncation-selection run.

    ``sigma`` holds the per-interaction payoff standard deviations and is
    required exactly in stochastic mode. ``initial_state`` overrides the
    seeded uniform draw from the simplex.
    """

    payoffs: np.ndarray
    population: int
    phi: float
    mode: Mode = "deterministic"
    seed: int = 0
    max_rounds: int = 1000
    sigma: Optional[np.ndarray] = None
    initial_state: Optional[np.ndarray] = None
    patience: int = DEFAULT_PATIENCE

    def __post_init__(self):
        arr = as_payoff_matrix(self.payoffs, "payoffs")
        if arr.shape[0] != arr.shape[1]:
            raise DimensionMismatch("truncation simulation needs a square matrix")
        object.__setattr__(self, "payoffs", arr)
        if self.population < 2:
            raise OutOfRange("population size must be at least 2")
        if self.max_rounds < 1:
            raise OutOfRange("max_rounds must be at least 1")
        if self.patience < 1:
            raise OutOfRange("patience must be at least 1")
        if self.mode not in ("deterministic", "stochastic"):
            raise OutOfRange(f"mode must be 'deterministic' or 'stochastic', got {self.mode!r}")
        if self.mode == "stochastic":
            if self.sigma is None:
                raise OutOfRange("stochastic mode requires a sigma matrix")
            s = as_payoff_matrix(self.sigma, "sigma")
            if s.shape != arr.shape:
                raise DimensionMismatch("sigma must match the payoff matrix shape")
            if np.any(s < 0):
                raise OutOfRange("sigma entries must be nonnegative")
            object.__setattr__(self, "sigma", s)
        elif self.sigma is not None:
            raise OutOfRange("sigma is only meaningful in stochastic mode")
        if self.initial_state is not None:
            x = np.asarray(self.initial_state, dtype=float)
            if x.shape != (arr.shape[0],):
                raise DimensionMismatch("initial_state must have one frequency per type")
            if np.any(x < 0) or abs(x.sum() - 1.0) > 1e-9:
                raise OutOfRange("initial_state must be a probability vector")
            object.__setattr__(self, "initial_state", x)

    @property
    def num_types(self) -> int:
        return self.payoffs.shape[0]


@dataclass(frozen=True)
class FitnessModel:
    """Per-type fitness means and standard deviations at one state."""

    means: np.ndarray
    stddevs: np.ndarray


@dataclass(frozen=True)
class SimResult:
    trajectory: tuple[PopulationState, ...]
    outcome: Outcome
    final_state: PopulationState
    rounds_elapsed: int

    def frequencies(self) -> np.ndarray:
        """Trajectory as a (rounds+1, types) array."""
        return np.array([s.x for s in self.trajectory])


def fitness_distribution(A, sigma, state: PopulationState, population: int) -> FitnessModel:
    """Normal approximation of one individual's average payoff per type.

    Means are (A x); the variance of type i is ``sum_j sigma_ij^2 x_j / N``
    since an individual meets about ``x_j N`` opponents of type j. Types
    absent from the state contribute nothing.
    """
    arr = as_payoff_matrix(A, "payoffs")
    s = as_payoff_matrix(sigma, "sigma")
    if s.shape != arr.shape:
        raise DimensionMismatch("sigma must match the payoff matrix shape")
    if arr.shape[1] != len(state):
        raise DimensionMismatch("state length must match the payoff matrix")
    if population < 1:
        raise OutOfRange("population size must be positive")
    means = arr @ state.x
    stddevs = np.sqrt((s**2) @ state.x) / np.sqrt(population)
    return FitnessModel(means=means, stddevs=stddevs)


def step_deterministic(A, state: PopulationState, phi: float) -> PopulationState:
    """One culling round on frequencies: drop every type whose fitness is
    below ``phi`` and renormalize the survivors proportionally."""
    arr = as_payoff_matrix(A, "payoffs")
    if arr.shape[1] != len(state):
        raise DimensionMismatch("state length must match the payoff matrix")
    if state.is_extinct:
        return state
    fitness = arr @ state.x
    survives = np.array([i in state.support and fitness[i] >= phi for i in range(len(state))])
    if not survives.any():
        return PopulationState.extinct(len(state))
    x = np.where(survives, state.x, 0.0)
    return PopulationState.from_frequencies(x / x.sum())


def _initial_state(config: SimConfig, rng: np.random.Generator) -> PopulationState:
    if config.initial_state is not None:
        return PopulationState.from_frequencies(config.initial_state)
    return PopulationState.from_frequencies(rng.dirichlet(np.ones(config.num_types)))


def run_deterministic(config: SimConfig) -> SimResult:
    """Iterate deterministic culling until a fixpoint, extinction, or the
    round cap. Whole types disappear irreversibly, so at most one round per
    type is ever needed before a fixpoint."""
    if config.mode != "deterministic":
        raise OutOfRange("run_deterministic requires mode='deterministic'")
    rng = np.random.default_rng(config.seed)
    state = _initial_state(config, rng)
    trajectory = [state]
    outcome: Outcome = "max_rounds_reached"
    rounds = 0
    for _ in range(config.max_rounds):
        rounds += 1
        nxt = step_deterministic(config.payoffs, state, config.phi)
        trajectory.append(nxt)
        if nxt.is_extinct:
            outcome = "extinction"
            state = nxt
            break
        if nxt.support == state.support:
            outcome = "equilibrium"
            state = nxt
            break
        state = nxt
    return SimResult(tuple(trajectory), outcome, state, rounds)


def _largest_remainder(targets: np.ndarray, total: int) -> np.ndarray:
    """Round nonnegative targets to integers summing exactly to ``total``.

    Floors first, then hands the missing units to the largest remainders;
    remainder ties break toward the lowest index for determinism.
    """
    floors = np.floor(targets).astype(np.int64)
    deficit = int(total - floors.sum())
    if deficit > 0:
        order = np.argsort(-(targets - floors), kind="stable")
        floors[order[:deficit]] += 1
    return floors


def run_stochastic(config: SimConfig) -> SimResult:
    """Simulate with per-individual fitness draws.

    Each round every individual samples its average payoff from the normal
    approximation at the current state; individuals below the threshold are
    culled and survivors repopulate proportionally back to N. The run ends at
    total extinction, after ``patience`` rounds of unchanged composition, or
    at the round cap.
    """
    if config.mode != "stochastic":
        raise OutOfRange("run_stochastic requires mode='stochastic'")
    rng = np.random.default_rng(config.seed)
    n = config.num_types
    N = config.population
    start = _initial_state(config, rng)
    counts = _largest_remainder(start.x * N, N)
    state = PopulationState.from_frequencies(counts / N)
    trajectory = [state]
    outcome: Outcome = "max_rounds_reached"
    rounds = 0
    streak = 0
    for _ in range(config.max_rounds):
        rounds += 1
        model = fitness_distribution(config.payoffs, config.sigma, state, N)
        survivors = np.zeros(n, dtype=np.int64)
        for i in range(n):
            if counts[i] > 0:
                draws = rng.normal(model.means[i], model.stddevs[i], size=int(counts[i]))
                survivors[i] = int(np.count_nonzero(draws >= config.phi))
        total = int(survivors.sum())
        if total == 0:
            state = PopulationState.extinct(n)
            trajectory.append(state)
            outcome = "extinction"
            break
        new_counts = _largest_remainder(survivors * (N / total), N)
        if np.array_equal(new_counts, counts):
            streak += 1
        else:
            streak = 0
        counts = new_counts
        state = PopulationState.from_frequencies(counts / N)
        trajectory.append(state)
        if streak >= config.patience:
            outcome = "equilibrium"
            break
    return SimResult(tuple(trajectory), outcome, state, rounds)


def run(config: SimConfig) -> SimResult:
    """Dispatch on the configured mode."""
    if config.mode == "deterministic":
        return run_deterministic(config)
    return run_stochastic(config)
