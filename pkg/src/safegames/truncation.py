"""Analytic safe spaces of independent truncation selection.

A population mixes pure types of a symmetric game with row matrix A; the
fitness of type i at state x is (A x)_i. Types whose fitness falls below the
survival threshold ``phi`` are culled, so the states where nobody is culled
("safe" states) form, per support, the polytope
``{x in simplex : A x >= phi}`` restricted to that support's subgame. Each
support is handled by crossing out absent rows and columns, converting the
resulting H-representation to vertices, and embedding those back into the
full simplex. The full-support slice collapses to the set of maximin
strategies as phi reaches the column maximin value of A and is empty above it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DimensionMismatch, Not2x2, OutOfRange
from .games import as_payoff_matrix
from .linprog import column_maximin
from .polytope import HRep, VRep, h_to_v

#: Inward slack on the threshold constraint; see malice.REQUIREMENT_SLACK.
THRESHOLD_SLACK = 1e-9

#: Enumerating all supports is exponential; refuse beyond this size.
MAX_TYPES_FOR_SUPPORT_ENUMERATION = 20


@dataclass(frozen=True)
class PopulationState:
    """Type frequencies plus the support (indices with positive frequency).

    The all-zero vector with an empty support is the extinction state; any
    other state must lie on the probability simplex.
    """

    x: np.ndarray
    support: tuple[int, ...]

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float)
        if x.ndim != 1 or x.size < 1:
            raise DimensionMismatch("state frequencies must be a nonempty vector")
        if np.any(x < -1e-9) or not np.all(np.isfinite(x)):
            raise OutOfRange("state frequencies must be finite and nonnegative")
        x = np.maximum(x, 0.0)
        support = tuple(sorted(int(i) for i in self.support))
        on = x > 0.0
        if tuple(np.flatnonzero(on)) != support:
            raise OutOfRange("support must be exactly the indices with positive frequency")
        if support:
            total = x.sum()
            if abs(total - 1.0) > 1e-9:
                raise OutOfRange(f"frequencies must sum to 1 within 1e-9, got {total}")
            x = x / total
        x.setflags(write=False)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "support", support)

    @classmethod
    def from_frequencies(cls, freqs) -> "PopulationState":
        x = np.maximum(np.asarray(freqs, dtype=float), 0.0)
        return cls(x, tuple(np.flatnonzero(x > 0.0)))

    @classmethod
    def extinct(cls, num_types: int) -> "PopulationState":
        return cls(np.zeros(num_types), ())

    @property
    def is_extinct(self) -> bool:
        return not self.support

    def __len__(self) -> int:
        return self.x.size


@dataclass(frozen=True)
class SafeSpaceSlice:
    """Safe states for one support at one threshold, as embedded vertices."""

    support: tuple[int, ...]
    phi: float
    vertices: np.ndarray
    maximin_of_support: float

    def __post_init__(self):
        v = np.asarray(self.vertices, dtype=float)
        object.__setattr__(self, "vertices", v)
        object.__setattr__(self, "support", tuple(int(i) for i in self.support))

    @property
    def is_empty(self) -> bool:
        return self.vertices.shape[0] == 0


def _square(A) -> np.ndarray:
    arr = as_payoff_matrix(A, "payoff matrix")
    if arr.shape[0] != arr.shape[1]:
        raise DimensionMismatch("truncation analysis needs a square matrix")
    return arr


def shifted_matrix(A, phi: float) -> np.ndarray:
    """The payoff matrix with the threshold subtracted from every entry.

    Safe states are exactly the simplex points where the shifted matrix maps
    them into the nonnegative orthant.
    """
    return as_payoff_matrix(A, "payoff matrix") - float(phi)


def _slice_for(sub: np.ndarray, phi: float) -> VRep:
    k = sub.shape[0]
    region = HRep(
        dim=k,
        ineq_matrix=np.vstack([np.eye(k), sub]),
        ineq_rhs=np.concatenate([np.zeros(k), np.full(k, phi - THRESHOLD_SLACK)]),
        eq_matrix=np.ones((1, k)),
        eq_rhs=np.ones(1),
    )
    return h_to_v(region)


def safe_space_full_support(A, phi: float) -> SafeSpaceSlice:
    """Vertices of the full-support safe space ``{x in simplex : A x >= phi}``."""
    arr = _square(A)
    n = arr.shape[0]
    verts = _slice_for(arr, phi).vertices
    return SafeSpaceSlice(
        support=tuple(range(n)),
        phi=float(phi),
        vertices=verts,
        maximin_of_support=column_maximin(arr).value,
    )


def all_supports(num_types: int) -> list[tuple[int, ...]]:
    """Every nonempty support, largest first, then lexicographic."""
    supports = [
        combo
        for size in range(num_types, 0, -1)
        for combo in itertools.combinations(range(num_types), size)
    ]
    return supports


def safe_space_all_supports(A, phi: float) -> list[SafeSpaceSlice]:
    """All nonempty safe-space slices at ``phi``, one per surviving support.

    Each support keeps only its own rows and columns of A; vertices are
    embedded back into the full simplex with zeros elsewhere. The union over
    slices is the overall safe space (it is generally not convex, so slices
    are never merged).
    """
    arr = _square(A)
    n = arr.shape[0]
    if n > MAX_TYPES_FOR_SUPPORT_ENUMERATION:
        raise OutOfRange(
            f"support enumeration is exponential; refusing n > {MAX_TYPES_FOR_SUPPORT_ENUMERATION}"
        )
    slices = []
    for support in all_supports(n):
        sub = arr[np.ix_(support, support)]
        verts = _slice_for(sub, phi).vertices
        if verts.shape[0] == 0:
            continue
        embedded = np.zeros((verts.shape[0], n))
        embedded[:, support] = verts
        slices.append(
            SafeSpaceSlice(
                support=support,
                phi=float(phi),
                vertices=embedded,
                maximin_of_support=column_maximin(sub).value,
            )
        )
    return slices


def threshold_grid(A, count: int = 101) -> np.ndarray:
    """Evenly spaced thresholds from min(A) up to the column maximin value.

    Slices above the maximin value are empty, so sweeps cap there.
    """
    arr = _square(A)
    if count < 2:
        raise OutOfRange("a threshold grid needs at least 2 points")
    return np.linspace(float(arr.min()), column_maximin(arr).value, count)


def two_by_two_boundary(A, phi_grid: Sequence[float]) -> list[tuple[float, float]]:
    """Upper boundary of type-1 frequency in the full-support safe space.

    For each threshold, returns the largest x1 such that both types' fitness
    stays at or above it, clamped to [0, 1]. The binding constraint switches
    rows where the shifted matrix becomes singular. NaN marks thresholds with
    an empty full-support safe space (zero-width data).
    """
    arr = _square(A)
    if arr.shape != (2, 2):
        raise Not2x2(f"boundary analysis needs a 2x2 matrix, got {arr.shape}")
    out: list[tuple[float, float]] = []
    for phi in phi_grid:
        phi = float(phi)
        lo, hi = 0.0, 1.0
        feasible = True
        for i in range(2):
            slope = arr[i, 0] - arr[i, 1]
            offset = arr[i, 1] - phi  # fitness_i(x1) = slope * x1 + offset + phi
            if slope > 0.0:
                lo = max(lo, -offset / slope)
            elif slope < 0.0:
                hi = min(hi, -offset / slope)
            elif offset < 0.0:
                feasible = False
        if not feasible or lo > hi + 1e-12:
            out.append((phi, float("nan")))
        else:
            out.append((phi, float(min(max(hi, 0.0), 1.0))))
    return out
