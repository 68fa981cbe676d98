"""Convex polytopes in half-space (H) and vertex (V) form.

``h_to_v`` enumerates the extreme points of a bounded region given by
inequalities ``c . x >= r`` and equalities ``c . x = r``. Equalities are
eliminated first by re-parameterizing their affine solution set, then a
floating-point double description pass runs over the homogenization of the
reduced region: half-spaces are inserted one at a time while the extreme rays
of the growing cone are maintained, with adjacency decided by a rank test on
shared active constraints. Rays whose homogenizing coordinate vanishes are
recession directions and signal an unbounded input.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import (
    DimensionMismatch,
    InfeasibleRegion,
    OutOfRange,
    UnboundedRegion,
)
from .linprog import LinearProgram, solve_lp

#: L-infinity tolerance below which two vertices are considered the same point.
DEDUPE_TOL = 1e-7

_LIN_TOL = 1e-9    # lineality elimination threshold on unit vectors
_RAY_TOL = 1e-9    # sign classification threshold for unit rays
_ACT_TOL = 1e-8    # activity threshold for the adjacency rank test
_T_TOL = 1e-9      # homogenizing coordinate below this marks a recession ray


def _rows(mat, rhs, dim: int, label: str) -> tuple[np.ndarray, np.ndarray]:
    if mat is None:
        return np.zeros((0, dim)), np.zeros(0)
    m = np.asarray(mat, dtype=float)
    if m.size == 0:
        return np.zeros((0, dim)), np.zeros(0)
    m = m.reshape(-1, dim) if m.ndim == 1 else m
    r = np.asarray(rhs, dtype=float).reshape(-1)
    if m.ndim != 2 or m.shape[1] != dim:
        raise DimensionMismatch(f"{label} rows must have {dim} coefficients")
    if r.shape != (m.shape[0],):
        raise DimensionMismatch(f"{label} rhs must have length {m.shape[0]}")
    if not (np.all(np.isfinite(m)) and np.all(np.isfinite(r))):
        raise OutOfRange(f"{label} constraints must be finite")
    return m, r


@dataclass(frozen=True)
class HRep:
    """A polyhedron as the intersection of ``c . x >= r`` half-spaces and
    ``c . x = r`` hyperplanes in dimension ``dim``."""

    dim: int
    ineq_matrix: Optional[np.ndarray] = None
    ineq_rhs: Optional[np.ndarray] = None
    eq_matrix: Optional[np.ndarray] = None
    eq_rhs: Optional[np.ndarray] = None

    def __post_init__(self):
        if self.dim < 1:
            raise DimensionMismatch("dimension must be at least 1")
        gm, gr = _rows(self.ineq_matrix, self.ineq_rhs, self.dim, "inequality")
        em, er = _rows(self.eq_matrix, self.eq_rhs, self.dim, "equality")
        object.__setattr__(self, "ineq_matrix", gm)
        object.__setattr__(self, "ineq_rhs", gr)
        object.__setattr__(self, "eq_matrix", em)
        object.__setattr__(self, "eq_rhs", er)


@dataclass(frozen=True)
class VRep:
    """A polytope as the list of its extreme points, one per row."""

    vertices: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.vertices, dtype=float)
        if v.size == 0:
            v = v.reshape(0, v.shape[1] if v.ndim == 2 else 0)
        if v.ndim != 2:
            raise DimensionMismatch("vertices must form a 2-d array (one vertex per row)")
        object.__setattr__(self, "vertices", v)

    def __len__(self) -> int:
        return self.vertices.shape[0]

    @property
    def is_empty(self) -> bool:
        return len(self) == 0


def probability_simplex(dim: int) -> HRep:
    """The standard probability simplex: x >= 0, sum(x) = 1."""
    return HRep(
        dim=dim,
        ineq_matrix=np.eye(dim),
        ineq_rhs=np.zeros(dim),
        eq_matrix=np.ones((1, dim)),
        eq_rhs=np.ones(1),
    )


def contains(h: HRep, x, tol: float = 1e-9) -> bool:
    """Whether ``x`` satisfies every constraint of ``h`` within ``tol``."""
    point = np.asarray(x, dtype=float).reshape(-1)
    if point.shape != (h.dim,):
        raise DimensionMismatch(f"point must have dimension {h.dim}, got {point.shape}")
    if h.eq_matrix.shape[0] and np.abs(h.eq_matrix @ point - h.eq_rhs).max() > tol:
        return False
    if h.ineq_matrix.shape[0] and (h.ineq_matrix @ point - h.ineq_rhs).min() < -tol:
        return False
    return True


def _affine_parameterization(h: HRep):
    """Solve out equalities: returns (x0, basis) with the feasible affine set
    {x0 + basis @ y}, or None when the equalities are inconsistent."""
    d = h.dim
    E, f = h.eq_matrix, h.eq_rhs
    if E.shape[0] == 0:
        return np.zeros(d), np.eye(d)
    x0, _, _, _ = np.linalg.lstsq(E, f, rcond=None)
    if np.abs(E @ x0 - f).max() > 1e-9 * (1.0 + np.abs(f).max()):
        return None
    _, s, vh = np.linalg.svd(E)
    rank = int(np.sum(s > 1e-10 * max(1.0, s[0] if s.size else 1.0)))
    basis = vh[rank:].T  # orthonormal null-space directions, one per column
    return x0, basis


def _unit(v: np.ndarray) -> np.ndarray:
    return v / np.linalg.norm(v)


def _dd_extreme_rays(W: np.ndarray) -> tuple[list[np.ndarray], list[np.ndarray]]:
    """Double description over the cone {z : W z >= 0}.

    Returns (lineality basis, extreme rays). Rays are unit vectors. Starts
    from the whole space and inserts one half-space at a time; while a
    lineality direction crosses the new hyperplane it is used to re-project
    everything onto it, otherwise the classic positive/negative ray pairing
    applies with rank-based adjacency.
    """
    D = W.shape[1]
    lineality: list[np.ndarray] = [np.eye(D)[i] for i in range(D)]
    rays: list[np.ndarray] = []
    inserted: list[np.ndarray] = []

    def adjacent(p: np.ndarray, q: np.ndarray) -> bool:
        need = D - len(lineality) - 2
        if need < 0:
            return True
        active = [w for w in inserted if abs(w @ p) <= _ACT_TOL and abs(w @ q) <= _ACT_TOL]
        if len(active) < need:
            return False
        if need == 0:
            return True
        return np.linalg.matrix_rank(np.array(active), tol=1e-8) >= need

    for w in W:
        dots = [w @ l for l in lineality]
        pivot = int(np.argmax(np.abs(dots))) if dots else -1
        if pivot >= 0 and abs(dots[pivot]) > _LIN_TOL:
            l0 = lineality.pop(pivot)
            a0 = w @ l0
            lineality = [_unit(l - (w @ l) / a0 * l0) for l in lineality]
            rays = [_unit(r - (w @ r) / a0 * l0) for r in rays]
            rays.append(_unit(l0 if a0 > 0 else -l0))
        else:
            signs = [w @ r for r in rays]
            neg = [r for r, s in zip(rays, signs) if s < -_RAY_TOL]
            if neg:
                pos = [r for r, s in zip(rays, signs) if s > _RAY_TOL]
                zero = [r for r, s in zip(rays, signs) if abs(s) <= _RAY_TOL]
                fresh = [
                    _unit((w @ p) * q - (w @ q) * p)
                    for p, q in itertools.product(pos, neg)
                    if adjacent(p, q)
                ]
                rays = _dedupe_rays(pos + zero + fresh)
        inserted.append(w)
    return lineality, rays


def _dedupe_rays(rays: list[np.ndarray]) -> list[np.ndarray]:
    kept: list[np.ndarray] = []
    for r in rays:
        if not any(np.abs(r - k).max() <= 1e-9 for k in kept):
            kept.append(r)
    return kept


def _region_is_empty(A: np.ndarray, b: np.ndarray) -> bool:
    """Feasibility of {y : A y >= b} with free y, via a phase-1 LP on y = u - w."""
    k, d = A.shape
    lp = LinearProgram(
        objective=np.zeros(2 * d),
        ineq_matrix=np.hstack([A, -A]),
        ineq_rhs=b,
        ineq_directions=[">="] * k,
    )
    return solve_lp(lp).status == "infeasible"


def h_to_v(h: HRep) -> VRep:
    """Enumerate the extreme points of a bounded H-representation.

    Returns the empty VRep when the region is empty. Raises UnboundedRegion
    when a recession direction is detected, which in this package means the
    caller forgot the probability-simplex constraints.
    """
    param = _affine_parameterization(h)
    if param is None:
        return VRep(np.zeros((0, h.dim)))
    x0, basis = param
    d_red = basis.shape[1]

    A_full, b_full = h.ineq_matrix, h.ineq_rhs
    if d_red == 0:
        if contains(h, x0, tol=1e-9):
            return VRep(x0.reshape(1, -1))
        return VRep(np.zeros((0, h.dim)))

    A_red = A_full @ basis
    b_red = b_full - A_full @ x0
    keep_rows = []
    for i in range(A_red.shape[0]):
        norm = np.linalg.norm(A_red[i])
        if norm <= 1e-12:
            if b_red[i] > 1e-9:  # constant constraint that can never hold
                return VRep(np.zeros((0, h.dim)))
            continue
        keep_rows.append(i)
    A_red = A_red[keep_rows]
    b_red = b_red[keep_rows]

    if A_red.shape[0] == 0:
        raise UnboundedRegion("no effective inequality constraints remain")
    if _region_is_empty(A_red, b_red):
        return VRep(np.zeros((0, h.dim)))

    # homogenize: rays z = (y, t) of {A y >= b t, t >= 0}
    D = d_red + 1
    hom = np.zeros((A_red.shape[0] + 1, D))
    hom[0, -1] = 1.0
    hom[1:, :-1] = A_red
    hom[1:, -1] = -b_red
    hom[1:] /= np.linalg.norm(hom[1:], axis=1, keepdims=True)

    lineality, rays = _dd_extreme_rays(hom)
    if lineality:
        raise UnboundedRegion("feasible set contains a line")

    points = []
    for r in rays:
        t = r[-1]
        if t <= _T_TOL:
            raise UnboundedRegion("feasible set contains a recession ray")
        points.append(x0 + basis @ (r[:-1] / t))
    vertices = _dedupe_points(points)
    vertices = [v for v in vertices if contains(h, v, tol=1e-6)]
    return VRep(np.array(vertices).reshape(len(vertices), h.dim))


def _dedupe_points(points: Iterable[np.ndarray]) -> list[np.ndarray]:
    kept: list[np.ndarray] = []
    for p in points:
        if not any(np.abs(p - k).max() <= DEDUPE_TOL for k in kept):
            kept.append(p)
    return kept


def _solve_over(h: HRep, objective: np.ndarray, pins: list[tuple[np.ndarray, float]]):
    """Minimize ``objective . x`` over ``h`` with extra pinned equalities.

    Free variables are handled by the x = u - w split, so the H-representation
    need not include nonnegativity."""
    d = h.dim
    eq_m = [h.eq_matrix] if h.eq_matrix.shape[0] else []
    eq_r = [h.eq_rhs] if h.eq_matrix.shape[0] else []
    for coeff, value in pins:
        eq_m.append(coeff.reshape(1, -1))
        eq_r.append(np.array([value]))
    eq_matrix = np.vstack(eq_m) if eq_m else None
    eq_rhs = np.concatenate(eq_r) if eq_r else None
    lp = LinearProgram(
        objective=np.concatenate([objective, -objective]),
        ineq_matrix=np.hstack([h.ineq_matrix, -h.ineq_matrix]) if h.ineq_matrix.shape[0] else None,
        ineq_rhs=h.ineq_rhs if h.ineq_matrix.shape[0] else None,
        ineq_directions=[">="] * h.ineq_matrix.shape[0] if h.ineq_matrix.shape[0] else None,
        eq_matrix=np.hstack([eq_matrix, -eq_matrix]) if eq_matrix is not None else None,
        eq_rhs=eq_rhs,
    )
    sol = solve_lp(lp)
    if sol.status == "infeasible":
        raise InfeasibleRegion("the region has no feasible point")
    if sol.status == "unbounded":
        raise UnboundedRegion("objective is unbounded over the region")
    x = sol.point[:d] - sol.point[d:]
    return x, float(objective @ x)


def extreme_points_by_lp(h: HRep, objectives: Sequence) -> list[np.ndarray]:
    """For each objective, the vertex of ``h`` minimizing it.

    Ties on the optimal face are broken by lexicographic refinement: the
    optimal value is pinned as an equality and each coordinate is minimized in
    turn, which lands on a unique extreme point deterministically.
    """
    results = []
    for obj in objectives:
        c = np.asarray(obj, dtype=float).reshape(-1)
        if c.shape != (h.dim,):
            raise DimensionMismatch(f"objective must have dimension {h.dim}")
        pins: list[tuple[np.ndarray, float]] = []
        x, value = _solve_over(h, c, pins)
        pins.append((c, value))
        for axis in range(h.dim):
            e = np.zeros(h.dim)
            e[axis] = 1.0
            x, value = _solve_over(h, e, pins)
            pins.append((e, value))
        results.append(x)
    return results
