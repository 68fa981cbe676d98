"""Dense linear programming and the maximin computations built on it.

The solver is a two-phase tableau simplex over nonnegative variables with
Bland's anti-cycling rule (lowest-index entering column, lowest-index basic
variable on ratio ties), which makes every solve deterministic and finite.
Maximin values are obtained by shifting the payoff matrix so all entries are
at least one, solving ``minimize 1'x subject to Mx >= 1, x >= 0``, and
mapping the solution back with ``q = x / sum(x)`` and
``value = 1 / sum(x) - shift``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Optional, Sequence

import numpy as np

from .errors import DimensionMismatch, NumericalFailure, OutOfRange
from .games import MixedStrategy

FEAS_TOL = 1e-8
OPT_TOL = 1e-9
PIVOT_TOL = 1e-9

Status = Literal["optimal", "infeasible", "unbounded"]


class _Unbounded(Exception):
    pass


@dataclass(frozen=True)
class LinearProgram:
    """min/max ``objective . x`` subject to linear constraints and lower bounds.

    Inequality rows use per-row directions ('>=' or '<='); equality rows hold
    exactly. Variables default to x >= 0; finite per-variable lower bounds may
    be supplied instead.
    """

    objective: np.ndarray
    sense: Literal["minimize", "maximize"] = "minimize"
    ineq_matrix: Optional[np.ndarray] = None
    ineq_rhs: Optional[np.ndarray] = None
    ineq_directions: Optional[Sequence[str]] = None
    eq_matrix: Optional[np.ndarray] = None
    eq_rhs: Optional[np.ndarray] = None
    lower_bounds: Optional[np.ndarray] = None

    def __post_init__(self):
        c = np.asarray(self.objective, dtype=float)
        if c.ndim != 1 or c.size < 1 or not np.all(np.isfinite(c)):
            raise DimensionMismatch("objective must be a finite nonempty vector")
        object.__setattr__(self, "objective", c)
        n = c.size
        if self.sense not in ("minimize", "maximize"):
            raise OutOfRange(f"sense must be 'minimize' or 'maximize', got {self.sense!r}")

        def check_block(mat, rhs, label):
            if mat is None and rhs is None:
                return None, None
            m = np.asarray(mat, dtype=float)
            r = np.asarray(rhs, dtype=float)
            if m.ndim != 2 or m.shape[1] != n:
                raise DimensionMismatch(f"{label} matrix must have {n} columns")
            if r.shape != (m.shape[0],):
                raise DimensionMismatch(f"{label} rhs must have length {m.shape[0]}")
            if not (np.all(np.isfinite(m)) and np.all(np.isfinite(r))):
                raise OutOfRange(f"{label} constraints must be finite")
            return m, r

        gm, gr = check_block(self.ineq_matrix, self.ineq_rhs, "inequality")
        object.__setattr__(self, "ineq_matrix", gm)
        object.__setattr__(self, "ineq_rhs", gr)
        if gm is not None:
            dirs = self.ineq_directions
            if dirs is None:
                dirs = tuple(">=" for _ in range(gm.shape[0]))
            dirs = tuple(dirs)
            if len(dirs) != gm.shape[0] or any(d not in (">=", "<=") for d in dirs):
                raise OutOfRange("ineq_directions must be '>=' or '<=' per inequality row")
            object.__setattr__(self, "ineq_directions", dirs)
        em, er = check_block(self.eq_matrix, self.eq_rhs, "equality")
        object.__setattr__(self, "eq_matrix", em)
        object.__setattr__(self, "eq_rhs", er)
        if self.lower_bounds is not None:
            lb = np.asarray(self.lower_bounds, dtype=float)
            if lb.shape != (n,) or not np.all(np.isfinite(lb)):
                raise DimensionMismatch("lower_bounds must be a finite vector matching objective")
            object.__setattr__(self, "lower_bounds", lb)

    @property
    def num_vars(self) -> int:
        return self.objective.size


@dataclass(frozen=True)
class LpSolution:
    status: Status
    point: Optional[np.ndarray]
    objective_value: float


def _pivot(tableau: np.ndarray, basis: list[int], row: int, col: int) -> None:
    tableau[row] /= tableau[row, col]
    for i in range(tableau.shape[0]):
        if i != row and tableau[i, col] != 0.0:
            tableau[i] -= tableau[i, col] * tableau[row]
    tableau[:, col] = 0.0
    tableau[row, col] = 1.0
    basis[row] = col


def _run_simplex(tableau: np.ndarray, basis: list[int], cap: int) -> None:
    """Minimize in place. Last row holds reduced costs, last column the rhs."""
    m = len(basis)
    ncols = tableau.shape[1] - 1
    for _ in range(cap):
        enter = -1
        for j in range(ncols):
            if tableau[-1, j] < -OPT_TOL:
                enter = j
                break
        if enter < 0:
            return
        col = tableau[:m, enter]
        ratios = [
            (tableau[i, -1] / col[i], i) for i in range(m) if col[i] > PIVOT_TOL
        ]
        if not ratios:
            raise _Unbounded
        rmin = min(r for r, _ in ratios)
        tie = 1e-9 * (1.0 + abs(rmin))
        leave = min((i for r, i in ratios if r <= rmin + tie), key=lambda i: basis[i])
        _pivot(tableau, basis, leave, enter)
    raise NumericalFailure(f"simplex exceeded its iteration cap of {cap}")


def solve_lp(lp: LinearProgram) -> LpSolution:
    """Solve with the two-phase simplex; deterministic for identical input."""
    n = lp.num_vars
    c = lp.objective.copy()
    if lp.sense == "maximize":
        c = -c
    lb = lp.lower_bounds if lp.lower_bounds is not None else np.zeros(n)

    rows = []
    rhs = []
    if lp.ineq_matrix is not None:
        for g, h, d in zip(lp.ineq_matrix, lp.ineq_rhs, lp.ineq_directions):
            # normalize to >= so every inequality gets a surplus column
            if d == "<=":
                rows.append((-g, "ineq"))
                rhs.append(-(h - g @ lb))
            else:
                rows.append((g, "ineq"))
                rhs.append(h - g @ lb)
    if lp.eq_matrix is not None:
        for e, f in zip(lp.eq_matrix, lp.eq_rhs):
            rows.append((e, "eq"))
            rhs.append(f - e @ lb)

    m = len(rows)
    n_ineq = sum(1 for _, kind in rows if kind == "ineq")
    total = n + n_ineq
    A = np.zeros((m, total))
    b = np.array(rhs, dtype=float)
    slack = n
    for i, (g, kind) in enumerate(rows):
        A[i, :n] = g
        if kind == "ineq":
            A[i, slack] = -1.0  # surplus: g.y - s = h'
            slack += 1
    flip = b < 0.0
    A[flip] *= -1.0
    b[flip] *= -1.0

    cap = 50 * (total + m + m)  # generous: 50x the phase-1 variable and row count

    if m == 0:
        # only bounds: optimum sits at the lower bounds (or is unbounded below)
        if np.any(c < -OPT_TOL):
            return LpSolution("unbounded", None, float("-inf" if lp.sense == "minimize" else "inf"))
        x = lb.copy()
        return LpSolution("optimal", x, float(lp.objective @ x))

    # phase 1: minimize the sum of one artificial variable per row
    T = np.zeros((m + 1, total + m + 1))
    T[:m, :total] = A
    T[:m, total : total + m] = np.eye(m)
    T[:m, -1] = b
    basis = list(range(total, total + m))
    T[-1, :total] = -A.sum(axis=0)
    T[-1, -1] = -b.sum()
    try:
        _run_simplex(T, basis, cap)
    except _Unbounded:  # cannot happen: phase-1 objective is bounded below by 0
        raise NumericalFailure("phase-1 simplex reported an unbounded auxiliary problem")
    if -T[-1, -1] > FEAS_TOL:
        return LpSolution("infeasible", None, float("nan"))

    # drive leftover artificials out of the basis; drop redundant rows
    keep = []
    for i in range(m):
        if basis[i] >= total:
            pivot_col = -1
            for j in range(total):
                if abs(T[i, j]) > PIVOT_TOL:
                    pivot_col = j
                    break
            if pivot_col < 0:
                continue  # 0 = 0 row
            _pivot(T, basis, i, pivot_col)
        keep.append(i)

    m2 = len(keep)
    basis2 = [basis[i] for i in keep]
    T2 = np.zeros((m2 + 1, total + 1))
    T2[:m2, :total] = T[keep][:, :total]
    T2[:m2, -1] = T[keep][:, -1]
    c_std = np.zeros(total)
    c_std[:n] = c
    T2[-1, :total] = c_std
    T2[-1, -1] = 0.0
    for i, bi in enumerate(basis2):  # price out the starting basis
        if c_std[bi] != 0.0:
            T2[-1] -= c_std[bi] * T2[i]

    try:
        _run_simplex(T2, basis2, cap)
    except _Unbounded:
        return LpSolution("unbounded", None, float("-inf" if lp.sense == "minimize" else "inf"))

    x_std = np.zeros(total)
    for i, bi in enumerate(basis2):
        x_std[bi] = T2[i, -1]
    x = np.maximum(x_std[:n], 0.0) + lb
    _check_feasible(lp, x)
    return LpSolution("optimal", x, float(lp.objective @ x))


def _check_feasible(lp: LinearProgram, x: np.ndarray) -> None:
    scale = 1.0 + float(np.abs(x).max())
    if lp.ineq_matrix is not None:
        vals = lp.ineq_matrix @ x
        for v, h, d in zip(vals, lp.ineq_rhs, lp.ineq_directions):
            ok = v >= h - FEAS_TOL * scale if d == ">=" else v <= h + FEAS_TOL * scale
            if not ok:
                raise NumericalFailure(f"solution violates an inequality by {abs(v - h):.3e}")
    if lp.eq_matrix is not None:
        res = np.abs(lp.eq_matrix @ x - lp.eq_rhs)
        if res.size and res.max() > FEAS_TOL * scale:
            raise NumericalFailure(f"solution violates an equality by {res.max():.3e}")


@dataclass(frozen=True)
class MaximinResult:
    """A maximin value and one mixture achieving it."""

    value: float
    strategy: MixedStrategy


def column_maximin(matrix) -> MaximinResult:
    """Best guaranteed payoff over mixtures of the columns of ``matrix``.

    Computes ``max over column mixtures q of min entry of (matrix @ q)``. The
    matrix is shifted by ``1 - min`` so the shifted value is positive, which
    lets the normalized LP above recover both value and strategy.
    """
    M = np.asarray(matrix, dtype=float)
    if M.ndim != 2 or M.size == 0:
        raise DimensionMismatch("maximin needs a nonempty 2-d matrix")
    if not np.all(np.isfinite(M)):
        raise OutOfRange("maximin needs finite payoffs")
    m, n = M.shape
    shift = 1.0 - float(M.min())
    shifted = M + shift
    lp = LinearProgram(
        objective=np.ones(n),
        sense="minimize",
        ineq_matrix=shifted,
        ineq_rhs=np.ones(m),
        ineq_directions=[">="] * m,
    )
    sol = solve_lp(lp)
    if sol.status != "optimal":
        raise NumericalFailure(f"maximin LP ended with status {sol.status}")
    total = float(sol.point.sum())
    if total <= 0.0:
        raise NumericalFailure("maximin LP returned a zero vector")
    q = sol.point / total
    value = 1.0 / total - shift
    return MaximinResult(value, MixedStrategy(q, "column"))


def row_maximin(matrix) -> MaximinResult:
    """Best guaranteed payoff over mixtures of the rows of ``matrix``."""
    M = np.asarray(matrix, dtype=float)
    if M.ndim != 2 or M.size == 0:
        raise DimensionMismatch("maximin needs a nonempty 2-d matrix")
    inner = column_maximin(M.T)
    return MaximinResult(inner.value, MixedStrategy(inner.strategy.weights, "row"))
