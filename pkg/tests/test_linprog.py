"""Simplex solver and maximin computations, checked against grid search."""

import numpy as np
import pytest

from conftest import BIMATRIX_A, BIMATRIX_B, HAWK_DOVE, THREE_TYPE, random_game_matrix
from oracles import exact_column_maximin, grid_column_maximin, grid_resolution_bound
from safegames import (
    DimensionMismatch,
    LinearProgram,
    column_maximin,
    row_maximin,
    solve_lp,
)


class TestSolveLp:
    def test_single_variable_box(self):
        lp = LinearProgram(
            objective=np.array([1.0]),
            sense="maximize",
            ineq_matrix=np.array([[1.0]]),
            ineq_rhs=np.array([3.0]),
            ineq_directions=["<="],
        )
        sol = solve_lp(lp)
        assert sol.status == "optimal"
        assert sol.point[0] == pytest.approx(3.0, abs=1e-9)
        assert sol.objective_value == pytest.approx(3.0, abs=1e-9)

    def test_scalar_normalized_form(self):
        # minimize x subject to b x >= 1 lands at 1/b for positive b
        lp = LinearProgram(
            objective=np.array([1.0]),
            ineq_matrix=np.array([[4.0]]),
            ineq_rhs=np.array([1.0]),
        )
        sol = solve_lp(lp)
        assert sol.status == "optimal"
        assert sol.point[0] == pytest.approx(0.25, abs=1e-12)

    def test_infeasible_detected(self):
        lp = LinearProgram(
            objective=np.array([1.0, 1.0]),
            ineq_matrix=np.array([[1.0, 1.0], [-1.0, -1.0]]),
            ineq_rhs=np.array([4.0, -1.0]),
            ineq_directions=[">=", ">="],
        )
        assert solve_lp(lp).status == "infeasible"

    def test_unbounded_detected(self):
        lp = LinearProgram(
            objective=np.array([1.0]),
            sense="maximize",
            ineq_matrix=np.array([[1.0]]),
            ineq_rhs=np.array([1.0]),
            ineq_directions=[">="],
        )
        assert solve_lp(lp).status == "unbounded"

    def test_equalities_and_lower_bounds(self):
        # minimize x + y with x + y = 3, x >= 1, y >= 0.5
        lp = LinearProgram(
            objective=np.array([1.0, 2.0]),
            eq_matrix=np.array([[1.0, 1.0]]),
            eq_rhs=np.array([3.0]),
            lower_bounds=np.array([1.0, 0.5]),
        )
        sol = solve_lp(lp)
        assert sol.status == "optimal"
        assert np.allclose(sol.point, [2.5, 0.5], atol=1e-9)

    def test_degenerate_redundant_rows(self):
        lp = LinearProgram(
            objective=np.array([1.0, 1.0]),
            eq_matrix=np.array([[1.0, 1.0], [2.0, 2.0]]),
            eq_rhs=np.array([1.0, 2.0]),
        )
        sol = solve_lp(lp)
        assert sol.status == "optimal"
        assert sol.objective_value == pytest.approx(1.0, abs=1e-9)

    def test_determinism(self):
        rng = np.random.default_rng(3)
        G = rng.uniform(-5, 5, size=(6, 4))
        h = rng.uniform(-5, 5, size=6)
        lp = LinearProgram(
            objective=rng.uniform(-1, 1, size=4),
            ineq_matrix=G,
            ineq_rhs=h,
            ineq_directions=["<="] * 6,
        )
        first = solve_lp(lp)
        second = solve_lp(lp)
        assert first.status == second.status
        if first.status == "optimal":
            assert np.array_equal(first.point, second.point)

    def test_solution_satisfies_constraints(self):
        rng = np.random.default_rng(4)
        checked = 0
        for _ in range(100):
            n, m = 3, 5
            G = rng.uniform(-5, 5, size=(m, n))
            h = rng.uniform(0.5, 5, size=m)
            lp = LinearProgram(
                objective=rng.uniform(-1, 1, size=n),
                ineq_matrix=G,
                ineq_rhs=h,
                ineq_directions=["<="] * m,
            )
            sol = solve_lp(lp)
            if sol.status != "optimal":
                continue
            checked += 1
            assert (G @ sol.point <= h + 1e-7).all()
            assert (sol.point >= -1e-9).all()
        assert checked > 50


class TestLpDuality:
    def test_primal_equals_dual_on_random_instances(self):
        # min c.x st Ax >= b, x >= 0  against  max b.y st A'y <= c, y >= 0
        rng = np.random.default_rng(5)
        for _ in range(100):
            m, n = rng.integers(2, 5, size=2)
            A = rng.uniform(0.2, 4.0, size=(m, n))
            b = rng.uniform(0.2, 4.0, size=m)
            c = rng.uniform(0.2, 4.0, size=n)
            primal = solve_lp(
                LinearProgram(objective=c, ineq_matrix=A, ineq_rhs=b)
            )
            dual = solve_lp(
                LinearProgram(
                    objective=b,
                    sense="maximize",
                    ineq_matrix=A.T,
                    ineq_rhs=c,
                    ineq_directions=["<="] * n,
                )
            )
            assert primal.status == "optimal" and dual.status == "optimal"
            assert primal.objective_value == pytest.approx(
                dual.objective_value, abs=1e-6
            )


class TestColumnMaximin:
    def test_hawk_dove_value_and_strategy(self):
        result = column_maximin(HAWK_DOVE)
        assert result.value == pytest.approx(15.0, abs=1e-9)
        assert np.allclose(result.strategy.weights, [0.0, 1.0], atol=1e-9)

    def test_bimatrix_column_payoffs(self):
        result = column_maximin(BIMATRIX_B)
        assert result.value == pytest.approx(-33.479, abs=0.02)
        # exact optimum is q = [73/119, 0, 46/119]
        assert np.allclose(
            result.strategy.weights, [73.0 / 119.0, 0.0, 46.0 / 119.0], atol=1e-6
        )

    def test_constant_matrix(self):
        result = column_maximin(np.full((3, 4), 2.5))
        assert result.value == pytest.approx(2.5, abs=1e-9)

    def test_rejects_empty(self):
        with pytest.raises(DimensionMismatch):
            column_maximin(np.zeros((0, 2)))


class TestRowMaximin:
    def test_bimatrix_row_payoffs(self):
        result = row_maximin(BIMATRIX_A)
        assert result.value == pytest.approx(28.0, abs=1e-6)
        assert np.allclose(result.strategy.weights, [0.0, 0.0, 0.0, 1.0], atol=1e-7)

    def test_three_type_value(self):
        assert row_maximin(THREE_TYPE.T).value == pytest.approx(1292.0 / 207.0, abs=1e-9)

    def test_single_row(self):
        result = row_maximin(np.array([[4.0, -2.0, 7.0]]))
        assert result.value == pytest.approx(-2.0, abs=1e-12)
        assert np.allclose(result.strategy.weights, [1.0])


class TestMaximinProperties:
    def test_shift_equivariance(self):
        rng = np.random.default_rng(6)
        for _ in range(100):
            M = random_game_matrix(rng, 3, 3)
            c = rng.uniform(-40.0, 40.0)
            base = column_maximin(M)
            shifted = column_maximin(M + c)
            assert shifted.value == pytest.approx(base.value + c, abs=1e-7)
            # identical optimal portfolios once the shift is removed
            base_portfolio_min = (M @ shifted.strategy.weights).min()
            assert base_portfolio_min == pytest.approx(base.value, abs=1e-7)

    def test_returned_strategy_is_feasible(self):
        rng = np.random.default_rng(8)
        for _ in range(100):
            rows = int(rng.integers(1, 6))
            cols = int(rng.integers(1, 6))
            M = random_game_matrix(rng, rows, cols)
            result = column_maximin(M)
            assert (M @ result.strategy.weights).min() >= result.value - 1e-6

    def test_matches_enumeration_oracle(self):
        rng = np.random.default_rng(9)
        for _ in range(100):
            size = 2 if rng.uniform() < 0.5 else 3
            M = random_game_matrix(rng, size, size)
            assert column_maximin(M).value == pytest.approx(
                exact_column_maximin(M), abs=2e-3
            )

    def test_dominates_grid_within_resolution(self):
        # the 1e-3 grid is a lower bound; the LP may exceed it only by the
        # provable resolution gap of the grid at this payoff scale
        rng = np.random.default_rng(12)
        for _ in range(100):
            size = 2 if rng.uniform() < 0.5 else 3
            M = random_game_matrix(rng, size, size)
            value = column_maximin(M).value
            grid = grid_column_maximin(M, 1e-3)
            assert value >= grid - 1e-9
            assert value <= grid + grid_resolution_bound(M, 1e-3)

    def test_minimax_theorem_on_zero_sum_games(self):
        # the row guarantee of M equals the value the column player concedes
        rng = np.random.default_rng(10)
        for _ in range(100):
            M = random_game_matrix(rng, 3, 4)
            assert row_maximin(M).value == pytest.approx(
                -column_maximin(-M).value, abs=1e-6
            )
