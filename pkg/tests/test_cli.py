"""CLI contract: verbs, exit codes, file emission, reproducibility."""

import json

import numpy as np
import pytest

from conftest import HAWK_DOVE
from safegames import HRep, MixedStrategy, contains, portfolio
from safegames.cli import EXIT_INFEASIBLE, EXIT_INPUT, EXIT_OK, main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestExitCodes:
    def test_success(self, capsys, bimatrix_file):
        code, out, _ = run_cli(capsys, "maximin", "--game", str(bimatrix_file))
        assert code == EXIT_OK
        assert json.loads(out)["value"] == pytest.approx(-33.479, abs=0.01)

    def test_unknown_flag_is_input_error(self, capsys, bimatrix_file):
        code, _, err = run_cli(capsys, "maximin", "--game", str(bimatrix_file), "--nope")
        assert code == EXIT_INPUT
        assert "error" in err

    def test_missing_file_is_input_error(self, capsys, tmp_path):
        code, _, err = run_cli(capsys, "maximin", "--game", str(tmp_path / "no.json"))
        assert code == EXIT_INPUT

    def test_malformed_game_is_input_error(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text('{"A": [[1, 2], [3]]}')
        code, _, err = run_cli(capsys, "maximin", "--game", str(bad))
        assert code == EXIT_INPUT

    def test_unattainable_requirement_is_infeasible(self, capsys, bimatrix_file):
        code, _, err = run_cli(
            capsys, "malice-attack", "--game", str(bimatrix_file), "--phi", "50"
        )
        assert code == EXIT_INFEASIBLE
        assert "infeasible" in err

    def test_theta_out_of_range_is_input_error(self, capsys, bimatrix_file):
        code, _, _ = run_cli(
            capsys, "malice-defend", "--game", str(bimatrix_file), "--theta", "1.5"
        )
        assert code == EXIT_INPUT

    def test_svg_unavailable_for_value_verbs(self, capsys, bimatrix_file):
        code, _, _ = run_cli(
            capsys, "maximin", "--game", str(bimatrix_file), "--format", "svg"
        )
        assert code == EXIT_INPUT

    @pytest.mark.parametrize(
        "content",
        [
            "not json at all",
            '{"B": [[1, 2], [3, 4]]}',
            '{"A": [[1, "x"], [2, 3]]}',
            '{"A": [[1, 2, 3], [4, 5, 6]]}',
        ],
    )
    def test_malformed_inputs_always_exit_one(self, capsys, tmp_path, content):
        path = tmp_path / "broken.json"
        path.write_text(content)
        code, _, _ = run_cli(capsys, "safe-space", "--game", str(path), "--phi", "0")
        assert code == EXIT_INPUT


class TestVerbOutputs:
    def test_malice_defend_with_theta(self, capsys, bimatrix_file):
        code, out, _ = run_cli(
            capsys, "malice-defend", "--game", str(bimatrix_file), "--theta", "0.22"
        )
        assert code == EXIT_OK
        body = json.loads(out)
        assert body["value"] == pytest.approx(-31.73, abs=0.02)
        assert np.allclose(body["strategy"]["weights"], [0.54, 0.0, 0.46], atol=0.01)

    def test_malice_attack_with_phi(self, capsys, bimatrix_file):
        code, out, _ = run_cli(
            capsys, "malice-attack", "--game", str(bimatrix_file), "--phi", "-53.9"
        )
        body = json.loads(out)
        assert body["value_cap"] == pytest.approx(-31.73, abs=0.02)

    def test_safe_space_grid_csv(self, capsys, hawk_dove_file, tmp_path):
        out_path = tmp_path / "slices.csv"
        code, _, _ = run_cli(
            capsys,
            "safe-space",
            "--game",
            str(hawk_dove_file),
            "--phi-grid",
            "5",
            "--format",
            "csv",
            "--out",
            str(out_path),
        )
        assert code == EXIT_OK
        lines = out_path.read_text().strip().split("\n")
        assert lines[0] == "phi,support,vertex,x1,x2"
        assert len(lines) > 5

    def test_boundary_sweep_svg(self, capsys, hawk_dove_file, tmp_path):
        out_path = tmp_path / "boundary.svg"
        code, _, _ = run_cli(
            capsys,
            "boundary-sweep",
            "--game",
            str(hawk_dove_file),
            "--phi-grid",
            "21",
            "--format",
            "svg",
            "--out",
            str(out_path),
        )
        assert code == EXIT_OK
        assert out_path.read_text().startswith("<svg ")

    def test_safe_space_full_support_caps_at_maximin(self, capsys, three_type_file):
        code, out, _ = run_cli(
            capsys,
            "safe-space",
            "--game",
            str(three_type_file),
            "--phi-grid",
            "101",
        )
        assert code == EXIT_OK
        body = json.loads(out)
        maximin = body["maximin_value"]
        assert maximin == pytest.approx(6.2415, abs=0.02)
        full_support_phis = [
            s["phi"] for s in body["slices"] if s["support"] == [0, 1, 2]
        ]
        assert full_support_phis  # the sweep reaches the maximin threshold
        assert max(full_support_phis) <= maximin + 1e-9

    def test_simulate_csv_trajectory(self, capsys, hawk_dove_file):
        code, out, _ = run_cli(
            capsys,
            "simulate",
            "--game",
            str(hawk_dove_file),
            "--phi",
            "0",
            "--N",
            "50",
            "--seed",
            "11",
            "--format",
            "csv",
        )
        assert code == EXIT_OK
        lines = out.strip().split("\n")
        assert lines[0] == "round,type,frequency,mean_fitness"
        assert len(lines) >= 3


class TestReproducibility:
    def test_identical_runs_write_identical_bytes(self, capsys, hawk_dove_file, tmp_path):
        first = tmp_path / "a.json"
        second = tmp_path / "b.json"
        for path in (first, second):
            code, _, _ = run_cli(
                capsys,
                "simulate",
                "--game",
                str(hawk_dove_file),
                "--phi",
                "5",
                "--N",
                "500",
                "--seed",
                "42",
                "--mode",
                "stoch",
                "--sigma",
                "[[75, 15], [15, 25]]",
                "--out",
                str(path),
            )
            assert code == EXIT_OK
        assert first.read_bytes() == second.read_bytes()

    def test_run_record_written(self, capsys, hawk_dove_file, tmp_path):
        out_path = tmp_path / "run.json"
        run_cli(
            capsys,
            "boundary-sweep",
            "--game",
            str(hawk_dove_file),
            "--phi-grid",
            "5",
            "--out",
            str(out_path),
        )
        record = json.loads((out_path.parent / "run.json.run.json").read_text())
        assert set(record) == {"inputs", "outputs", "timestamp", "tool_version"}
        assert record["outputs"]["path"] == str(out_path)

    def test_missing_seed_is_recorded_in_output(self, capsys, hawk_dove_file):
        code, out, _ = run_cli(
            capsys, "simulate", "--game", str(hawk_dove_file), "--phi", "0", "--N", "20"
        )
        assert code == EXIT_OK
        assert isinstance(json.loads(out)["seed"], int)


class TestRoundTrip:
    def test_emitted_strategy_revalidates(self, capsys, bimatrix_game, bimatrix_file):
        _, out, _ = run_cli(capsys, "maximin", "--game", str(bimatrix_file))
        body = json.loads(out)
        strategy = MixedStrategy(np.array(body["strategy"]["weights"]), "column")
        folio = portfolio(bimatrix_game, strategy)
        assert folio.worst() == pytest.approx(body["value"], abs=1e-6)

    def test_emitted_vertices_revalidate(self, capsys, hawk_dove_file):
        _, out, _ = run_cli(
            capsys, "safe-space", "--game", str(hawk_dove_file), "--phi", "8"
        )
        body = json.loads(out)
        for s in body["slices"]:
            idx = s["support"]
            k = len(idx)
            region = HRep(
                dim=k,
                ineq_matrix=np.vstack([np.eye(k), HAWK_DOVE[np.ix_(idx, idx)]]),
                ineq_rhs=np.concatenate([np.zeros(k), np.full(k, s["phi"])]),
                eq_matrix=np.ones((1, k)),
                eq_rhs=np.ones(1),
            )
            for vertex in s["vertices"]:
                assert contains(region, np.array(vertex)[idx], 1e-6)
