"""Command-line front end.

A thin client over the service handlers: each verb builds the same pydantic
request model the HTTP API accepts, runs it in-process, and writes the
response as JSON, CSV, or SVG. Exit codes: 0 success, 1 bad input, 2
infeasible model, 3 numerical failure.

Verbs: maximin, malice-defend, malice-attack, safe-space, boundary-sweep,
simulate, serve.
"""

from __future__ import annotations

import argparse
import json
import secrets
import sys
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional

from pydantic import ValidationError

from . import __version__
from .errors import SafegamesError
from .gamefile import load_game
from .output import digest, to_csv, to_json, svg_plot, write_atomic
from .service import handlers
from .service.app import error_code
from .service.schemas import (
    BoundarySweepRequest,
    GamePayload,
    MaliceRequest,
    MaximinRequest,
    SafeSpaceRequest,
    SimulateRequest,
)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INFEASIBLE = 2
EXIT_NUMERICAL = 3

_EXIT_BY_CODE = {"input": EXIT_INPUT, "infeasible": EXIT_INFEASIBLE, "numerical": EXIT_NUMERICAL}

_SIDES = {"row": "row", "col": "column", "column": "column"}
_MODES = {"det": "deterministic", "deterministic": "deterministic",
          "stoch": "stochastic", "stochastic": "stochastic"}

_PLOT_VERBS = {"safe-space", "boundary-sweep", "simulate"}


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse defaults to exit code 2 on bad flags; route that to 1 instead."""

    def error(self, message):
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="safegames", description=__doc__)
    parser.add_argument("--version", action="version", version=f"safegames {__version__}")
    verbs = parser.add_subparsers(dest="verb", required=True)

    def common(sub, *, phi_theta=False, side_default=None, plot=False):
        sub.add_argument("--game", required=True, help="path to a game JSON file")
        if phi_theta:
            group = sub.add_mutually_exclusive_group(required=True)
            group.add_argument("--phi", type=float, help="minimum payoff requirement")
            group.add_argument("--theta", type=float, help="risk-aversion threshold in [0,1]")
        if side_default is not None:
            sub.add_argument("--side", choices=sorted(_SIDES), default=side_default)
        sub.add_argument("--out", help="output path (default: print to stdout)")
        sub.add_argument(
            "--format",
            choices=["json", "csv", "svg"] if plot else ["json", "csv"],
            default="json",
        )

    sub = verbs.add_parser("maximin", help="classical maximin value and strategy")
    common(sub, side_default="col")

    sub = verbs.add_parser(
        "malice-defend",
        help="defensive strategy against a partially malicious opponent "
        "(--side names the malicious player)",
    )
    common(sub, phi_theta=True, side_default="row")

    sub = verbs.add_parser(
        "malice-attack",
        help="the malicious player's own strategy (--side names the malicious player)",
    )
    common(sub, phi_theta=True, side_default="row")

    sub = verbs.add_parser("safe-space", help="truncation-selection safe spaces per support")
    common(sub, plot=True)
    group = sub.add_mutually_exclusive_group(required=True)
    group.add_argument("--phi", type=float, help="a single survival threshold")
    group.add_argument("--phi-grid", type=int, help="number of thresholds to sweep")
    sub.add_argument(
        "--full-support-only", action="store_true", help="skip the sub-support slices"
    )

    sub = verbs.add_parser("boundary-sweep", help="2x2 upper safe-frequency boundary vs threshold")
    common(sub, plot=True)
    sub.add_argument("--phi-grid", type=int, default=101)

    sub = verbs.add_parser("simulate", help="agent-based truncation selection")
    common(sub, plot=True)
    sub.add_argument("--phi", type=float, required=True)
    sub.add_argument("--N", type=int, required=True, help="population size")
    sub.add_argument("--mode", choices=sorted(_MODES), default="det")
    sub.add_argument("--seed", type=int, help="RNG seed (default: fresh entropy, recorded)")
    sub.add_argument("--max-rounds", type=int, default=1000)
    sub.add_argument("--patience", type=int, default=10)
    sub.add_argument(
        "--sigma",
        help="per-interaction stddev matrix for stochastic mode: inline JSON or a path",
    )
    sub.add_argument("--initial-state", help="inline JSON list of initial frequencies")

    sub = verbs.add_parser("serve", help="run the HTTP service")
    sub.add_argument("--host", default="127.0.0.1")
    sub.add_argument("--port", type=int, default=8000)

    return parser


def _load_payload(path: str) -> GamePayload:
    return GamePayload.from_game(load_game(path))


def _inline_json(text: Optional[str], flag: str):
    if text is None:
        return None
    candidate = Path(text)
    try:
        if candidate.is_file():
            text = candidate.read_text()
    except OSError:
        pass
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise _UsageError(f"{flag} must be valid JSON or a JSON file path: {exc}") from exc


def _run_verb(args) -> tuple[dict, dict]:
    """Dispatch one verb; returns (response dict, input parameters dict)."""
    payload = _load_payload(args.game)
    if args.verb == "maximin":
        request = MaximinRequest(game=payload, side=_SIDES[args.side])
        return handlers.solve_maximin(request).model_dump(), request.model_dump()
    if args.verb in ("malice-defend", "malice-attack"):
        request = MaliceRequest(
            game=payload, side=_SIDES[args.side], theta=args.theta, phi=args.phi
        )
        if args.verb == "malice-defend":
            return handlers.solve_malice_defend(request).model_dump(), request.model_dump()
        return handlers.solve_malice_attack(request).model_dump(), request.model_dump()
    if args.verb == "safe-space":
        request = SafeSpaceRequest(
            game=payload,
            phi=args.phi,
            grid=args.phi_grid,
            all_supports=not args.full_support_only,
        )
        return handlers.compute_safe_space(request).model_dump(), request.model_dump()
    if args.verb == "boundary-sweep":
        request = BoundarySweepRequest(game=payload, grid=args.phi_grid)
        return handlers.compute_boundary(request).model_dump(), request.model_dump()
    if args.verb == "simulate":
        seed = args.seed if args.seed is not None else secrets.randbits(63)
        request = SimulateRequest(
            game=payload,
            population=args.N,
            phi=args.phi,
            mode=_MODES[args.mode],
            seed=seed,
            max_rounds=args.max_rounds,
            patience=args.patience,
            sigma=_inline_json(args.sigma, "--sigma"),
            initial_state=_inline_json(args.initial_state, "--initial-state"),
        )
        return handlers.run_simulation(request).model_dump(), request.model_dump()
    raise _UsageError(f"unknown verb {args.verb!r}")


def _render_csv(verb: str, result: dict) -> str:
    if verb == "maximin" or verb.startswith("malice"):
        strategy = result["strategy"]
        return to_csv(
            ["index", "weight"],
            [(i, float(w)) for i, w in enumerate(strategy["weights"])],
        )
    if verb == "safe-space":
        rows = []
        for s in result["slices"]:
            support = "|".join(str(i) for i in s["support"])
            for k, vertex in enumerate(s["vertices"]):
                x1 = float(vertex[0]) if len(vertex) > 0 else float("nan")
                x2 = float(vertex[1]) if len(vertex) > 1 else float("nan")
                rows.append((float(s["phi"]), support, k, x1, x2))
        return to_csv(["phi", "support", "vertex", "x1", "x2"], rows)
    if verb == "boundary-sweep":
        rows = [
            (float(p["phi"]), float("nan") if p["x_max"] is None else float(p["x_max"]))
            for p in result["points"]
        ]
        return to_csv(["phi", "x_max"], rows)
    if verb == "simulate":
        matrix_rows = []
        for rnd, (freqs, fits) in enumerate(zip(result["trajectory"], result["mean_fitness"])):
            for t, (x, f) in enumerate(zip(freqs, fits)):
                matrix_rows.append((rnd, t, float(x), float(f)))
        return to_csv(["round", "type", "frequency", "mean_fitness"], matrix_rows)
    raise _UsageError(f"no CSV rendering for verb {verb!r}")


def _render_svg(verb: str, result: dict) -> str:
    if verb == "safe-space":
        points, colors = [], []
        for s in result["slices"]:
            for vertex in s["vertices"]:
                if len(vertex) >= 2:
                    points.append((float(vertex[0]), float(vertex[1])))
                    colors.append(float(s["phi"]))
        return svg_plot(
            points,
            title="Safe-space vertices (color = threshold)",
            xlabel="frequency of type 1",
            ylabel="frequency of type 2",
            color_values=colors,
        )
    if verb == "boundary-sweep":
        points = [
            (float(p["phi"]), float("nan") if p["x_max"] is None else float(p["x_max"]))
            for p in result["points"]
        ]
        return svg_plot(
            points,
            title="Upper boundary of surviving type-1 frequency",
            xlabel="survival threshold",
            ylabel="max type-1 frequency",
            polyline=True,
        )
    if verb == "simulate":
        points, colors = [], []
        for rnd, freqs in enumerate(result["trajectory"]):
            for t, x in enumerate(freqs):
                points.append((float(rnd), float(x)))
                colors.append(float(t))
        return svg_plot(
            points,
            title="Trajectory (color = type index)",
            xlabel="round",
            ylabel="frequency",
            color_values=colors,
        )
    raise _UsageError(f"--format svg is only available for {sorted(_PLOT_VERBS)}")


def _emit(args, result: dict, params: dict) -> None:
    if args.format == "json":
        text = to_json(result)
    elif args.format == "csv":
        text = _render_csv(args.verb, result)
    else:
        text = _render_svg(args.verb, result)
    if args.out is None:
        sys.stdout.write(text)
        return
    write_atomic(args.out, text)
    record = {
        "inputs": {"digest": digest(params), "parameters": params},
        "outputs": {"path": str(args.out), "sha256": digest(text)},
        "timestamp": datetime.now(timezone.utc).isoformat(),
        "tool_version": __version__,
    }
    write_atomic(str(args.out) + ".run.json", to_json(record))


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT

    if args.verb == "serve":
        import uvicorn

        from .service import app

        uvicorn.run(app, host=args.host, port=args.port)
        return EXIT_OK

    try:
        result, params = _run_verb(args)
        _emit(args, result, params)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValidationError as exc:
        first = exc.errors()[0]
        print(f"error: invalid input: {first['msg']}", file=sys.stderr)
        return EXIT_INPUT
    except SafegamesError as exc:
        code = error_code(exc)
        print(f"error ({code}): {exc}", file=sys.stderr)
        return _EXIT_BY_CODE[code]
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
