"""Command-line front end.

Subcommands read a flat JSON config. A scenario is given either in the reduced
frame (``x_A``, ``x_T``, ``y_T``) or in the realistic plane (``T``, ``A``, ``D``
as ``[x, y]`` pairs), with the speed ratio as ``alpha`` or as the speeds
``v_T``, ``v_A``, ``v_D``.

Exit codes: 0 success (Escape, Boundary, TrivialEscape), 1 input error,
2 Capture (``solve``), 3 failed verification (``check``).
"""
from __future__ import annotations

import argparse
import csv
import itertools
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import game, oracle, region, sim
from .errors import GameError
from .frame import FramePose, RealisticScenario, ReducedState, to_reduced

EXIT_OK, EXIT_INPUT, EXIT_CAPTURE, EXIT_CHECK = 0, 1, 2, 3
SIG = 12
REDUCED_KEYS = ("x_A", "x_T", "y_T")
REALISTIC_KEYS = ("T", "A", "D")


class ConfigError(GameError):
    pass


def fmt(x: float) -> str:
    return format(float(x), f".{SIG}g")


def rounded(obj):
    """Round floats to SIG significant digits; non-finite values become None."""
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return float(fmt(x)) if math.isfinite(x) else None
    if isinstance(obj, dict):
        return {k: rounded(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [rounded(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return rounded(obj.tolist())
    return obj


def emit(obj, stream=None) -> None:
    stream = stream or sys.stdout
    stream.write(json.dumps(rounded(obj), indent=2) + "\n")


@dataclass(frozen=True)
class Scenario:
    state: ReducedState
    pose: FramePose
    realistic: bool
    v_A: float = 1.0


def _number(cfg: dict, key: str) -> float:
    if key not in cfg:
        raise ConfigError(f"missing field {key}")
    v = cfg[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ConfigError(f"field {key} must be a number")
    return float(v)


def _point(cfg: dict, key: str) -> tuple[float, float]:
    if key not in cfg:
        raise ConfigError(f"missing field {key}")
    v = cfg[key]
    if not (isinstance(v, (list, tuple)) and len(v) == 2):
        raise ConfigError(f"field {key} must be an [x, y] pair")
    return float(v[0]), float(v[1])


def _speeds(cfg: dict) -> tuple[float, float, float]:
    if "alpha" in cfg:
        if any(k in cfg for k in ("v_T", "v_A", "v_D")):
            raise ConfigError("give either alpha or v_T, v_A, v_D, not both")
        return _number(cfg, "alpha"), 1.0, 1.0
    if not any(k in cfg for k in ("v_T", "v_A", "v_D")):
        raise ConfigError("missing field alpha")
    v_T, v_A = _number(cfg, "v_T"), _number(cfg, "v_A")
    v_D = _number(cfg, "v_D") if "v_D" in cfg else v_A
    return v_T, v_A, v_D


def load_scenario(cfg: dict) -> Scenario:
    if not isinstance(cfg, dict):
        raise ConfigError("config must be a JSON object")
    reduced = [k for k in REDUCED_KEYS if k in cfg]
    realistic = [k for k in REALISTIC_KEYS if k in cfg]
    if reduced and realistic:
        raise ConfigError("config mixes reduced-frame and realistic-frame keys")
    v_T, v_A, v_D = _speeds(cfg)
    if realistic:
        scen = RealisticScenario(
            _point(cfg, "T"), _point(cfg, "A"), _point(cfg, "D"), v_T, v_A, v_D
        )
        state, pose = to_reduced(scen)
        return Scenario(state, pose, True, v_A)
    x_A, x_T, y_T = (_number(cfg, k) for k in REDUCED_KEYS)
    # building the realistic scenario validates speeds
    RealisticScenario((x_T, y_T), (x_A, 0.0), (-x_A, 0.0), v_T, v_A, v_D)
    pose = FramePose(reflect_y=y_T < 0)
    return Scenario(ReducedState(x_A, x_T, abs(y_T), v_T / v_A), pose, False, v_A)


def read_config(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON: {exc}") from exc


def solution_record(sc: Scenario, sol: game.GameSolution) -> dict:
    rec = {"alpha": sc.state.alpha, "x_A": sc.state.x_A, "x_T": sc.state.x_T, "y_T": sc.state.y_T}
    rec.update(sol.to_dict())
    if sc.realistic and sol.y_star is not None:
        real = {"aimpoint": sc.pose.invert((0.0, sol.y_star))}
        for name in ("heading_T", "heading_A", "heading_D"):
            real[name] = sc.pose.invert_heading(getattr(sol, name))
        if sol.capture_point is not None:
            real["capture_point"] = sc.pose.invert(sol.capture_point)
        rec["realistic"] = real
    return rec


def cmd_solve(cfg: dict, out=None) -> int:
    sc = load_scenario(cfg)
    sol = game.solve(sc.state)
    emit(solution_record(sc, sol), out)
    return EXIT_CAPTURE if sol.outcome is game.Outcome.CAPTURE else EXIT_OK


def _strategy(spec) -> sim.Strategy:
    if spec is None or spec == "optimal" or spec == sim.StrategyKind.OPTIMAL.value:
        return sim.OPTIMAL
    if not isinstance(spec, dict) or "kind" not in spec:
        raise ConfigError(f"bad strategy {spec!r}")
    kind = spec["kind"]
    try:
        kind = sim.StrategyKind(kind)
    except ValueError:
        raise ConfigError(f"unknown strategy kind {kind!r}") from None
    if kind is sim.StrategyKind.OPTIMAL:
        return sim.OPTIMAL
    key = "y" if kind is sim.StrategyKind.FIXED_AIMPOINT else "angle"
    return sim.Strategy(kind, _number(spec, key))


def load_strategies(cfg: dict) -> sim.Strategies:
    s = cfg.get("strategies", {}) or {}
    if not isinstance(s, dict):
        raise ConfigError("strategies must be an object")
    unknown = set(s) - {"target", "attacker", "defender"}
    if unknown:
        raise ConfigError(f"unknown strategy keys {sorted(unknown)}")
    return sim.Strategies(*(_strategy(s.get(k)) for k in ("target", "attacker", "defender")))


def write_csv(path_or_stream, header, rows) -> None:
    def _write(fh):
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([v if isinstance(v, str) else fmt(v) for v in r])

    if isinstance(path_or_stream, (str, os.PathLike)):
        with open(path_or_stream, "w", encoding="utf-8", newline="") as fh:
            _write(fh)
    else:
        _write(path_or_stream)


def cmd_simulate(cfg: dict, csv_path=None, out=None) -> int:
    """Times and lengths in the config are in its own units; the run is done
    in the reduced frame with unit Attacker speed and mapped back."""
    sc = load_scenario(cfg)
    strategies = load_strategies(cfg)
    dt = _number(cfg, "dt") if "dt" in cfg else sim.DEFAULT_DT
    eps = _number(cfg, "eps") if "eps" in cfg else sim.DEFAULT_EPS
    t_max = _number(cfg, "t_max") if "t_max" in cfg else None
    v = sc.v_A
    sol = game.solve(sc.state)
    res = sim.simulate(
        sc.state,
        strategies,
        dt=dt * v,
        eps=eps,
        t_max=None if t_max is None else t_max * v,
        solution=sol,
    )
    traj = res.trajectory.copy()
    traj[:, 0] /= v
    for c in (1, 3, 5):
        traj[:, c : c + 2] = sc.pose.invert(traj[:, c : c + 2])
    point = None if res.intercept_point is None else sc.pose.invert(res.intercept_point)
    record = {
        "event": res.event.value,
        "t_event": res.t_event / v,
        "intercept_point": point,
        "terminal_AT_separation": res.terminal_AT_separation,
        "headings": [sc.pose.invert_heading(h) for h in res.headings],
        "frame": "realistic" if sc.realistic else "reduced",
    }
    all_optimal = all(
        s.kind is sim.StrategyKind.OPTIMAL
        for s in (strategies.target, strategies.attacker, strategies.defender)
    )
    if all_optimal and res.event is not sim.Event.TIMEOUT:
        record["validation"] = sim.validate(res, sol, eps, dt * v).to_dict()
    if csv_path is not None:
        write_csv(csv_path, sim.TRAJECTORY_COLUMNS, traj.tolist())
    emit(record, out)
    return EXIT_OK


def _as_list(cfg: dict, key: str) -> list[float]:
    if key not in cfg:
        raise ConfigError(f"missing field {key}")
    v = cfg[key]
    vals = v if isinstance(v, list) else [v]
    if not vals or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in vals):
        raise ConfigError(f"field {key} must be a number or a list of numbers")
    return [float(x) for x in vals]


def cmd_region(cfg: dict, out_path=None, out_dir=None, out=None) -> int:
    alpha = _number(cfg, "alpha")
    xs = _as_list(cfg, "x_A")
    y_min, y_max = _number(cfg, "y_min"), _number(cfg, "y_max")
    n = int(_number(cfg, "n")) if "n" in cfg else 201
    boundaries = [region.boundary_samples(alpha, x_A, y_min, y_max, n) for x_A in xs]
    if len(boundaries) > 1 and out_dir is None:
        raise ConfigError("several x_A values need --out-dir")
    if out_dir is None:
        write_csv(out_path if out_path else (out or sys.stdout), ("x", "y"), boundaries[0].samples.tolist())
        if out_path:
            emit({"files": [str(out_path)], "asymptote_slope": boundaries[0].asymptote_slope}, out)
        return EXIT_OK
    os.makedirs(out_dir, exist_ok=True)
    files = []
    for b in boundaries:
        path = os.path.join(out_dir, f"region_xA_{fmt(b.x_A)}.csv")
        write_csv(path, ("x", "y"), b.samples.tolist())
        files.append(path)
    emit({"files": files, "asymptote_slope": boundaries[0].asymptote_slope}, out)
    return EXIT_OK


SWEEP_COLUMNS = ("alpha", "x_A", "x_T", "y_T", "alpha_bar", "y_star", "J_star", "outcome")


def _sweep_point(p: tuple[float, float, float, float]) -> list:
    alpha, x_A, x_T, y_T = p
    try:
        sol = game.solve(ReducedState(x_A, x_T, abs(y_T), alpha))
    except GameError as exc:
        return [alpha, x_A, x_T, y_T, "", "", "", f"Error: {exc}"]
    nan = float("nan")
    return [
        alpha,
        x_A,
        x_T,
        y_T,
        sol.alpha_bar,
        nan if sol.y_star is None else sol.y_star,
        nan if sol.J_star is None else sol.J_star,
        sol.outcome.value,
    ]


def sweep_threads() -> int:
    env = os.environ.get("ATDDG_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ConfigError(f"ATDDG_THREADS must be an integer, got {env!r}") from None
    return min(8, os.cpu_count() or 1)


def cmd_sweep(cfg: dict, out_path=None, out=None) -> int:
    grid = list(itertools.product(*(_as_list(cfg, k) for k in ("alpha", "x_A", "x_T", "y_T"))))
    with ThreadPoolExecutor(max_workers=sweep_threads()) as pool:
        rows = list(pool.map(_sweep_point, grid))
    write_csv(out_path if out_path else (out or sys.stdout), SWEEP_COLUMNS, rows)
    return EXIT_OK


def check_report(sc: Scenario, cfg: dict) -> tuple[dict, bool]:
    st = sc.state
    sol = game.solve(st)
    rep: dict = {"outcome": sol.outcome.value, "y_star": sol.y_star, "J_star": sol.J_star, "checks": {}}
    checks = rep["checks"]
    notes = rep.setdefault("notes", [])

    if sol.outcome is game.Outcome.TRIVIAL_ESCAPE:
        notes.append("alpha >= 1: no game is played")
        return rep, True
    if sol.outcome is not game.Outcome.ESCAPE:
        notes.append("J* <= 0: capture state, saddle grid skipped")
        return rep, not sol.violations

    if sol.violations:
        checks["bounds"] = {"passed": False, "violations": list(sol.violations)}
    else:
        checks["bounds"] = {"passed": True}

    expected = cfg.get("expected")
    y_claim = sol.y_star if not expected else float(expected.get("y_star", sol.y_star))
    J_claim = sol.J_star if not expected else float(expected.get("J_star", sol.J_star))

    if st.x_T > 0:
        d1 = game.payoff_derivative(st, y_claim)
        checks["first_order"] = {"value": d1, "passed": abs(d1) <= 1e-8 * (1 + st.alpha)}
        fd = oracle.finite_difference_check(st, y_claim)
        checks["finite_difference"] = {
            "fd_first": fd.fd_first,
            "analytic_first": fd.analytic_first,
            "abs_error": fd.error_first,
            "passed": fd.error_first <= 1e-6 * (1 + abs(fd.analytic_first)),
        }
    if st.x_T < 0:
        notes.append("x_T < 0: lower-root selection is not a maximum of J, oracle skipped")
    else:
        n = int(cfg.get("n", 2001))
        lo, hi = sol.bounds.y_lower, sol.bounds.y_upper
        u, v, val = oracle.brute_force_maxmin(st, lo, hi, n)
        step = (hi - lo) / (n - 1)
        checks["oracle"] = {
            "u_best": u,
            "v_best": v,
            "value": val,
            "grid_step": step,
            "delta_y": abs(v - y_claim),
            "delta_J": abs(val - J_claim),
            "passed": abs(v - y_claim) <= 3 * step and abs(val - J_claim) <= 3 * step,
        }
        sc_ = oracle.saddle_check(st, y_claim, J_claim, lo, hi, 101)
        checks["saddle"] = {
            "target_best_v": sc_.target_best_v,
            "target_best_value": sc_.target_best_value,
            "attacker_worst_u": sc_.attacker_worst_u,
            "attacker_worst_value": sc_.attacker_worst_value,
            "passed": sc_.passed,
        }
    ok = all(c["passed"] for c in checks.values())
    return rep, ok


def cmd_check(cfg: dict, out=None) -> int:
    sc = load_scenario(cfg)
    rep, ok = check_report(sc, cfg)
    rep["passed"] = ok
    emit(rep, out)
    return EXIT_OK if ok else EXIT_CHECK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="atddg", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    s = sub.add_parser("solve", help="optimal aimpoint, payoff and headings as JSON")
    s.add_argument("config")
    s = sub.add_parser("simulate", help="run the engagement; outcome JSON, optional trajectory CSV")
    s.add_argument("config")
    s.add_argument("--csv", help="write the trajectory CSV here")
    s = sub.add_parser("region", help="escape-region boundary samples as CSV")
    s.add_argument("config")
    s.add_argument("--out", help="CSV file (single x_A)")
    s.add_argument("--out-dir", help="directory for one CSV per x_A")
    s = sub.add_parser("sweep", help="solve over a parameter grid, CSV output")
    s.add_argument("config")
    s.add_argument("--out", help="CSV file instead of stdout")
    s = sub.add_parser("check", help="compare the analytic solution with the brute-force oracle")
    s.add_argument("config")
    return p


def run(argv=None, out=None) -> int:
    args = build_parser().parse_args(argv)
    out = out or sys.stdout
    try:
        cfg = read_config(args.config)
        if args.command == "solve":
            return cmd_solve(cfg, out)
        if args.command == "simulate":
            return cmd_simulate(cfg, args.csv, out)
        if args.command == "region":
            return cmd_region(cfg, args.out, args.out_dir, out)
        if args.command == "sweep":
            return cmd_sweep(cfg, args.out, out)
        return cmd_check(cfg, out)
    except GameError as exc:
        emit({"error": str(exc), "type": type(exc).__name__}, out)
        return EXIT_INPUT


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
