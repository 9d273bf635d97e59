"""Command-line interface.

Subcommands: `ode` (deterministic trajectory CSV), `abm` (finite-population
run CSV), `graph` (random-graph edge list), `sweep` (stats row per parameter
grid point), `equilibrium` (closed-form 2x2 mixed equilibrium). All floats in
CSV output carry 12 significant digits so files round-trip and are
byte-identical for identical config and seed.
"""

from __future__ import annotations

import argparse
import itertools
import sys
from pathlib import Path

from . import analysis, game_core
from .agent_sim import run_abm
from .config import RunConfig, load_config
from .dynamics import integrate
from .errors import ConfigError
from .network import generate_er, edge_list_text
from .plotting import plot_simplex

# stats in sweep rows summarize the trailing tenth of each trajectory
_SWEEP_WINDOW = 0.1

_SWEEP_PARAM_COLUMNS = (
    "M", "N", "c", "r", "g", "u", "beta", "pr", "pe", "mode", "density",
    "dt", "steps", "x0", "y0", "z0", "seed",
)


def _fmt(value) -> str:
    if isinstance(value, float):
        return format(value, ".11e")
    return str(value)


def _write_lines(path: Path, lines) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(lines) + "\n")


def _out_path(cfg: RunConfig, default: str) -> Path:
    return Path(cfg.out) if cfg.out else Path(default)


def cmd_ode(cfg: RunConfig) -> int:
    traj = integrate(
        cfg.initial_state(), cfg.pgg_params(), cfg.dynamics_mode(), cfg.dt, cfg.steps
    )
    lines = ["t,x,y,z"]
    for t, (x, y, z) in zip(traj.times, traj.frequencies):
        lines.append(f"{_fmt(float(t))},{_fmt(float(x))},{_fmt(float(y))},{_fmt(float(z))}")
    out = _out_path(cfg, "ode.csv")
    _write_lines(out, lines)
    if cfg.plot:
        plot_simplex(traj, out.with_suffix(".svg"))
    return 0


def cmd_abm(cfg: RunConfig) -> int:
    traj = run_abm(
        cfg.initial_population(), cfg.pgg_params(), cfg.learning_params(), cfg.t, cfg.seed
    )
    lines = ["gen,frac_c,frac_d,frac_l,mean_payoff"]
    for gen, (fc, fd, fl), pay in zip(traj.generations, traj.frequencies, traj.mean_payoffs):
        lines.append(
            f"{int(gen)},{_fmt(float(fc))},{_fmt(float(fd))},{_fmt(float(fl))},{_fmt(float(pay))}"
        )
    out = _out_path(cfg, "abm.csv")
    _write_lines(out, lines)
    if cfg.plot:
        plot_simplex(traj, out.with_suffix(".svg"))
    return 0


def cmd_graph(cfg: RunConfig) -> int:
    graph = generate_er(cfg.graph_params())
    out = _out_path(cfg, "graph.txt")
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(edge_list_text(graph))
    return 0


def cmd_sweep(cfg: RunConfig, grid: list[tuple[str, list[str]]]) -> int:
    if not grid:
        raise ConfigError("sweep requires at least one --grid key=v1,v2,...")
    keys = [key for key, _ in grid]
    stat_cols = (
        "mean_x", "mean_y", "mean_z", "amp_x", "amp_y", "amp_z",
        "osc_x", "osc_y", "osc_z", "fixated",
    )
    lines = [",".join(_SWEEP_PARAM_COLUMNS + stat_cols)]
    for combo in itertools.product(*(values for _, values in grid)):
        point = load_config(None, {**_base_overrides(cfg), **dict(zip(keys, combo))})
        traj = integrate(
            point.initial_state(), point.pgg_params(), point.dynamics_mode(),
            point.dt, point.steps,
        )
        st = analysis.stats(traj, window=_SWEEP_WINDOW)
        row = [_fmt(getattr(point, col)) for col in _SWEEP_PARAM_COLUMNS]
        row.extend(_fmt(v) for v in st.time_means)
        row.extend(_fmt(v) for v in st.amplitude)
        row.extend(str(v) for v in st.oscillation_counts)
        row.append(str(st.fixated if st.fixated is not None else -1))
        lines.append(",".join(row))
    out = _out_path(cfg, "sweep.csv")
    _write_lines(out, lines)
    return 0


def _base_overrides(cfg: RunConfig) -> dict:
    skip = {"out", "plot"}
    return {
        name: getattr(cfg, name)
        for name in cfg.__dataclass_fields__
        if name not in skip and getattr(cfg, name) is not None
    }


def cmd_equilibrium(a: float, b: float, c: float) -> int:
    row, col = game_core.equilibrium_profile_abc(a, b, c)
    matrix = game_core.Matrix2x2.abc_game(a, b, c)
    u_row, u_col = game_core.expected_payoffs(matrix, row, col)
    print(f"mixed weights: row=({row.p:.12g}, {1 - row.p:.12g}) "
          f"column=({col.p:.12g}, {1 - col.p:.12g})")
    print(f"expected payoffs: row={u_row:.12g} column={u_col:.12g}")
    return 0


def _parse_set(entries: list[str]) -> dict:
    overrides: dict = {}
    for entry in entries:
        if "=" not in entry:
            raise ConfigError(f"--set expects key=value, got {entry!r}")
        key, value = entry.split("=", 1)
        overrides[key.strip()] = value.strip()
    return overrides


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pggsim",
        description="Optional public goods game: deterministic dynamics, "
        "finite-population simulation, random graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=str, default=None, help="key = value config file")
    common.add_argument("--seed", type=int, default=None, help="RNG seed override")
    common.add_argument("--out", type=str, default=None, help="output file path")
    common.add_argument("--plot", action="store_true", help="also write an SVG simplex plot")
    common.add_argument(
        "--set", action="append", default=[], metavar="KEY=VALUE",
        help="override any config key (repeatable)",
    )

    sub.add_parser("ode", parents=[common], help="integrate the deterministic dynamics")
    sub.add_parser("abm", parents=[common], help="run the finite-population simulation")
    sub.add_parser("graph", parents=[common], help="generate a random graph edge list")

    sweep = sub.add_parser("sweep", parents=[common], help="stats over a parameter grid")
    sweep.add_argument(
        "--grid", action="append", default=[], metavar="KEY=V1,V2,...",
        help="values to sweep for one key (repeatable; grid is the product)",
    )

    eq = sub.add_parser("equilibrium", help="closed-form 2x2 mixed equilibrium")
    eq.add_argument("--a", type=float, default=2.0)
    eq.add_argument("--b", type=float, default=1.0)
    eq.add_argument("--c", type=float, default=0.0)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "equilibrium":
            return cmd_equilibrium(args.a, args.b, args.c)

        overrides = _parse_set(args.set)
        if args.seed is not None:
            overrides["seed"] = args.seed
        if args.out is not None:
            overrides["out"] = args.out
        if args.plot:
            overrides["plot"] = True
        cfg = load_config(args.config, overrides)

        if args.command == "ode":
            return cmd_ode(cfg)
        if args.command == "abm":
            return cmd_abm(cfg)
        if args.command == "graph":
            return cmd_graph(cfg)
        if args.command == "sweep":
            grid = []
            for entry in args.grid:
                if "=" not in entry:
                    raise ConfigError(f"--grid expects key=v1,v2,..., got {entry!r}")
                key, values = entry.split("=", 1)
                grid.append((key.strip(), [v.strip() for v in values.split(",") if v.strip()]))
            return cmd_sweep(cfg, grid)
        raise AssertionError(f"unhandled command {args.command}")
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
