"""Command line front end: seeded fit/table runs and plot-data export.

Configuration is a flat JSON object (the same keys the flags use); flags
override file values, and the ``ANNEAL_NOISE_SEED`` environment variable is
used for the seed when neither a flag nor the file provides one.  All floats
are printed with 17 significant digits, which round-trips doubles exactly
and makes artifacts byte-reproducible for a given configuration and seed.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

from .annealing import AnnealingSchedule
from .experiments import (
    DEFAULT_GRID_SIZE,
    DEFAULT_SCHEDULE,
    TARGET_FUNCTIONS,
    Scenario,
    TableResult,
    default_bounds,
    run_scenario,
    run_table,
    target_function,
)
from .network import WeightBounds, save_network
from .refine import RefinementTrace

__all__ = [
    "ConfigError",
    "TraceParseError",
    "RunConfig",
    "TraceFileRow",
    "parse_config",
    "write_trace_csv",
    "read_trace_csv",
    "cmd_fit",
    "cmd_table",
    "cmd_plotdata",
    "main",
    "entry",
]

ENV_SEED = "ANNEAL_NOISE_SEED"
DEFAULT_SEED = 5489  # the generator's conventional default seed

TRACE_COLUMNS = (
    "iteration",
    "eval_x",
    "target",
    "classical_output",
    "quantum_output",
    "classical_error",
    "quantum_error",
    "accepted",
)
TABLE_COLUMNS = ("function", "noise_percent", "seed", "initial_error", "final_error")


class ConfigError(Exception):
    """Invalid, unknown or out-of-range configuration value."""


class TraceParseError(Exception):
    """Malformed trace CSV; the message names the offending line."""


def format_float(value: float) -> str:
    """17 significant digits: exact for doubles and byte-stable."""
    return format(float(value), ".17g")


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved configuration for the ``fit`` and ``table`` commands."""

    function: str
    noise_percent: float
    seed: int
    grid_size: int
    t_initial: float
    cooling_factor: float
    steps_per_temperature: int
    t_final: float
    move_step: float
    bounds_min: float | None
    bounds_max: float | None
    out_dir: str

    def schedule(self) -> AnnealingSchedule:
        return AnnealingSchedule(
            t_initial=self.t_initial,
            cooling_factor=self.cooling_factor,
            steps_per_temperature=self.steps_per_temperature,
            t_final=self.t_final,
            move_step=self.move_step,
        )

    def bounds_override(self) -> WeightBounds | None:
        if self.bounds_min is None:
            return None
        return WeightBounds(self.bounds_min, self.bounds_max)

    def bounds(self) -> WeightBounds:
        override = self.bounds_override()
        return override if override is not None else default_bounds(self.function)

    def scenario(self) -> Scenario:
        return Scenario(
            function=target_function(self.function),
            noise_percent=self.noise_percent,
            seed=self.seed,
            schedule=self.schedule(),
            bounds=self.bounds(),
            grid_size=self.grid_size,
        )


_DEFAULTS: dict[str, object] = {
    "function": "square",
    "noise_percent": 0.0,
    "seed": None,  # resolved from the environment, then DEFAULT_SEED
    "grid_size": DEFAULT_GRID_SIZE,
    "t_initial": DEFAULT_SCHEDULE.t_initial,
    "cooling_factor": DEFAULT_SCHEDULE.cooling_factor,
    "steps_per_temperature": DEFAULT_SCHEDULE.steps_per_temperature,
    "t_final": DEFAULT_SCHEDULE.t_final,
    "move_step": DEFAULT_SCHEDULE.move_step,
    "bounds_min": None,
    "bounds_max": None,
    "out_dir": ".",
}


def _require_real(key: str, value: object) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"invalid value for '{key}': expected a number, got {value!r}")
    number = float(value)
    if not math.isfinite(number):
        raise ConfigError(f"invalid value for '{key}': must be finite, got {number}")
    return number


def _require_int(key: str, value: object) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"invalid value for '{key}': expected an integer, got {value!r}")
    return value


def _load_config_file(path: str) -> dict[str, object]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path!r}: {exc}") from exc
    try:
        values = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"malformed config file {path!r}: {exc}") from exc
    if not isinstance(values, dict):
        raise ConfigError(f"config file {path!r} must hold a flat JSON object")
    for key in values:
        if key not in _DEFAULTS:
            raise ConfigError(f"unknown config key: {key!r}")
    return values


def _build_run_config(values: Mapping[str, object]) -> RunConfig:
    function = values["function"]
    if not isinstance(function, str) or function not in TARGET_FUNCTIONS:
        raise ConfigError(
            f"invalid value for 'function': expected one of {sorted(TARGET_FUNCTIONS)}, "
            f"got {function!r}"
        )

    noise_percent = _require_real("noise_percent", values["noise_percent"])
    if noise_percent < 0:
        raise ConfigError(f"invalid value for 'noise_percent': must be >= 0, got {noise_percent}")

    seed = _require_int("seed", values["seed"])
    if not 0 <= seed < 2**32:
        raise ConfigError(
            f"invalid value for 'seed': must be an unsigned 32-bit integer, got {seed}"
        )

    grid_size = _require_int("grid_size", values["grid_size"])
    if grid_size < 1:
        raise ConfigError(f"invalid value for 'grid_size': must be >= 1, got {grid_size}")

    t_initial = _require_real("t_initial", values["t_initial"])
    if t_initial <= 0:
        raise ConfigError(f"invalid value for 't_initial': must be > 0, got {t_initial}")

    cooling_factor = _require_real("cooling_factor", values["cooling_factor"])
    if not 0 < cooling_factor < 1:
        raise ConfigError(
            f"invalid value for 'cooling_factor': must lie strictly between 0 and 1, "
            f"got {cooling_factor}"
        )

    steps = _require_int("steps_per_temperature", values["steps_per_temperature"])
    if steps < 0:
        raise ConfigError(f"invalid value for 'steps_per_temperature': must be >= 0, got {steps}")

    t_final = _require_real("t_final", values["t_final"])
    if not 0 < t_final < t_initial:
        raise ConfigError(
            f"invalid value for 't_final': must satisfy 0 < t_final < t_initial, got {t_final}"
        )

    move_step = _require_real("move_step", values["move_step"])
    if not 0 < move_step <= 1:
        raise ConfigError(f"invalid value for 'move_step': must lie in (0, 1], got {move_step}")

    bounds_min, bounds_max = values["bounds_min"], values["bounds_max"]
    if (bounds_min is None) != (bounds_max is None):
        raise ConfigError("'bounds_min' and 'bounds_max' must be given together")
    if bounds_min is not None:
        bounds_min = _require_real("bounds_min", bounds_min)
        bounds_max = _require_real("bounds_max", bounds_max)
        if not bounds_min < bounds_max:
            raise ConfigError(
                f"invalid value for 'bounds_min'/'bounds_max': require min < max, "
                f"got [{bounds_min}, {bounds_max}]"
            )

    out_dir = values["out_dir"]
    if not isinstance(out_dir, str) or not out_dir:
        raise ConfigError(f"invalid value for 'out_dir': expected a path, got {out_dir!r}")

    return RunConfig(
        function=function,
        noise_percent=noise_percent,
        seed=seed,
        grid_size=grid_size,
        t_initial=t_initial,
        cooling_factor=cooling_factor,
        steps_per_temperature=steps,
        t_final=t_final,
        move_step=move_step,
        bounds_min=bounds_min,
        bounds_max=bounds_max,
        out_dir=out_dir,
    )


def parse_config(
    config_path: str | None = None,
    flags: Mapping[str, object] | None = None,
    env: Mapping[str, str] | None = None,
) -> RunConfig:
    """Merge defaults, config file and flags (flags win) into a RunConfig."""
    env = os.environ if env is None else env
    values = dict(_DEFAULTS)
    if config_path is not None:
        values.update(_load_config_file(config_path))
    if flags:
        for key, value in flags.items():
            if key not in _DEFAULTS:
                raise ConfigError(f"unknown config key: {key!r}")
            if value is not None:
                values[key] = value
    if values["seed"] is None:
        raw = env.get(ENV_SEED)
        if raw is not None:
            try:
                values["seed"] = int(raw)
            except ValueError:
                raise ConfigError(
                    f"invalid value for '{ENV_SEED}': expected an integer, got {raw!r}"
                ) from None
        else:
            values["seed"] = DEFAULT_SEED
    return _build_run_config(values)


# ----------------------------------------------------------------------
# trace CSV
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class TraceFileRow:
    iteration: int
    eval_x: float
    target: float
    classical_output: float
    quantum_output: float
    classical_error: float
    quantum_error: float
    accepted: bool


def write_trace_csv(path, trace: RefinementTrace, function) -> None:
    fn = target_function(function)
    lines = [",".join(TRACE_COLUMNS)]
    for row in trace:
        lines.append(
            ",".join(
                (
                    str(row.iteration),
                    format_float(row.eval_x),
                    format_float(fn(row.eval_x)),
                    format_float(row.classical_output),
                    format_float(row.quantum_output),
                    format_float(row.classical_error),
                    format_float(row.quantum_error),
                    "true" if row.accepted else "false",
                )
            )
        )
    with open(path, "w", encoding="ascii", newline="\n") as handle:
        handle.write("\n".join(lines) + "\n")


def _parse_bool(token: str, lineno: int) -> bool:
    if token == "true":
        return True
    if token == "false":
        return False
    raise TraceParseError(f"line {lineno}: expected 'true' or 'false', got {token!r}")


def read_trace_csv(path) -> list[TraceFileRow]:
    try:
        text = Path(path).read_text(encoding="ascii")
    except OSError as exc:
        raise TraceParseError(f"cannot read trace file {path!r}: {exc}") from exc
    lines = text.splitlines()
    if not lines:
        raise TraceParseError("line 1: missing header row")
    if tuple(lines[0].split(",")) != TRACE_COLUMNS:
        raise TraceParseError(f"line 1: unexpected header {lines[0]!r}")
    rows: list[TraceFileRow] = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line:
            raise TraceParseError(f"line {lineno}: empty row")
        fields = line.split(",")
        if len(fields) != len(TRACE_COLUMNS):
            raise TraceParseError(
                f"line {lineno}: expected {len(TRACE_COLUMNS)} fields, got {len(fields)}"
            )
        try:
            iteration = int(fields[0])
            floats = [float(token) for token in fields[1:7]]
        except ValueError:
            raise TraceParseError(f"line {lineno}: malformed numeric field") from None
        rows.append(TraceFileRow(iteration, *floats, _parse_bool(fields[7], lineno)))
    return rows


# ----------------------------------------------------------------------
# commands
# ----------------------------------------------------------------------


def cmd_fit(config: RunConfig) -> int:
    """Run one scenario; write ``trace.csv`` and ``network.txt``."""
    result = run_scenario(config.scenario())
    out = Path(config.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    write_trace_csv(out / "trace.csv", result.trace, config.function)
    save_network(result.refined_network, out / "network.txt")
    return 0


def _table_lines(table: TableResult, with_means: bool) -> list[str]:
    lines = [",".join(TABLE_COLUMNS)]
    for entry in table.entries:
        lines.append(
            ",".join(
                (
                    entry.function,
                    format_float(entry.noise_percent),
                    str(entry.seed),
                    format_float(entry.initial_error),
                    format_float(entry.final_error),
                )
            )
        )
    if with_means:
        for aggregate in table.aggregates:
            lines.append(
                ",".join(
                    (
                        aggregate.function,
                        format_float(aggregate.noise_percent),
                        "mean",
                        format_float(aggregate.mean_initial_error),
                        format_float(aggregate.mean_final_error),
                    )
                )
            )
    return lines


def write_table_csv(path, table: TableResult, seeds_count: int) -> None:
    lines = _table_lines(table, with_means=seeds_count > 1)
    with open(path, "w", encoding="ascii", newline="\n") as handle:
        handle.write("\n".join(lines) + "\n")


def cmd_table(config: RunConfig) -> int:
    """Sweep both functions over the default noise levels; write ``table.csv``."""
    table = run_table(
        [config.seed],
        schedule=config.schedule(),
        grid_size=config.grid_size,
        bounds=config.bounds_override(),
    )
    out = Path(config.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    write_table_csv(out / "table.csv", table, seeds_count=1)
    return 0


def cmd_plotdata(trace_path: str, out_dir: str | None = None) -> int:
    """Re-emit a trace as two whitespace-separated plot files."""
    rows = read_trace_csv(trace_path)
    out = Path(out_dir) if out_dir is not None else Path(trace_path).parent
    out.mkdir(parents=True, exist_ok=True)

    output_lines = [
        " ".join(
            (
                format_float(row.eval_x),
                format_float(row.target),
                format_float(row.classical_output),
                format_float(row.quantum_output),
            )
        )
        for row in rows
    ]
    error_lines = [
        " ".join(
            (
                str(row.iteration),
                format_float(row.classical_error),
                format_float(row.quantum_error),
            )
        )
        for row in rows
    ]
    with open(out / "outputs.dat", "w", encoding="ascii", newline="\n") as handle:
        handle.write("\n".join(output_lines) + ("\n" if output_lines else ""))
    with open(out / "errors.dat", "w", encoding="ascii", newline="\n") as handle:
        handle.write("\n".join(error_lines) + ("\n" if error_lines else ""))
    return 0


# ----------------------------------------------------------------------
# argument parsing
# ----------------------------------------------------------------------

_FLAG_KEYS = (
    "function",
    "noise_percent",
    "seed",
    "grid_size",
    "out_dir",
    "t_initial",
    "cooling_factor",
    "steps_per_temperature",
    "t_final",
    "move_step",
)


def _add_run_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", metavar="PATH", help="flat JSON config file")
    parser.add_argument("--function", help="target function: square or sqrt")
    parser.add_argument("--noise", dest="noise_percent", type=float, help="noise percentage")
    parser.add_argument("--seed", type=int, help="unsigned 32-bit seed")
    parser.add_argument("--grid-size", dest="grid_size", type=int, help="evaluation points")
    parser.add_argument("--out", dest="out_dir", help="output directory")
    parser.add_argument("--t-initial", dest="t_initial", type=float, help="initial temperature")
    parser.add_argument("--cooling", dest="cooling_factor", type=float, help="cooling factor")
    parser.add_argument(
        "--steps", dest="steps_per_temperature", type=int, help="moves per temperature"
    )
    parser.add_argument("--t-final", dest="t_final", type=float, help="stop temperature")
    parser.add_argument("--move-step", dest="move_step", type=float, help="max move fraction")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="annealnoise",
        description="Anneal a tiny tanh network, then refine it with seeded hidden-layer noise.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    fit = sub.add_parser("fit", help="run one scenario; writes trace.csv and network.txt")
    _add_run_flags(fit)

    table = sub.add_parser("table", help="noise sweep over both functions; writes table.csv")
    _add_run_flags(table)

    plot = sub.add_parser("plotdata", help="emit outputs.dat and errors.dat from a trace.csv")
    plot.add_argument("trace", help="path to a trace.csv produced by fit")
    plot.add_argument("--out", dest="out_dir", help="output directory (default: beside the trace)")

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "plotdata":
            return cmd_plotdata(args.trace, args.out_dir)
        flags = {key: getattr(args, key) for key in _FLAG_KEYS}
        config = parse_config(args.config, flags)
        if args.command == "fit":
            return cmd_fit(config)
        return cmd_table(config)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except TraceParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
