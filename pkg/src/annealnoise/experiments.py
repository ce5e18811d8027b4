"""Bundled function-fitting experiments and the noise-level sweep.

Two benchmark targets are built in: f(x) = x^2 trained inside weight bounds
[-12, 12] and f(x) = sqrt(x) inside [-1, 1], each from three fixed training
points.  A scenario anneals a fresh 1-4-1 network on the training points,
then refines it against the ground-truth function on an interior grid of 32
evaluation points.  The sweep runner reuses one annealed baseline per
(function, seed) across all noise levels, so every level starts from the
same initial error.
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass, field, replace
from typing import Callable, Iterable, Sequence

from .annealing import AnnealingSchedule, anneal
from .network import Network, TrainingSet, WeightBounds, random_network
from .prng import Prng
from .refine import NoiseSpec, RefinementTrace, refine

__all__ = [
    "TargetFunction",
    "SQUARE",
    "SQRT",
    "TARGET_FUNCTIONS",
    "LAYER_SIZES",
    "DEFAULT_GRID_SIZE",
    "DEFAULT_NOISE_LEVELS",
    "DEFAULT_SCHEDULE",
    "target_function",
    "default_bounds",
    "training_set",
    "evaluation_grid",
    "grid_rms_error",
    "GridObjective",
    "init_bounds",
    "Scenario",
    "ExperimentResult",
    "run_scenario",
    "TableEntry",
    "TableAggregate",
    "TableResult",
    "run_table",
]


@dataclass(frozen=True)
class TargetFunction:
    """Analytic target to fit, defined and finite on [0, 1]."""

    name: str
    fn: Callable[[float], float]

    def __call__(self, x: float) -> float:
        return self.fn(x)


SQUARE = TargetFunction("square", lambda x: x * x)
SQRT = TargetFunction("sqrt", math.sqrt)

TARGET_FUNCTIONS: dict[str, TargetFunction] = {f.name: f for f in (SQUARE, SQRT)}

LAYER_SIZES = (1, 4, 1)
DEFAULT_GRID_SIZE = 32
DEFAULT_NOISE_LEVELS = (0.0, 0.5, 1.0, 2.0, 4.0)

# Coarse on purpose: cools fast and stops high so training reliably parks in
# a local minimum, leaving headroom for the noise refinement stage.
DEFAULT_SCHEDULE = AnnealingSchedule(
    t_initial=0.5,
    cooling_factor=0.5,
    steps_per_temperature=60,
    t_final=0.02,
    move_step=0.15,
)

_TRAINING_POINTS: dict[str, tuple[tuple[float, float], ...]] = {
    "square": ((0.1, 0.01), (0.5, 0.25), (0.9, 0.81)),
    "sqrt": ((0.15, 0.38), (0.6, 0.77), (0.85, 0.92)),
}

_DEFAULT_BOUNDS: dict[str, WeightBounds] = {
    "square": WeightBounds(-12.0, 12.0),
    "sqrt": WeightBounds(-1.0, 1.0),
}


def target_function(name: str | TargetFunction) -> TargetFunction:
    if isinstance(name, TargetFunction):
        return name
    try:
        return TARGET_FUNCTIONS[name]
    except KeyError:
        raise ValueError(
            f"unknown target function {name!r}, expected one of {sorted(TARGET_FUNCTIONS)}"
        ) from None


def default_bounds(function: str | TargetFunction) -> WeightBounds:
    return _DEFAULT_BOUNDS[target_function(function).name]


def training_set(function: str | TargetFunction) -> TrainingSet:
    """The three fixed training points for the given benchmark target."""
    return TrainingSet(_TRAINING_POINTS[target_function(function).name])


def init_bounds(search_bounds: WeightBounds) -> WeightBounds:
    """Interval fresh networks are drawn from: the unit box, clipped to the
    search bounds.

    Training may then wander out to the full search box.  Starting inside
    [-1, 1] keeps the tanh units away from saturation, where wide uniform
    draws would park the search on flat plateaus it cannot anneal off.
    """
    lo = max(search_bounds.min, -1.0)
    hi = min(search_bounds.max, 1.0)
    if not lo < hi:  # search box does not overlap the unit interval
        return search_bounds
    return WeightBounds(lo, hi)


def evaluation_grid(n: int) -> list[float]:
    """``n`` equidistant interior points of [0, 1]: x_i = i / (n + 1)."""
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise ValueError(f"grid size must be a positive integer, got {n!r}")
    return [i / (n + 1) for i in range(1, n + 1)]


def grid_rms_error(net: Network, function: str | TargetFunction, grid: Sequence[float]) -> float:
    """RMS distance between the network and the true function over the grid."""
    fn = target_function(function)
    if not grid:
        raise ValueError("evaluation grid must be nonempty")
    total = 0.0
    for x in grid:
        residual = net.forward(x) - fn(x)
        total += residual * residual
    return math.sqrt(total / len(grid))


@dataclass(frozen=True)
class GridObjective:
    """Error functional plus evaluation points, as consumed by ``refine``."""

    function: TargetFunction
    grid: tuple[float, ...]

    def error(self, net: Network) -> float:
        return grid_rms_error(net, self.function, self.grid)


@dataclass(frozen=True)
class Scenario:
    """One full experiment: anneal a fresh network, then refine it."""

    function: TargetFunction
    noise_percent: float
    seed: int
    schedule: AnnealingSchedule = DEFAULT_SCHEDULE
    bounds: WeightBounds | None = None
    grid_size: int = DEFAULT_GRID_SIZE

    def __post_init__(self) -> None:
        object.__setattr__(self, "function", target_function(self.function))
        if self.bounds is None:
            object.__setattr__(self, "bounds", default_bounds(self.function))
        if isinstance(self.seed, bool) or not isinstance(self.seed, int):
            raise ValueError("seed must be an integer")
        if not 0 <= self.seed < 2**32:
            raise ValueError(f"seed must be an unsigned 32-bit integer, got {self.seed}")
        if not (math.isfinite(self.noise_percent) and self.noise_percent >= 0):
            raise ValueError(f"noise_percent must be >= 0, got {self.noise_percent}")
        if isinstance(self.grid_size, bool) or not isinstance(self.grid_size, int):
            raise ValueError("grid_size must be an integer")
        if self.grid_size < 1:
            raise ValueError(f"grid_size must be >= 1, got {self.grid_size}")


@dataclass
class ExperimentResult:
    scenario: Scenario
    initial_error: float
    final_error: float
    trace: RefinementTrace
    baseline_outputs: list[float]
    refined_outputs: list[float]
    baseline_network: Network
    refined_network: Network


def run_scenario(scenario: Scenario) -> ExperimentResult:
    """Initialise, anneal and refine; fully determined by ``scenario.seed``.

    One generator seeded with the scenario seed drives all three stages in
    sequence, so the annealed baseline is identical across noise levels of
    the same seed and the refinement stream starts from the same state.
    """
    rng = Prng(scenario.seed)
    start = random_network(LAYER_SIZES, init_bounds(scenario.bounds), rng)
    trained = anneal(start, training_set(scenario.function), scenario.schedule, scenario.bounds, rng)
    baseline = trained.best_network

    grid = evaluation_grid(scenario.grid_size)
    objective = GridObjective(scenario.function, tuple(grid))
    noise = NoiseSpec(scenario.noise_percent, scenario.bounds, iterations=scenario.grid_size)
    refined, trace = refine(baseline, objective, noise, rng)

    return ExperimentResult(
        scenario=scenario,
        initial_error=trace.initial_error,
        final_error=trace.final_error,
        trace=trace,
        baseline_outputs=[baseline.forward(x) for x in grid],
        refined_outputs=[refined.forward(x) for x in grid],
        baseline_network=baseline,
        refined_network=refined,
    )


@dataclass(frozen=True)
class TableEntry:
    function: str
    noise_percent: float
    seed: int
    initial_error: float
    final_error: float


@dataclass(frozen=True)
class TableAggregate:
    function: str
    noise_percent: float
    mean_initial_error: float
    mean_final_error: float


@dataclass
class TableResult:
    entries: list[TableEntry]
    aggregates: list[TableAggregate]

    def mean_final_error(self, function: str | TargetFunction, noise_percent: float) -> float:
        name = target_function(function).name
        for aggregate in self.aggregates:
            if aggregate.function == name and aggregate.noise_percent == noise_percent:
                return aggregate.mean_final_error
        raise KeyError(f"no aggregate for ({name}, {noise_percent})")


def run_table(
    seeds: Iterable[int],
    schedule: AnnealingSchedule = DEFAULT_SCHEDULE,
    grid_size: int = DEFAULT_GRID_SIZE,
    noise_levels: Sequence[float] = DEFAULT_NOISE_LEVELS,
    functions: Sequence[str | TargetFunction] = (SQUARE, SQRT),
    bounds: WeightBounds | None = None,
) -> TableResult:
    """Final error per (function, noise level, seed), plus per-cell means.

    One baseline is annealed per (function, seed) and shared across noise
    levels; each level refines that baseline from a clone of the
    post-annealing generator state, so every table cell is exactly the
    result :func:`run_scenario` would produce for the same configuration.
    """
    seeds = list(seeds)
    if not seeds:
        raise ValueError("at least one seed is required")
    entries: list[TableEntry] = []
    aggregates: list[TableAggregate] = []

    for function in (target_function(f) for f in functions):
        function_bounds = bounds if bounds is not None else default_bounds(function)
        grid = evaluation_grid(grid_size)
        objective = GridObjective(function, tuple(grid))
        data = training_set(function)

        baselines: list[tuple[int, Network, float, Prng]] = []
        for seed in seeds:
            rng = Prng(seed)
            start = random_network(LAYER_SIZES, init_bounds(function_bounds), rng)
            trained = anneal(start, data, schedule, function_bounds, rng)
            baselines.append((seed, trained.best_network, objective.error(trained.best_network), rng))

        for level in noise_levels:
            finals = []
            initials = []
            for seed, baseline, initial_error, rng in baselines:
                noise = NoiseSpec(level, function_bounds, iterations=grid_size)
                _, trace = refine(baseline, objective, noise, rng.clone())
                entries.append(
                    TableEntry(function.name, level, seed, initial_error, trace.final_error)
                )
                finals.append(trace.final_error)
                initials.append(initial_error)
            aggregates.append(
                TableAggregate(
                    function.name,
                    level,
                    statistics.fmean(initials),
                    statistics.fmean(finals),
                )
            )

    return TableResult(entries=entries, aggregates=aggregates)
