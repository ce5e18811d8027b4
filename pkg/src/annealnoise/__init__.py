"""Train tiny tanh networks by simulated annealing, then refine them with
seeded random perturbation of the hidden layer, keeping only improvements.

Everything is driven by an explicit MT19937 generator, so every result is a
pure function of its seed and configuration.
"""

from .annealing import AnnealingSchedule, AnnealResult, accept_move, anneal, propose_move
from .experiments import (
    DEFAULT_NOISE_LEVELS,
    DEFAULT_SCHEDULE,
    SQRT,
    SQUARE,
    ExperimentResult,
    GridObjective,
    Scenario,
    TableEntry,
    TableResult,
    TargetFunction,
    default_bounds,
    evaluation_grid,
    grid_rms_error,
    run_scenario,
    run_table,
    target_function,
    training_set,
)
from .network import (
    Network,
    TrainingSet,
    WeightBounds,
    load_network,
    network_from_text,
    network_to_text,
    random_network,
    rms_error,
    save_network,
)
from .prng import Prng
from .refine import (
    NoiseSpec,
    RefinementTrace,
    Snapshot,
    TraceRow,
    add_hidden_noise,
    backup_state,
    refine,
    restore_state,
)

__version__ = "0.1.0"

__all__ = [
    "AnnealingSchedule",
    "AnnealResult",
    "DEFAULT_NOISE_LEVELS",
    "DEFAULT_SCHEDULE",
    "ExperimentResult",
    "GridObjective",
    "Network",
    "NoiseSpec",
    "Prng",
    "RefinementTrace",
    "Scenario",
    "Snapshot",
    "SQRT",
    "SQUARE",
    "TableEntry",
    "TableResult",
    "TargetFunction",
    "TraceRow",
    "TrainingSet",
    "WeightBounds",
    "accept_move",
    "add_hidden_noise",
    "anneal",
    "backup_state",
    "default_bounds",
    "evaluation_grid",
    "grid_rms_error",
    "load_network",
    "network_from_text",
    "network_to_text",
    "propose_move",
    "random_network",
    "refine",
    "restore_state",
    "rms_error",
    "run_scenario",
    "run_table",
    "save_network",
    "target_function",
    "training_set",
]
