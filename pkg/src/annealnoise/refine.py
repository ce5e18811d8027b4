"""Post-learning refinement: noisy hidden-layer trials with greedy keep/restore.

After training, the hidden-layer weights and biases are repeatedly nudged by
bounded uniform noise.  Each trial is evaluated against the objective; a
strictly better candidate is kept, anything else is rolled back from a
snapshot, so the working objective can only go down.  The perturbed network
is intentionally not clamped back into the training bounds: the whole point
is to probe just outside the box the trainer was confined to.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Protocol, Sequence

from .network import Network, WeightBounds
from .prng import Prng

__all__ = [
    "NoiseSpec",
    "Snapshot",
    "TraceRow",
    "RefinementTrace",
    "ObjectiveContext",
    "add_hidden_noise",
    "backup_state",
    "restore_state",
    "refine",
]


class ObjectiveContext(Protocol):
    """What :func:`refine` needs: an error functional and evaluation points."""

    grid: Sequence[float]

    def error(self, net: Network) -> float: ...


@dataclass(frozen=True)
class NoiseSpec:
    """Noise level as a percentage of the weight-domain half-width.

    A 1% spec over bounds [-12, 12] perturbs each hidden parameter by a
    uniform draw from (-0.12, 0.12).
    """

    noise_percent: float
    bounds: WeightBounds
    iterations: int = 32

    def __post_init__(self) -> None:
        if not (math.isfinite(self.noise_percent) and self.noise_percent >= 0):
            raise ValueError(f"noise_percent must be >= 0, got {self.noise_percent}")
        if isinstance(self.iterations, bool) or not isinstance(self.iterations, int):
            raise ValueError("iterations must be an integer")
        if self.iterations < 1:
            raise ValueError(f"iterations must be >= 1, got {self.iterations}")

    @property
    def amplitude(self) -> float:
        return (self.noise_percent / 100.0) * self.bounds.width / 2.0


@dataclass(frozen=True)
class Snapshot:
    """Complete copy of a network's parameters, for exact rollback."""

    layer_sizes: tuple[int, ...]
    params: tuple[float, ...]


@dataclass(frozen=True)
class TraceRow:
    """One refinement trial: outputs and objective values of the unperturbed
    (classical) and perturbed (quantum) network, plus the greedy verdict."""

    iteration: int
    eval_x: float
    classical_output: float
    quantum_output: float
    classical_error: float
    quantum_error: float
    accepted: bool


@dataclass(frozen=True)
class RefinementTrace:
    rows: tuple[TraceRow, ...]

    @property
    def initial_error(self) -> float:
        return self.rows[0].classical_error

    @property
    def final_error(self) -> float:
        last = self.rows[-1]
        return last.quantum_error if last.accepted else last.classical_error

    def __len__(self) -> int:
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)


def backup_state(net: Network) -> Snapshot:
    return Snapshot(net.layer_sizes, tuple(net.iter_params()))


def restore_state(net: Network, snapshot: Snapshot) -> Network:
    """Write the snapshot's parameters back into ``net`` (exact restore)."""
    if snapshot.layer_sizes != net.layer_sizes:
        raise ValueError(
            f"snapshot shape {snapshot.layer_sizes} does not match network {net.layer_sizes}"
        )
    net.set_params(snapshot.params)
    return net


def add_hidden_noise(net: Network, spec: NoiseSpec, rng: Prng) -> Network:
    """Add bounded uniform noise to every hidden-layer weight and bias.

    Mutates ``net`` in place and returns it.  Output-layer parameters are
    untouched and the result is not clamped.  One ``next_symmetric`` draw is
    consumed per hidden parameter, in canonical parameter order, regardless
    of the noise level.
    """
    if len(net.layer_sizes) < 3:
        raise ValueError("network has no hidden layer to perturb")
    amplitude = spec.amplitude
    for matrix, vector in zip(net.weights[:-1], net.biases[:-1]):
        for j, row in enumerate(matrix):
            for i in range(len(row)):
                row[i] += rng.next_symmetric() * amplitude
            vector[j] += rng.next_symmetric() * amplitude
    return net


def refine(
    net: Network,
    objective: ObjectiveContext,
    spec: NoiseSpec,
    rng: Prng,
) -> tuple[Network, RefinementTrace]:
    """Greedy noisy refinement of ``net`` against ``objective``.

    Per iteration: record the current network's output at the iteration's
    evaluation point, snapshot, perturb the hidden layer, evaluate, keep the
    perturbed weights only on a strict improvement (ties restore).  The input
    network is left untouched; the refined copy and the full trace are
    returned.  The trace's running objective is non-increasing and the final
    objective never exceeds the initial one.
    """
    grid = tuple(objective.grid)
    if not grid:
        raise ValueError("objective must supply at least one evaluation point")
    work = net.copy()
    error = objective.error(work)
    if not (math.isfinite(error) and error >= 0):
        raise ValueError(f"objective must be finite and non-negative, got {error}")

    rows: list[TraceRow] = []
    for k in range(spec.iterations):
        eval_x = grid[k % len(grid)]
        classical_output = work.forward(eval_x)
        snapshot = backup_state(work)
        add_hidden_noise(work, spec, rng)
        quantum_output = work.forward(eval_x)
        quantum_error = objective.error(work)
        accepted = quantum_error < error
        rows.append(
            TraceRow(
                iteration=k + 1,
                eval_x=eval_x,
                classical_output=classical_output,
                quantum_output=quantum_output,
                classical_error=error,
                quantum_error=quantum_error,
                accepted=accepted,
            )
        )
        if accepted:
            error = quantum_error
        else:
            restore_state(work, snapshot)

    return work, RefinementTrace(tuple(rows))
