"""Simulated-annealing trainer with Metropolis acceptance.

The cooling schedule is plain geometric and deliberately configurable down
to "stop way too early": a coarse schedule is how a mediocre, locally
trapped baseline network is produced on purpose before refinement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .network import Network, TrainingSet, WeightBounds, rms_error
from .prng import Prng

__all__ = ["AnnealingSchedule", "AnnealResult", "accept_move", "propose_move", "anneal"]


@dataclass(frozen=True)
class AnnealingSchedule:
    """Geometric cooling: run ``steps_per_temperature`` moves, multiply the
    temperature by ``cooling_factor``, stop once it drops below ``t_final``.

    ``move_step`` is the largest single-move parameter change, as a fraction
    of the weight-domain width.
    """

    t_initial: float
    cooling_factor: float
    steps_per_temperature: int
    t_final: float
    move_step: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.t_initial) and self.t_initial > 0):
            raise ValueError(f"t_initial must be positive and finite, got {self.t_initial}")
        if not (math.isfinite(self.cooling_factor) and 0 < self.cooling_factor < 1):
            raise ValueError(
                f"cooling_factor must lie strictly between 0 and 1, got {self.cooling_factor}"
            )
        if isinstance(self.steps_per_temperature, bool) or not isinstance(
            self.steps_per_temperature, int
        ):
            raise ValueError("steps_per_temperature must be an integer")
        # 0 is allowed: it degenerates to "no moves" and returns the input net.
        if self.steps_per_temperature < 0:
            raise ValueError(
                f"steps_per_temperature must be >= 0, got {self.steps_per_temperature}"
            )
        if not (math.isfinite(self.t_final) and 0 < self.t_final < self.t_initial):
            raise ValueError(
                f"t_final must satisfy 0 < t_final < t_initial, got {self.t_final}"
            )
        if not (math.isfinite(self.move_step) and 0 < self.move_step <= 1):
            raise ValueError(f"move_step must lie in (0, 1], got {self.move_step}")


@dataclass
class AnnealResult:
    """Best network seen during a run plus the per-temperature best energies."""

    best_network: Network
    best_energy: float
    energy_history: list[tuple[float, float]]


def accept_move(delta_energy: float, temperature: float, rng: Prng) -> bool:
    """Metropolis test: accept iff ``R < exp(-delta_energy / temperature)``.

    Exactly one ``next_unit`` draw is consumed per call, also for downhill
    moves, so the random stream advances at a fixed rate.
    """
    if isinstance(temperature, bool) or not isinstance(temperature, (int, float)):
        raise ValueError(f"temperature must be a real number, got {temperature!r}")
    if not (math.isfinite(temperature) and temperature > 0):
        raise ValueError(f"temperature must be positive and finite, got {temperature}")
    if not math.isfinite(delta_energy):
        raise ValueError(f"energy difference must be finite, got {delta_energy}")
    r = rng.next_unit()
    exponent = -delta_energy / temperature
    if exponent >= 0.0:
        return True  # acceptance probability >= 1 and r < 1
    return r < math.exp(exponent)


def propose_move(net: Network, bounds: WeightBounds, step: float, rng: Prng) -> Network:
    """Candidate that differs from ``net`` in one uniformly chosen parameter.

    Consumes two draws: ``next_unit`` to pick the parameter index, then
    ``next_symmetric`` for the perturbation, which is scaled by
    ``step * (bounds.max - bounds.min) / 2`` and clamped into the bounds.
    """
    if isinstance(step, bool) or not isinstance(step, (int, float)):
        raise ValueError(f"step must be a real number, got {step!r}")
    if not (math.isfinite(step) and 0 <= step <= 1):
        raise ValueError(f"step must lie in [0, 1], got {step}")
    candidate = net.copy()
    index = int(rng.next_unit() * candidate.n_params)
    delta = rng.next_symmetric() * step * bounds.width / 2.0
    candidate.set_param(index, bounds.clamp(candidate.get_param(index) + delta))
    return candidate


def anneal(
    net: Network,
    data: TrainingSet,
    schedule: AnnealingSchedule,
    bounds: WeightBounds,
    rng: Prng,
) -> AnnealResult:
    """Train ``net`` on ``data`` by simulated annealing within ``bounds``.

    Energy is the RMS error over the training set.  The best network seen
    anywhere in the run is returned, so even a schedule that cools far too
    fast yields a well-defined (if mediocre) result.  ``energy_history``
    records ``(temperature, best energy so far)`` after each temperature
    level and is therefore non-increasing in its second component.
    """
    if not net.within_bounds(bounds):
        raise ValueError("initial network violates the weight bounds")
    current = net.copy()
    current_energy = rms_error(current, data)
    best = current.copy()
    best_energy = current_energy
    history: list[tuple[float, float]] = []

    temperature = schedule.t_initial
    while temperature >= schedule.t_final:
        for _ in range(schedule.steps_per_temperature):
            candidate = propose_move(current, bounds, schedule.move_step, rng)
            candidate_energy = rms_error(candidate, data)
            if accept_move(candidate_energy - current_energy, temperature, rng):
                current = candidate
                current_energy = candidate_energy
                if candidate_energy < best_energy:
                    best = candidate.copy()
                    best_energy = candidate_energy
        history.append((temperature, best_energy))
        temperature *= schedule.cooling_factor

    return AnnealResult(best_network=best, best_energy=best_energy, energy_history=history)
