"""Small fully connected tanh networks with deterministic scalar evaluation.

Parameters live in plain Python floats so that evaluation, copying and
serialization are bit-exact and platform independent.  The canonical
parameter order (layer by layer, neuron by neuron, incoming weights then the
neuron's bias) is shared by random initialisation, flat indexing, snapshots
and the text format, and is part of the public contract.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .prng import Prng

__all__ = [
    "WeightBounds",
    "TrainingSet",
    "Network",
    "random_network",
    "rms_error",
    "network_to_text",
    "network_from_text",
    "save_network",
    "load_network",
]


@dataclass(frozen=True)
class WeightBounds:
    """Closed interval constraining trainable parameters during training."""

    min: float
    max: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.min) and math.isfinite(self.max)):
            raise ValueError("weight bounds must be finite")
        if not self.min < self.max:
            raise ValueError(f"weight bounds require min < max, got [{self.min}, {self.max}]")

    @property
    def width(self) -> float:
        return self.max - self.min

    def clamp(self, value: float) -> float:
        return min(self.max, max(self.min, value))

    def contains(self, value: float) -> bool:
        return self.min <= value <= self.max


@dataclass(frozen=True)
class TrainingSet:
    """Nonempty collection of (input, target) pairs."""

    points: tuple[tuple[float, float], ...]

    def __init__(self, points: Iterable[Sequence[float]]) -> None:
        normalized = tuple((float(x), float(y)) for x, y in points)
        if not normalized:
            raise ValueError("training set must contain at least one point")
        for x, y in normalized:
            if not (math.isfinite(x) and math.isfinite(y)):
                raise ValueError(f"training point ({x}, {y}) is not finite")
        object.__setattr__(self, "points", normalized)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[tuple[float, float]]:
        return iter(self.points)


class Network:
    """Feedforward network where every non-input neuron applies tanh.

    ``weights[l][j][i]`` connects neuron ``i`` of layer ``l`` to neuron ``j``
    of layer ``l + 1``; ``biases[l][j]`` is the matching bias.  The layout is
    fixed at construction, the parameter values are mutable.
    """

    __slots__ = ("layer_sizes", "weights", "biases", "_n_params")

    def __init__(
        self,
        layer_sizes: Sequence[int],
        weights: Sequence[Sequence[Sequence[float]]],
        biases: Sequence[Sequence[float]],
    ) -> None:
        sizes = tuple(layer_sizes)
        if len(sizes) < 2:
            raise ValueError("a network needs an input layer and at least one other layer")
        for size in sizes:
            if isinstance(size, bool) or not isinstance(size, int) or size < 1:
                raise ValueError(f"layer sizes must be positive integers, got {sizes}")
        if len(weights) != len(sizes) - 1 or len(biases) != len(sizes) - 1:
            raise ValueError("one weight matrix and one bias vector per non-input layer required")

        own_weights: list[list[list[float]]] = []
        own_biases: list[list[float]] = []
        for layer, (matrix, vector) in enumerate(zip(weights, biases)):
            n_in, n_out = sizes[layer], sizes[layer + 1]
            rows = [list(map(float, row)) for row in matrix]
            bias_row = list(map(float, vector))
            if len(rows) != n_out or any(len(row) != n_in for row in rows):
                raise ValueError(
                    f"weight matrix for layer {layer + 1} must be {n_out}x{n_in}"
                )
            if len(bias_row) != n_out:
                raise ValueError(f"bias vector for layer {layer + 1} must have {n_out} entries")
            for row in rows:
                for value in row:
                    if not math.isfinite(value):
                        raise ValueError("network weights must be finite")
            for value in bias_row:
                if not math.isfinite(value):
                    raise ValueError("network biases must be finite")
            own_weights.append(rows)
            own_biases.append(bias_row)

        self.layer_sizes = sizes
        self.weights = own_weights
        self.biases = own_biases
        self._n_params = sum((sizes[l] + 1) * sizes[l + 1] for l in range(len(sizes) - 1))

    # ------------------------------------------------------------------
    # construction helpers
    # ------------------------------------------------------------------

    @classmethod
    def zeros(cls, layer_sizes: Sequence[int]) -> "Network":
        sizes = tuple(layer_sizes)
        weights = [
            [[0.0] * sizes[l] for _ in range(sizes[l + 1])] for l in range(len(sizes) - 1)
        ]
        biases = [[0.0] * sizes[l + 1] for l in range(len(sizes) - 1)]
        return cls(sizes, weights, biases)

    @classmethod
    def from_flat(cls, layer_sizes: Sequence[int], values: Sequence[float]) -> "Network":
        """Build a network from parameters in canonical order."""
        net = cls.zeros(layer_sizes)
        net.set_params(values)
        return net

    def copy(self) -> "Network":
        clone = object.__new__(Network)
        clone.layer_sizes = self.layer_sizes
        clone.weights = [[list(row) for row in matrix] for matrix in self.weights]
        clone.biases = [list(vector) for vector in self.biases]
        clone._n_params = self._n_params
        return clone

    # ------------------------------------------------------------------
    # flat parameter view (canonical order)
    # ------------------------------------------------------------------

    @property
    def n_params(self) -> int:
        return self._n_params

    def iter_params(self) -> Iterator[float]:
        for matrix, vector in zip(self.weights, self.biases):
            for row, bias in zip(matrix, vector):
                yield from row
                yield bias

    def set_params(self, values: Sequence[float]) -> None:
        values = list(values)
        if len(values) != self._n_params:
            raise ValueError(f"expected {self._n_params} parameters, got {len(values)}")
        pos = 0
        for matrix, vector in zip(self.weights, self.biases):
            for j, row in enumerate(matrix):
                n_in = len(row)
                for i in range(n_in):
                    value = float(values[pos + i])
                    if not math.isfinite(value):
                        raise ValueError("network weights must be finite")
                    row[i] = value
                bias = float(values[pos + n_in])
                if not math.isfinite(bias):
                    raise ValueError("network biases must be finite")
                vector[j] = bias
                pos += n_in + 1

    def _locate(self, index: int) -> tuple[int, int, int]:
        if not 0 <= index < self._n_params:
            raise IndexError(f"parameter index {index} out of range")
        remaining = index
        for layer, matrix in enumerate(self.weights):
            per_neuron = len(matrix[0]) + 1
            in_layer = len(matrix) * per_neuron
            if remaining < in_layer:
                neuron, slot = divmod(remaining, per_neuron)
                return layer, neuron, slot
            remaining -= in_layer
        raise IndexError(f"parameter index {index} out of range")

    def get_param(self, index: int) -> float:
        layer, neuron, slot = self._locate(index)
        row = self.weights[layer][neuron]
        return row[slot] if slot < len(row) else self.biases[layer][neuron]

    def set_param(self, index: int, value: float) -> None:
        if not math.isfinite(value):
            raise ValueError("network parameters must be finite")
        layer, neuron, slot = self._locate(index)
        row = self.weights[layer][neuron]
        if slot < len(row):
            row[slot] = float(value)
        else:
            self.biases[layer][neuron] = float(value)

    def params_equal(self, other: "Network") -> bool:
        return self.layer_sizes == other.layer_sizes and list(self.iter_params()) == list(
            other.iter_params()
        )

    def within_bounds(self, bounds: WeightBounds) -> bool:
        return all(bounds.contains(value) for value in self.iter_params())

    # ------------------------------------------------------------------
    # evaluation
    # ------------------------------------------------------------------

    def forward(self, x: float) -> float:
        """Activation of the single output neuron for scalar input ``x``."""
        if isinstance(x, bool) or not isinstance(x, (int, float)):
            raise ValueError(f"input must be a real number, got {x!r}")
        x = float(x)
        if not math.isfinite(x):
            raise ValueError(f"input must be finite, got {x}")
        if self.layer_sizes[0] != 1:
            raise ValueError("scalar evaluation requires exactly one input neuron")
        if self.layer_sizes[-1] != 1:
            raise ValueError("scalar evaluation requires exactly one output neuron")
        activations = [x]
        for matrix, vector in zip(self.weights, self.biases):
            activations = [
                math.tanh(sum(w * a for w, a in zip(row, activations)) + bias)
                for row, bias in zip(matrix, vector)
            ]
        return activations[0]

    def __repr__(self) -> str:
        return f"Network(layer_sizes={self.layer_sizes})"


def random_network(layer_sizes: Sequence[int], bounds: WeightBounds, rng: Prng) -> Network:
    """Network with every parameter drawn uniformly from ``bounds``.

    Draw order is the canonical parameter order: layer by layer, neuron by
    neuron, the neuron's incoming weights and then its bias.  One
    ``next_unit`` draw is consumed per parameter.
    """
    net = Network.zeros(layer_sizes)
    lo, width = bounds.min, bounds.width
    for matrix, vector in zip(net.weights, net.biases):
        for j, row in enumerate(matrix):
            for i in range(len(row)):
                row[i] = lo + rng.next_unit() * width
            vector[j] = lo + rng.next_unit() * width
    return net


def rms_error(net: Network, data: TrainingSet) -> float:
    """Root mean square residual of the network over ``data``."""
    points = data.points if isinstance(data, TrainingSet) else tuple(data)
    if not points:
        raise ValueError("cannot compute RMS error over an empty data set")
    total = 0.0
    for x, y in points:
        residual = net.forward(x) - y
        total += residual * residual
    return math.sqrt(total / len(points))


# ----------------------------------------------------------------------
# flat text serialization: header with layer sizes, one parameter per line
# ----------------------------------------------------------------------


def network_to_text(net: Network) -> str:
    lines = [" ".join(str(size) for size in net.layer_sizes)]
    lines.extend(format(value, ".17g") for value in net.iter_params())
    return "\n".join(lines) + "\n"


def network_from_text(text: str) -> Network:
    lines = [line.strip() for line in text.splitlines() if line.strip()]
    if not lines:
        raise ValueError("empty network file")
    try:
        sizes = tuple(int(token) for token in lines[0].split())
    except ValueError:
        raise ValueError(f"malformed layer-size header: {lines[0]!r}") from None
    net = Network.zeros(sizes)
    values = []
    for lineno, line in enumerate(lines[1:], start=2):
        try:
            values.append(float(line))
        except ValueError:
            raise ValueError(f"line {lineno}: expected a parameter value, got {line!r}") from None
    if len(values) != net.n_params:
        raise ValueError(f"expected {net.n_params} parameters for layers {sizes}, got {len(values)}")
    net.set_params(values)
    return net


def save_network(net: Network, path) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as handle:
        handle.write(network_to_text(net))


def load_network(path) -> Network:
    with open(path, "r", encoding="ascii") as handle:
        return network_from_text(handle.read())
