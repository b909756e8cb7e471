"""Bank of per-class membership neurons trained with the additive Hebb rule.

Each neuron answers "does this pattern belong to my class?". Training adds
``input * target`` to the weights and ``target`` to the bias (a weight on a
constant +1 input). All arithmetic is exact integer.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionMismatch, UnknownLabel
from .labels import CLASS_INDEX

FORMAT_VERSION = 1


class Regime(enum.Enum):
    ONE_VS_REST = "ONE_VS_REST"
    POSITIVE_ONLY = "POSITIVE_ONLY"


@dataclass(frozen=True, eq=False)
class ClusterNeuron:
    label: str
    weights: np.ndarray
    bias: int = 0

    def __eq__(self, other):
        if not isinstance(other, ClusterNeuron):
            return NotImplemented
        return (
            self.label == other.label
            and self.bias == other.bias
            and self.weights.shape == other.weights.shape
            and np.array_equal(self.weights, other.weights)
        )


@dataclass(frozen=True)
class TrainingSample:
    label: str
    input: np.ndarray


@dataclass(frozen=True, eq=False)
class KnowledgeBase:
    """Immutable neuron bank. Neurons are kept sorted by label code point."""

    grid_rows: int
    grid_cols: int
    regime: Regime
    epochs_trained: int
    neurons: tuple[ClusterNeuron, ...]
    format_version: int = FORMAT_VERSION
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        neurons = tuple(sorted(self.neurons, key=lambda n: n.label))
        labels = [n.label for n in neurons]
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate neuron labels in {labels}")
        for n in neurons:
            if n.weights.shape != (self.n_features,):
                raise DimensionMismatch(
                    f"neuron {n.label!r} has {n.weights.size} weights, "
                    f"grid needs {self.n_features}"
                )
        object.__setattr__(self, "neurons", neurons)
        object.__setattr__(self, "_index", {l: i for i, l in enumerate(labels)})

    @property
    def n_features(self) -> int:
        return self.grid_rows * self.grid_cols

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(n.label for n in self.neurons)

    def neuron(self, label: str) -> ClusterNeuron:
        try:
            return self.neurons[self._index[label]]
        except KeyError:
            raise UnknownLabel(label) from None

    def weight_matrix(self) -> np.ndarray:
        if not self.neurons:
            return np.zeros((0, self.n_features), dtype=np.int64)
        return np.stack([n.weights for n in self.neurons])

    def bias_vector(self) -> np.ndarray:
        return np.array([n.bias for n in self.neurons], dtype=np.int64)

    def __eq__(self, other):
        if not isinstance(other, KnowledgeBase):
            return NotImplemented
        return (
            self.grid_rows == other.grid_rows
            and self.grid_cols == other.grid_cols
            and self.regime == other.regime
            and self.epochs_trained == other.epochs_trained
            and self.format_version == other.format_version
            and self.neurons == other.neurons
        )


@dataclass(frozen=True)
class Decision:
    """``label`` is None when the pattern is unrecognized."""

    label: str | None
    net_inputs: dict[str, int]

    @property
    def recognized(self) -> bool:
        return self.label is not None


def init_zero(
    labels: Iterable[str],
    n: int | None = None,
    regime: Regime = Regime.ONE_VS_REST,
    grid: tuple[int, int] | None = None,
) -> KnowledgeBase:
    """Zero knowledge base. Give either a feature length ``n`` (stored as a
    1 x n grid) or an explicit ``grid``."""
    labels = list(labels)
    if not labels:
        raise ValueError("need at least one label")
    if len(set(labels)) != len(labels):
        raise ValueError(f"duplicate labels in {labels}")
    for label in labels:
        if label not in CLASS_INDEX:
            raise UnknownLabel(label)
    if grid is None:
        if n is None:
            raise ValueError("need a feature length or a grid")
        grid = (1, n)
    elif n is not None and n != grid[0] * grid[1]:
        raise DimensionMismatch(f"n={n} does not match grid {grid}")
    if grid[0] < 1 or grid[1] < 1:
        raise ValueError("feature length must be >= 1")
    size = grid[0] * grid[1]
    neurons = tuple(ClusterNeuron(l, np.zeros(size, dtype=np.int64), 0) for l in labels)
    return KnowledgeBase(grid[0], grid[1], Regime(regime), 0, neurons)


def _check_input(x, n: int) -> np.ndarray:
    x = np.asarray(x, dtype=np.int64)
    if x.shape != (n,):
        raise DimensionMismatch(f"input length {x.size} != {n}")
    return x


def hebb_update(neuron: ClusterNeuron, input, target: int) -> ClusterNeuron:
    if target not in (1, -1):
        raise ValueError(f"target must be +1 or -1, got {target}")
    x = _check_input(input, neuron.weights.size)
    return ClusterNeuron(neuron.label, neuron.weights + target * x, neuron.bias + target)


def _target_matrix(kb: KnowledgeBase, labels: Sequence[str]) -> np.ndarray:
    """(classes, samples) matrix of targets; 0 means the sample is skipped."""
    member = np.array([[s == k for s in labels] for k in kb.labels], dtype=bool)
    member = member.reshape(len(kb.labels), len(labels))
    if kb.regime is Regime.ONE_VS_REST:
        return np.where(member, 1, -1).astype(np.int64)
    return member.astype(np.int64)


def train_epoch(kb: KnowledgeBase, samples: Sequence[TrainingSample]) -> KnowledgeBase:
    n = kb.n_features
    for s in samples:
        if s.label not in kb._index:
            raise UnknownLabel(s.label)
    if not samples:
        return replace(kb, epochs_trained=kb.epochs_trained + 1)
    x = np.stack([_check_input(s.input, n) for s in samples])
    t = _target_matrix(kb, [s.label for s in samples])
    weights = kb.weight_matrix() + t @ x
    biases = kb.bias_vector() + t.sum(axis=1)
    neurons = tuple(
        ClusterNeuron(label, weights[i].copy(), int(biases[i]))
        for i, label in enumerate(kb.labels)
    )
    return replace(kb, neurons=neurons, epochs_trained=kb.epochs_trained + 1)


def train(kb: KnowledgeBase, samples: Sequence[TrainingSample], epochs: int = 1) -> KnowledgeBase:
    """Repeat ``train_epoch``. Since the update is additive, the result from a
    zero start is exactly ``epochs`` times the one-epoch weights."""
    if epochs < 1:
        raise ValueError("epochs must be >= 1")
    for _ in range(epochs):
        kb = train_epoch(kb, samples)
    return kb


def net_input(neuron: ClusterNeuron, input) -> int:
    x = _check_input(input, neuron.weights.size)
    return int(neuron.bias + neuron.weights @ x)


def classify(kb: KnowledgeBase, input) -> Decision:
    """Recognize only when one neuron holds the strictly highest, positive score."""
    if not kb.neurons:
        raise ValueError("knowledge base has no neurons")
    x = _check_input(input, kb.n_features)
    scores = kb.weight_matrix() @ x + kb.bias_vector()
    net = {label: int(s) for label, s in zip(kb.labels, scores)}
    top = scores.max()
    winners = np.flatnonzero(scores == top)
    if top > 0 and winners.size == 1:
        return Decision(kb.labels[winners[0]], net)
    return Decision(None, net)
