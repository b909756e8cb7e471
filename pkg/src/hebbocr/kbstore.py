"""Text persistence and structural comparison of knowledge bases.

File layout (UTF-8, LF)::

    HEBBKB 1
    grid <rows> <cols>
    regime <ONE_VS_REST|POSITIVE_ONLY>
    epochs <count>
    classes <count>
    neuron <name> bias <int>        # one pair per class, sorted by label
    weights <int> ... <int>
    checksum <8 hex digits>         # FNV-1a 32 over every preceding byte
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import BinaryIO

import numpy as np

from .errors import (
    ChecksumMismatch,
    DimensionMismatch,
    MalformedRecord,
    UnknownLabel,
    UnknownVersion,
)
from .hebbnet import FORMAT_VERSION, ClusterNeuron, KnowledgeBase, Regime
from .labels import label_name, parse_label_name

MAGIC = "HEBBKB"

FNV32_OFFSET = 0x811C9DC5
FNV32_PRIME = 0x01000193


def fnv1a_32(data: bytes) -> int:
    h = FNV32_OFFSET
    for b in data:
        h = ((h ^ b) * FNV32_PRIME) & 0xFFFFFFFF
    return h


def dumps_kb(kb: KnowledgeBase) -> bytes:
    lines = [
        f"{MAGIC} {kb.format_version}",
        f"grid {kb.grid_rows} {kb.grid_cols}",
        f"regime {kb.regime.value}",
        f"epochs {kb.epochs_trained}",
        f"classes {len(kb.neurons)}",
    ]
    for n in kb.neurons:
        lines.append(f"neuron {label_name(n.label)} bias {n.bias}")
        lines.append("weights " + " ".join(str(int(w)) for w in n.weights))
    body = ("\n".join(lines) + "\n").encode("utf-8")
    return body + f"checksum {fnv1a_32(body):08x}\n".encode("ascii")


def save_kb(kb: KnowledgeBase, sink: BinaryIO) -> int:
    data = dumps_kb(kb)
    sink.write(data)
    return len(data)


def _fields(line: str, key: str, count: int) -> list[str]:
    parts = line.split(" ")
    if len(parts) != count + 1 or parts[0] != key:
        raise MalformedRecord(f"expected {key!r} record, got {line!r}")
    return parts[1:]


def _int(tok: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise MalformedRecord(f"not an integer: {tok!r}") from None


def loads_kb(data: bytes) -> KnowledgeBase:
    if not data.endswith(b"\n"):
        raise MalformedRecord("file must end with a newline")
    cut = data.rfind(b"checksum ")
    if cut < 0:
        raise MalformedRecord("missing checksum line")
    body, trailer = data[:cut], data[cut:-1]
    stored = trailer[len(b"checksum "):].decode("ascii", "replace")
    if len(stored) != 8 or any(c not in "0123456789abcdef" for c in stored):
        raise MalformedRecord(f"bad checksum field {stored!r}")
    actual = fnv1a_32(body)
    if int(stored, 16) != actual:
        raise ChecksumMismatch(f"stored {stored}, computed {actual:08x}")
    if not body.endswith(b"\n"):
        raise MalformedRecord("checksum must start its own line")

    try:
        lines = body.decode("utf-8").split("\n")[:-1]
    except UnicodeDecodeError:
        raise MalformedRecord("body is not UTF-8") from None
    if len(lines) < 5:
        raise MalformedRecord("header truncated")
    magic, version = (lines[0].split(" ") + [""])[:2]
    if magic != MAGIC:
        raise MalformedRecord(f"bad magic {lines[0]!r}")
    if _int(version) != FORMAT_VERSION:
        raise UnknownVersion(version)
    rows, cols = (_int(t) for t in _fields(lines[1], "grid", 2))
    if rows < 1 or cols < 1:
        raise MalformedRecord(f"bad grid {rows}x{cols}")
    (regime_name,) = _fields(lines[2], "regime", 1)
    try:
        regime = Regime(regime_name)
    except ValueError:
        raise MalformedRecord(f"unknown regime {regime_name!r}") from None
    epochs = _int(_fields(lines[3], "epochs", 1)[0])
    count = _int(_fields(lines[4], "classes", 1)[0])
    if epochs < 0 or count < 0:
        raise MalformedRecord("negative count")
    if len(lines) != 5 + 2 * count:
        raise MalformedRecord(f"expected {count} neuron records")

    neurons = []
    prev = None
    for i in range(count):
        name, bias_key, bias = _fields(lines[5 + 2 * i], "neuron", 3)
        if bias_key != "bias":
            raise MalformedRecord(lines[5 + 2 * i])
        try:
            label = parse_label_name(name)
        except UnknownLabel:
            raise MalformedRecord(f"bad label {name!r}") from None
        if prev is not None and label <= prev:
            raise MalformedRecord("neurons not sorted by label")
        prev = label
        wline = lines[6 + 2 * i]
        if wline != "weights" and not wline.startswith("weights "):
            raise MalformedRecord(f"expected weights record, got {wline[:40]!r}")
        toks = wline.split(" ")[1:] if wline != "weights" else []
        if len(toks) != rows * cols:
            raise DimensionMismatch(
                f"{name}: {len(toks)} weights for a {rows}x{cols} grid"
            )
        weights = np.array([_int(t) for t in toks], dtype=np.int64)
        neurons.append(ClusterNeuron(label, weights, _int(bias)))
    return KnowledgeBase(rows, cols, regime, epochs, tuple(neurons))


def load_kb(source: BinaryIO) -> KnowledgeBase:
    return loads_kb(source.read())


@dataclass(frozen=True)
class KbDiff:
    """Per-label deltas are None where weight vectors differ in length."""

    shared_labels: tuple[str, ...]
    only_left: tuple[str, ...]
    only_right: tuple[str, ...]
    per_label_max_abs_delta: dict[str, int | None]
    metadata_equal: bool
    epochs_left: int
    epochs_right: int

    @property
    def incomparable(self) -> tuple[str, ...]:
        return tuple(l for l, d in self.per_label_max_abs_delta.items() if d is None)

    @property
    def identical(self) -> bool:
        return (
            self.metadata_equal
            and self.epochs_left == self.epochs_right
            and not self.only_left
            and not self.only_right
            and all(d == 0 for d in self.per_label_max_abs_delta.values())
        )


def diff_kb(left: KnowledgeBase, right: KnowledgeBase) -> KbDiff:
    lset, rset = set(left.labels), set(right.labels)
    shared = tuple(sorted(lset & rset))
    deltas: dict[str, int | None] = {}
    for label in shared:
        a, b = left.neuron(label), right.neuron(label)
        if a.weights.shape != b.weights.shape:
            deltas[label] = None
            continue
        d = abs(a.bias - b.bias)
        if a.weights.size:
            d = max(d, int(np.abs(a.weights - b.weights).max()))
        deltas[label] = d
    return KbDiff(
        shared_labels=shared,
        only_left=tuple(sorted(lset - rset)),
        only_right=tuple(sorted(rset - lset)),
        per_label_max_abs_delta=deltas,
        metadata_equal=(
            (left.grid_rows, left.grid_cols, left.regime)
            == (right.grid_rows, right.grid_cols, right.regime)
        ),
        epochs_left=left.epochs_trained,
        epochs_right=right.epochs_trained,
    )


def format_diff(diff: KbDiff) -> str:
    """Aligned human-readable rendering used by the command line."""
    if diff.identical:
        return "identical\n"
    out = [
        f"metadata_equal  {'yes' if diff.metadata_equal else 'no'}",
        f"epochs          {diff.epochs_left} vs {diff.epochs_right}",
        f"only_left       {' '.join(label_name(l) for l in diff.only_left) or '-'}",
        f"only_right      {' '.join(label_name(l) for l in diff.only_right) or '-'}",
        "label           max_abs_delta",
    ]
    for label in diff.shared_labels:
        d = diff.per_label_max_abs_delta[label]
        out.append(f"{label_name(label):<15} {'incomparable' if d is None else d}")
    return "\n".join(out) + "\n"
