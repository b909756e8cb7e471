"""Seeded synthetic letter corpus built from the bundled 8x8 templates.

Every random draw comes from splitmix64 seeded with ``seed ^ stream_index``
and is consumed in a fixed order (row shift, column shift, then one flip
draw per cell in row-major order), so corpora are reproducible bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path

import numpy as np

from .errors import CanvasTooSmall
from .imagegrid import format_pbm
from .labels import CLASS_INDEX, LABELS, label_name, parse_label_name

MASK64 = (1 << 64) - 1
TEST_STREAM_OFFSET = 1_000_000
MANIFEST_NAME = "manifest.tsv"


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def uniform(self) -> float:
        """Float in [0, 1) from the top 53 bits."""
        return (self.next() >> 11) * (1.0 / (1 << 53))

    def integer(self, lo: int, hi: int) -> int:
        """Integer in [lo, hi] by modulo reduction."""
        return lo + self.next() % (hi - lo + 1)


@dataclass(frozen=True)
class GlyphTemplate:
    label: str
    bitmap: np.ndarray


@dataclass(frozen=True)
class DistortionParams:
    flip_probability: float = 0.0
    max_shift: int = 0
    canvas: tuple[int, int] = (10, 10)
    seed: int = 0

    def __post_init__(self):
        if not 0.0 <= self.flip_probability <= 1.0:
            raise ValueError(f"flip_probability {self.flip_probability} outside [0, 1]")
        if self.max_shift < 0:
            raise ValueError("max_shift must be >= 0")
        if self.canvas[0] < 1 or self.canvas[1] < 1:
            raise ValueError("canvas must be at least 1x1")
        if not 0 <= self.seed <= MASK64:
            raise ValueError("seed must fit in 64 bits")


def _parse_templates(text: str) -> dict[str, np.ndarray]:
    out: dict[str, np.ndarray] = {}
    name, rows = None, []
    for line in text.splitlines() + [""]:
        if line.startswith("# "):
            continue
        if line and set(line) <= {"#", "."}:
            rows.append([c == "#" for c in line])
            continue
        if name is not None:
            out[parse_label_name(name)] = np.array(rows, dtype=bool)
        name, rows = (line.strip() or None), []
    return out


@lru_cache(maxsize=None)
def _template_table() -> dict[str, np.ndarray]:
    text = resources.files("hebbocr").joinpath("data/glyphs.txt").read_text("ascii")
    return _parse_templates(text)


def load_templates() -> list[GlyphTemplate]:
    table = _template_table()
    return [GlyphTemplate(label, table[label].copy()) for label in LABELS]


def template(label: str) -> GlyphTemplate:
    return GlyphTemplate(label, _template_table()[label].copy())


def render_glyph(t: GlyphTemplate, canvas: tuple[int, int]) -> np.ndarray:
    """Center the template on a blank canvas; odd slack goes bottom/right."""
    rows, cols = canvas
    th, tw = t.bitmap.shape
    if rows < th or cols < tw:
        raise CanvasTooSmall(f"canvas {rows}x{cols} smaller than template {th}x{tw}")
    out = np.zeros((rows, cols), dtype=bool)
    top, left = (rows - th) // 2, (cols - tw) // 2
    out[top : top + th, left : left + tw] = t.bitmap
    return out


def _clamp_shift(shift: int, ink_lo: int, ink_hi: int, size: int) -> int:
    return max(-ink_lo, min(size - 1 - ink_hi, shift))


def distort(g: np.ndarray, p: DistortionParams, stream_index: int) -> np.ndarray:
    """Shift by up to ``max_shift`` cells per axis, then flip cells at random.

    The shift is clamped so no ink leaves the grid.
    """
    rng = SplitMix64(p.seed ^ stream_index)
    dr = rng.integer(-p.max_shift, p.max_shift)
    dc = rng.integer(-p.max_shift, p.max_shift)

    out = g.copy()
    rows = np.flatnonzero(g.any(axis=1))
    if rows.size and (dr or dc):
        cols = np.flatnonzero(g.any(axis=0))
        dr = _clamp_shift(dr, rows[0], rows[-1], g.shape[0])
        dc = _clamp_shift(dc, cols[0], cols[-1], g.shape[1])
        out = np.zeros_like(g)
        r0, r1 = rows[0], rows[-1] + 1
        c0, c1 = cols[0], cols[-1] + 1
        out[r0 + dr : r1 + dr, c0 + dc : c1 + dc] = g[r0:r1, c0:c1]

    p_flip = p.flip_probability
    flips = np.array([rng.uniform() < p_flip for _ in range(out.size)], dtype=bool)
    return out ^ flips.reshape(out.shape)


def stream_index(set_index: int, label: str, test: bool = False) -> int:
    return set_index * len(LABELS) + CLASS_INDEX[label] + (TEST_STREAM_OFFSET if test else 0)


def generate_dataset(
    train_sets: int,
    test_sets: int,
    p: DistortionParams,
    out_dir: str | Path,
    force: bool = False,
) -> list[tuple[str, str, int, int]]:
    """Write ``train/`` and ``test/`` P1 files plus a manifest under ``out_dir``.

    Returns the manifest entries ``(relative path, label name, set, stream)``.
    Refuses to overwrite an existing manifest unless ``force`` is set.
    """
    if train_sets < 1 or test_sets < 1:
        raise ValueError("need at least one train and one test set")
    out_dir = Path(out_dir)
    manifest_path = out_dir / MANIFEST_NAME
    if manifest_path.exists() and not force:
        raise FileExistsError(f"{manifest_path} exists; pass force to overwrite")

    templates = load_templates()
    entries = []
    for split, n_sets in (("train", train_sets), ("test", test_sets)):
        (out_dir / split).mkdir(parents=True, exist_ok=True)
        for s in range(n_sets):
            for t in templates:
                name = label_name(t.label)
                idx = stream_index(s, t.label, test=split == "test")
                grid = distort(render_glyph(t, p.canvas), p, idx)
                rel = f"{split}/{name}_{s:02d}.pbm"
                (out_dir / rel).write_bytes(format_pbm(grid))
                entries.append((rel, name, s, idx))

    header = [
        f"# flip_probability={p.flip_probability!r}",
        f"# max_shift={p.max_shift}",
        f"# canvas={p.canvas[0]}x{p.canvas[1]}",
        f"# seed={p.seed}",
        f"# train_sets={train_sets}",
        f"# test_sets={test_sets}",
    ]
    body = [f"{rel}\t{name}\t{s}\t{idx}" for rel, name, s, idx in entries]
    manifest_path.write_text("\n".join(header + body) + "\n", encoding="utf-8")
    return entries


def read_manifest(path: str | Path) -> list[tuple[str, str, int, int]]:
    entries = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if not line or line.startswith("#"):
            continue
        rel, name, s, idx = line.split("\t")
        entries.append((rel, name, int(s), int(idx)))
    return entries
