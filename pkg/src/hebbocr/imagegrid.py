"""Plain PNM ingestion and fixed-grid bipolar feature extraction.

Grids are 2-D boolean numpy arrays where ``True`` marks an ink cell.
Feature vectors are 1-D ``int8`` arrays holding +1 (ink) and -1 (background).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    MalformedHeader,
    NoInk,
    TruncatedData,
    ValueOutOfRange,
)

INK = True
BACKGROUND = False

DEFAULT_GRID = (16, 16)
DEFAULT_THRESHOLD = 0.5

# P1 files carry no maxval; bit 1 (black) becomes 0 and bit 0 becomes this.
PBM_MAXVAL = 255


@dataclass(frozen=True, eq=False)
class RasterImage:
    """Grayscale image with row-major ``pixels`` of shape (height, width)."""

    width: int
    height: int
    maxval: int
    pixels: np.ndarray

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise MalformedHeader(f"bad dimensions {self.width}x{self.height}")
        if not 1 <= self.maxval <= 65535:
            raise MalformedHeader(f"maxval {self.maxval} outside 1..65535")
        if self.pixels.shape != (self.height, self.width):
            raise DimensionMismatch(
                f"pixels shape {self.pixels.shape} != {(self.height, self.width)}"
            )
        if self.pixels.size and int(self.pixels.max()) > self.maxval:
            raise ValueOutOfRange(f"pixel above maxval {self.maxval}")

    def __eq__(self, other):
        if not isinstance(other, RasterImage):
            return NotImplemented
        return (
            self.width == other.width
            and self.height == other.height
            and self.maxval == other.maxval
            and np.array_equal(self.pixels, other.pixels)
        )


def _tokens(text: str):
    """Yield whitespace-separated tokens, dropping ``#`` comments to end of line."""
    for line in text.splitlines():
        line = line.split("#", 1)[0]
        yield from line.split()


def _int_token(tok: str, what: str) -> int:
    if not tok.isdigit():
        raise MalformedHeader(f"expected integer {what}, got {tok!r}")
    return int(tok)


def parse_pnm(data: bytes) -> RasterImage:
    """Parse a plain-text P1 (bitmap) or P2 (graymap) file.

    In P1, a ``1`` is black and maps to pixel value 0, a ``0`` maps to 255.
    P1 bits may be packed without separating whitespace.
    """
    try:
        text = data.decode("ascii")
    except UnicodeDecodeError as exc:
        raise MalformedHeader("PNM data is not ASCII") from exc

    tokens = _tokens(text)
    magic = next(tokens, None)
    if magic not in ("P1", "P2"):
        raise MalformedHeader(f"unsupported magic {magic!r}")
    try:
        width = _int_token(next(tokens), "width")
        height = _int_token(next(tokens), "height")
        maxval = PBM_MAXVAL if magic == "P1" else _int_token(next(tokens), "maxval")
    except StopIteration:
        raise MalformedHeader("header ends before dimensions") from None
    if width < 1 or height < 1:
        raise MalformedHeader(f"bad dimensions {width}x{height}")
    if not 1 <= maxval <= 65535:
        raise MalformedHeader(f"maxval {maxval} outside 1..65535")

    count = width * height
    values: list[int] = []
    if magic == "P1":
        for tok in tokens:
            for ch in tok:
                if ch not in "01":
                    raise ValueOutOfRange(f"bad bit {ch!r}")
                values.append(0 if ch == "1" else PBM_MAXVAL)
            if len(values) >= count:
                break
    else:
        for tok in tokens:
            if not tok.isdigit():
                raise ValueOutOfRange(f"bad sample {tok!r}")
            v = int(tok)
            if v > maxval:
                raise ValueOutOfRange(f"sample {v} exceeds maxval {maxval}")
            values.append(v)
            if len(values) == count:
                break
    if len(values) < count:
        raise TruncatedData(f"expected {count} samples, found {len(values)}")

    pixels = np.array(values[:count], dtype=np.int64).reshape(height, width)
    return RasterImage(width, height, maxval, pixels)


def format_pbm(grid: np.ndarray) -> bytes:
    """Serialize a grid as plain P1, one text row per grid row."""
    rows, cols = grid.shape
    lines = ["P1", f"{cols} {rows}"]
    lines += [" ".join("1" if c else "0" for c in row) for row in grid]
    return ("\n".join(lines) + "\n").encode("ascii")


def binarize(img: RasterImage, threshold: float = DEFAULT_THRESHOLD) -> np.ndarray:
    """Mark pixels darker than ``threshold * maxval`` as ink."""
    if not 0.0 <= threshold <= 1.0:
        raise ValueError(f"threshold {threshold} outside [0, 1]")
    return img.pixels < threshold * img.maxval


def crop_to_bounding_box(grid: np.ndarray) -> np.ndarray:
    rows = np.flatnonzero(grid.any(axis=1))
    if rows.size == 0:
        raise NoInk("grid has no ink cells")
    cols = np.flatnonzero(grid.any(axis=0))
    return grid[rows[0] : rows[-1] + 1, cols[0] : cols[-1] + 1].copy()


def _block_edges(src: int, dst: int) -> list[tuple[int, int]]:
    edges = []
    for i in range(dst):
        lo = i * src // dst
        hi = (i + 1) * src // dst
        edges.append((lo, max(hi, lo + 1)))
    return edges


def resample_to_grid(grid: np.ndarray, rows: int, cols: int) -> np.ndarray:
    """Block-majority resampling; a tied block resolves to ink.

    When upsampling, an empty block is widened to the single nearest source
    cell at its lower edge.
    """
    if rows < 1 or cols < 1:
        raise ValueError("target grid must be at least 1x1")
    if grid.size == 0:
        raise ValueError("cannot resample an empty grid")
    src_r, src_c = grid.shape
    out = np.zeros((rows, cols), dtype=bool)
    col_edges = _block_edges(src_c, cols)
    for r, (r0, r1) in enumerate(_block_edges(src_r, rows)):
        for c, (c0, c1) in enumerate(col_edges):
            block = grid[r0:r1, c0:c1]
            out[r, c] = 2 * int(block.sum()) >= block.size
    return out


def to_feature_vector(grid: np.ndarray, shape: tuple[int, int] | None = None) -> np.ndarray:
    if shape is not None and grid.shape != tuple(shape):
        raise DimensionMismatch(f"grid {grid.shape} != configured {tuple(shape)}")
    return np.where(grid.ravel(), 1, -1).astype(np.int8)


def from_feature_vector(vec: np.ndarray, shape: tuple[int, int]) -> np.ndarray:
    vec = np.asarray(vec)
    if vec.size != shape[0] * shape[1]:
        raise DimensionMismatch(f"vector length {vec.size} != {shape[0]}x{shape[1]}")
    if not np.all(np.abs(vec) == 1):
        raise ValueError("feature vector must be bipolar")
    return (vec > 0).reshape(shape)


def extract_features(
    img: RasterImage,
    grid: tuple[int, int] = DEFAULT_GRID,
    threshold: float = DEFAULT_THRESHOLD,
) -> np.ndarray:
    """binarize -> crop -> resample -> flatten. Raises NoInk on blank images."""
    cells = crop_to_bounding_box(binarize(img, threshold))
    return to_feature_vector(resample_to_grid(cells, *grid), grid)
