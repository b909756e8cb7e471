"""Feature extraction walkthrough.

A raster letter goes through binarize -> crop -> resample -> flatten and
comes out as a 256-long vector of +1 (ink) and -1 (background).

Run: python demos/01_feature_extraction.py
"""

import numpy as np

from hebbocr.glyphgen import render_glyph, template
from hebbocr.imagegrid import (
    binarize,
    crop_to_bounding_box,
    format_pbm,
    parse_pnm,
    resample_to_grid,
    to_feature_vector,
)


def show(grid, title):
    print(title)
    for row in grid:
        print("  " + "".join("#" if c else "." for c in row))
    print()


# %% A letter on a 12x12 canvas, written out and read back as plain PBM
canvas = render_glyph(template("R"), (12, 12))
img = parse_pnm(format_pbm(canvas))
print(f"parsed {img.width}x{img.height} image, maxval {img.maxval}\n")

# %% Dark pixels become ink
ink = binarize(img, threshold=0.5)
show(ink, "binarized")

# %% Empty margins are dropped, so position on the canvas does not matter
cropped = crop_to_bounding_box(ink)
show(cropped, f"cropped to {cropped.shape[0]}x{cropped.shape[1]}")

# %% Block-majority resampling to the 16x16 feature grid
fixed = resample_to_grid(cropped, 16, 16)
show(fixed, "resampled to 16x16")

# %% Bipolar vector fed to the neurons
x = to_feature_vector(fixed)
print("feature vector:", x.shape, "ink cells:", int((x == 1).sum()))
print("first row:", x[:16].tolist())

# %% Shifting the letter leaves the features unchanged
shifted = np.roll(canvas, (2, -1), axis=(0, 1))
x2 = to_feature_vector(resample_to_grid(crop_to_bounding_box(shifted), 16, 16))
print("same features after shifting:", np.array_equal(x, x2))
