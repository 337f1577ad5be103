#!/usr/bin/env python3
"""Regenerate the 512x512 natural-image PPM fixtures under tests/data/natural.

Sources are the sample photographs bundled with scikit-image. Non-square
images are center-cropped, then resampled to 512x512 with Lanczos.
"""
import pathlib
import sys

import numpy as np
import skimage.data as data
from PIL import Image

SOURCES = ["astronaut", "chelsea", "coffee", "immunohistochemistry", "rocket", "motorcycle_left"]


def square_512(rgb: np.ndarray) -> Image.Image:
    h, w = rgb.shape[:2]
    side = min(h, w)
    top, left = (h - side) // 2, (w - side) // 2
    img = Image.fromarray(rgb[top:top + side, left:left + side, :3])
    if side != 512:
        img = img.resize((512, 512), Image.LANCZOS)
    return img


def main() -> int:
    out_dir = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else "tests/data/natural")
    out_dir.mkdir(parents=True, exist_ok=True)
    for name in SOURCES:
        if name == "motorcycle_left":
            rgb = data.stereo_motorcycle()[0]
        else:
            rgb = getattr(data, name)()
        img = square_512(np.asarray(rgb, dtype=np.uint8))
        pixels = np.asarray(img, dtype=np.uint8)
        with open(out_dir / f"{name}.ppm", "wb") as f:
            f.write(b"P6\n512 512\n255\n")
            f.write(pixels.tobytes())
        print(out_dir / f"{name}.ppm")
    return 0


if __name__ == "__main__":
    sys.exit(main())
