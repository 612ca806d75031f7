#!/usr/bin/env python3
"""Regenerates the bundled test images in testdata/ from scikit-image sample data.

camera (CC0, Lav Varshney), chelsea (CC0, Stefan van der Walt) and
immunohistochemistry (no known copyright restrictions) are converted to
binary PGM/PPM at the sizes the test suites use.
"""
import pathlib

import numpy as np
from skimage import data, transform

OUT = pathlib.Path(__file__).resolve().parent.parent / "testdata"


def write_pnm(path, img):
    img = np.ascontiguousarray(img, dtype=np.uint8)
    magic = b"P5" if img.ndim == 2 else b"P6"
    h, w = img.shape[:2]
    path.write_bytes(magic + b"\n%d %d\n255\n" % (w, h) + img.tobytes())


def resize(img, size):
    out = transform.resize(img, (size, size), anti_aliasing=True, preserve_range=True)
    return np.clip(np.rint(out), 0, 255).astype(np.uint8)


def main():
    OUT.mkdir(exist_ok=True)
    camera = data.camera()
    write_pnm(OUT / "camera512.pgm", camera)
    write_pnm(OUT / "camera256.pgm", resize(camera, 256))
    write_pnm(OUT / "camera250.pgm", camera[131:381, 131:381])

    ihc = data.immunohistochemistry()
    write_pnm(OUT / "ihc512.ppm", ihc)
    write_pnm(OUT / "ihc256.ppm", resize(ihc, 256))

    chelsea = data.chelsea()
    write_pnm(OUT / "chelsea250.ppm", chelsea[25:275, 100:350])


if __name__ == "__main__":
    main()
