"""Grayscale image export of slot patterns and overlap intensities.

PGM (binary P5, maxval 255) is the bit-exact golden format; PNG carries
the identical 8-bit payload for viewing.  Slot states map to fixed gray
levels -- dark 0, bright 255, horizontal 255, vertical 128 -- which is
lossless to invert once the coding scheme is known, since bright and
polarized states never share a scheme.  Overlap intensities are scaled
by 255 over the scheme's full word signal.
"""

from pathlib import Path

import numpy as np
from PIL import Image

from .bars import OverlapImage, PatternImage
from .coding import CodingScheme, SlotState

FORMATS = ("pgm", "png")

_PATTERN_GRAY = np.array([0, 255, 255, 128], dtype=np.uint8)  # DARK, BRIGHT, H, V


def pattern_to_gray(pattern: PatternImage) -> np.ndarray:
    return _PATTERN_GRAY[pattern.rows]


def overlap_to_gray(img: OverlapImage) -> np.ndarray:
    scale = 255.0 / img.scheme.signal_level
    return np.clip(np.rint(img.intensities * scale), 0, 255).astype(np.uint8)


def gray_to_slots(gray: np.ndarray, scheme: CodingScheme) -> np.ndarray:
    """Invert the pattern gray mapping for a known scheme."""
    lit = SlotState.H if scheme.uses_polarization else SlotState.BRIGHT
    slots = np.full(gray.shape, SlotState.DARK, dtype=np.uint8)
    slots[gray == 255] = lit
    slots[gray == 128] = SlotState.V
    bad = ~np.isin(gray, (0, 128, 255))
    if bad.any():
        raise ValueError(f"gray level {int(gray[bad][0])} is not a slot level")
    return slots


def write_pgm(gray: np.ndarray, path) -> None:
    h, w = gray.shape
    header = f"P5\n{w} {h}\n255\n".encode("ascii")
    Path(path).write_bytes(header + np.ascontiguousarray(gray, dtype=np.uint8).tobytes())


def read_pgm(path) -> np.ndarray:
    data = Path(path).read_bytes()
    fields = []
    pos = 0
    while len(fields) < 4:
        while pos < len(data) and data[pos : pos + 1].isspace():
            pos += 1
        if data[pos : pos + 1] == b"#":  # comment line
            pos = data.index(b"\n", pos) + 1
            continue
        start = pos
        while pos < len(data) and not data[pos : pos + 1].isspace():
            pos += 1
        fields.append(data[start:pos])
    if fields[0] != b"P5":
        raise ValueError("not a binary PGM file")
    w, h, maxval = int(fields[1]), int(fields[2]), int(fields[3])
    if maxval != 255:
        raise ValueError(f"unsupported maxval {maxval}")
    pos += 1  # single whitespace after maxval
    return np.frombuffer(data, dtype=np.uint8, count=w * h, offset=pos).reshape(h, w)


def write_png(gray: np.ndarray, path) -> None:
    Image.fromarray(np.ascontiguousarray(gray, dtype=np.uint8), mode="L").save(
        path, format="PNG"
    )


def read_gray(path) -> np.ndarray:
    path = Path(path)
    if path.suffix.lower() == ".pgm":
        return read_pgm(path)
    with Image.open(path) as img:
        return np.asarray(img.convert("L"))


def write_gray(gray: np.ndarray, fmt: str, path) -> None:
    if fmt == "pgm":
        write_pgm(gray, path)
    elif fmt == "png":
        write_png(gray, path)
    else:
        raise ValueError(f"unknown image format {fmt!r}; expected one of {FORMATS}")


def write_pattern_image(pattern: PatternImage, fmt: str, path) -> None:
    write_gray(pattern_to_gray(pattern), fmt, path)


def write_overlap_image(img: OverlapImage, fmt: str, path) -> None:
    write_gray(overlap_to_gray(img), fmt, path)


def read_pattern_image(path, scheme: CodingScheme) -> np.ndarray:
    """Read back a pattern image into a slot-state grid."""
    return gray_to_slots(read_gray(path), scheme)
