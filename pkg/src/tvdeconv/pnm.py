"""Portable graymap I/O: 8-bit P2 (ASCII) and P5 (binary) files."""

import numpy as np


class PnmError(ValueError):
    """Malformed or unsupported graymap data."""


def _parse_int(token, what):
    try:
        return int(token)
    except ValueError:
        raise PnmError(f"bad {what}: {token!r}") from None


def read_image(path):
    """Read an 8-bit P2 or P5 graymap as a float array of shape (rows, cols)."""
    with open(path, "rb") as fh:
        data = fh.read()
    pos = 0

    def next_token():
        nonlocal pos
        while pos < len(data):
            byte = data[pos:pos + 1]
            if byte == b"#":
                while pos < len(data) and data[pos:pos + 1] not in (b"\n", b"\r"):
                    pos += 1
            elif byte.isspace():
                pos += 1
            else:
                break
        start = pos
        while pos < len(data) and not data[pos:pos + 1].isspace():
            pos += 1
        if start == pos:
            raise PnmError("truncated header")
        return data[start:pos]

    magic = next_token()
    if magic not in (b"P2", b"P5"):
        raise PnmError(f"unsupported magic {magic!r} (want P2 or P5)")
    width = _parse_int(next_token(), "width")
    height = _parse_int(next_token(), "height")
    maxval = _parse_int(next_token(), "maxval")
    if width < 1 or height < 1:
        raise PnmError(f"bad dimensions {width}x{height}")
    if maxval != 255:
        raise PnmError(f"unsupported maxval {maxval} (only 255)")

    count = width * height
    if magic == b"P5":
        pos += 1  # exactly one whitespace byte separates the header from pixels
        raw = data[pos:pos + count]
        if len(raw) < count:
            raise PnmError("truncated pixel data")
        pixels = np.frombuffer(raw, dtype=np.uint8)
    else:
        tokens = data[pos:].split()
        if len(tokens) < count:
            raise PnmError("truncated pixel data")
        values = [_parse_int(t, "sample") for t in tokens[:count]]
        pixels = np.array(values)
        if pixels.min() < 0 or pixels.max() > 255:
            raise PnmError("sample out of range 0..255")
    return pixels.reshape(height, width).astype(float)


def write_image(path, image, binary=True):
    """Write an image as an 8-bit graymap.

    Values are clamped to [0, 255] and rounded half away from zero. binary
    selects P5; otherwise ASCII P2 is written.
    """
    arr = np.asarray(image, dtype=float)
    if arr.ndim != 2:
        raise PnmError(f"expected a 2-D image, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise PnmError("image contains non-finite values")
    pixels = np.floor(np.clip(arr, 0.0, 255.0) + 0.5).astype(np.uint8)
    height, width = pixels.shape
    header = f"{'P5' if binary else 'P2'}\n{width} {height}\n255\n"
    with open(path, "wb") as fh:
        fh.write(header.encode("ascii"))
        if binary:
            fh.write(pixels.tobytes())
        else:
            flat = pixels.ravel()
            for start in range(0, flat.size, 16):
                line = " ".join(str(v) for v in flat[start:start + 16])
                fh.write(line.encode("ascii") + b"\n")
