import numpy as np
import pytest

from tvdeconv import pnm


def test_round_trip_binary_and_ascii(tmp_path):
    rng = np.random.default_rng(110)
    image = rng.integers(0, 256, size=(9, 13)).astype(float)
    p5 = tmp_path / "a.pgm"
    p2 = tmp_path / "a.ascii.pgm"
    pnm.write_image(p5, image, binary=True)
    pnm.write_image(p2, image, binary=False)
    np.testing.assert_array_equal(pnm.read_image(p5), image)
    np.testing.assert_array_equal(pnm.read_image(p2), image)


def test_rounding_and_clamping(tmp_path):
    image = np.array([[255.7, -3.0], [127.5, 0.4]])
    path = tmp_path / "b.pgm"
    pnm.write_image(path, image)
    np.testing.assert_array_equal(pnm.read_image(path),
                                  [[255.0, 0.0], [128.0, 0.0]])


def test_write_rejects_bad_arrays(tmp_path):
    path = tmp_path / "c.pgm"
    with pytest.raises(pnm.PnmError):
        pnm.write_image(path, np.zeros(5))
    with pytest.raises(pnm.PnmError):
        pnm.write_image(path, np.full((2, 2), np.nan))


def test_read_with_comments_and_whitespace(tmp_path):
    path = tmp_path / "d.pgm"
    path.write_bytes(b"P2 # magic\n# a comment line\n 2 2\n255\n0 64\n128 255\n")
    np.testing.assert_array_equal(pnm.read_image(path),
                                  [[0.0, 64.0], [128.0, 255.0]])


def test_read_rejects_malformed(tmp_path):
    cases = {
        "bad-magic.pgm": b"P6\n2 2\n255\n" + bytes(12),
        "bad-maxval.pgm": b"P5\n2 2\n65535\n" + bytes(8),
        "bad-dims.pgm": b"P5\n0 2\n255\n",
        "truncated-header.pgm": b"P5\n2",
        "truncated-pixels.pgm": b"P5\n4 4\n255\n" + bytes(7),
        "bad-sample.pgm": b"P2\n2 1\n255\n12 999\n",
        "junk-width.pgm": b"P5\nxx 2\n255\n" + bytes(4),
    }
    for name, blob in cases.items():
        path = tmp_path / name
        path.write_bytes(blob)
        with pytest.raises(pnm.PnmError):
            pnm.read_image(path)


def test_binary_pixels_may_look_like_comments(tmp_path):
    # a pixel value of 35 is the '#' byte; it must not be eaten as a comment
    image = np.full((3, 3), 35.0)
    path = tmp_path / "hash.pgm"
    pnm.write_image(path, image)
    np.testing.assert_array_equal(pnm.read_image(path), image)
