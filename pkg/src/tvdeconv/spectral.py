"""2-D spectral machinery: transforms, Laplacian symbols, integration filters,
and frequency-domain convolution.

Two transform kinds are used. The "fourier" kind is the unnormalized DFT
(inverse carries the 1/NM factor) and diagonalizes the periodic-boundary
difference operators. The "cosine" kind is the orthonormal type-II DCT and
plays the same role for replicative boundaries. The binding property is

    transform(div(grad(u))) == transform(u) * W

with W the matching Laplacian symbol; the test suite enforces it directly.
"""

from dataclasses import dataclass

import numpy as np
from scipy import fft as _fft

from .grid import PERIODIC, check_boundary

FOURIER = "fourier"
COSINE = "cosine"

_workers = 1


def set_workers(count):
    """Set the worker count passed to the FFT backend (default 1)."""
    global _workers
    _workers = max(1, int(count))


def get_workers():
    return _workers


@dataclass(frozen=True)
class SpectralFilter:
    """An N x M frequency response together with its boundary convention."""

    values: np.ndarray
    boundary: str = PERIODIC

    def __post_init__(self):
        check_boundary(self.boundary)
        object.__setattr__(self, "values", np.asarray(self.values))

    @property
    def shape(self):
        return self.values.shape


def transform_kind(boundary):
    """Transform kind that diagonalizes the given boundary's Laplacian."""
    check_boundary(boundary)
    return FOURIER if boundary == PERIODIC else COSINE


def forward_transform(u, kind=FOURIER):
    """Forward 2-D transform of a real image.

    Parameters
    ----------
    u : array, N x M
    kind : "fourier" (unnormalized DFT, complex output) or "cosine"
        (orthonormal type-II DCT, real output).
    """
    u = np.asarray(u, dtype=float)
    if kind == FOURIER:
        return _fft.fft2(u, workers=_workers)
    if kind == COSINE:
        return _fft.dctn(u, type=2, norm="ortho", workers=_workers)
    raise ValueError(f"unknown transform kind: {kind!r}")


def inverse_transform(spec, kind=FOURIER):
    """Invert forward_transform, returning the real part."""
    if kind == FOURIER:
        return np.real(_fft.ifft2(spec, workers=_workers))
    if kind == COSINE:
        return _fft.idctn(np.asarray(spec, dtype=float), type=2, norm="ortho",
                          workers=_workers)
    raise ValueError(f"unknown transform kind: {kind!r}")


def laplacian_symbol(n_rows, n_cols, boundary=PERIODIC):
    """Frequency response W of div(grad(.)) under the given boundary.

    Periodic:    W[k, l] = 2 cos(2 pi k / N) + 2 cos(2 pi l / M) - 4
    Replicative: W[k, l] = 2 cos(pi k / N) + 2 cos(pi l / M) - 4

    W[0, 0] = 0 and W < 0 everywhere else.
    """
    check_boundary(boundary)
    if n_rows < 2 or n_cols < 2:
        raise ValueError("grid must be at least 2x2")
    step = 2.0 * np.pi if boundary == PERIODIC else np.pi
    row = 2.0 * np.cos(step * np.arange(n_rows) / n_rows)
    col = 2.0 * np.cos(step * np.arange(n_cols) / n_cols)
    w = row[:, None] + col[None, :] - 4.0
    w[0, 0] = 0.0
    return SpectralFilter(w, boundary)


def integration_filter(n_rows, n_cols, boundary=PERIODIC):
    """Reciprocal of the Laplacian symbol away from DC; zero at DC.

    Satisfies W * Wi = 1 everywhere except (0, 0), where both are zero, so
    filtering with Wi inverts the Laplacian on the zero-mean subspace.
    """
    w = laplacian_symbol(n_rows, n_cols, boundary).values
    wi = np.zeros_like(w)
    off_dc = w != 0.0
    wi[off_dc] = 1.0 / w[off_dc]
    return SpectralFilter(wi, boundary)


def identity_filter(shape, boundary=PERIODIC):
    """All-ones frequency response (convolution with a unit impulse)."""
    return SpectralFilter(np.ones(shape), boundary)


def normalize_blur(H):
    """Scale a filter so its peak magnitude (hence peak |H|^2) is exactly 1."""
    mag = np.abs(H.values)
    peak = float(mag.max())
    if peak == 0.0:
        raise ValueError("cannot normalize an all-zero filter")
    return SpectralFilter(H.values / peak, H.boundary)


def convolve_freq(u, F):
    """Circular convolution of an image with a periodic-boundary filter.

    Computes the real part of inverse_fourier(forward_fourier(u) * F).
    """
    u = np.asarray(u, dtype=float)
    if F.boundary != PERIODIC:
        raise ValueError("frequency-domain convolution requires a periodic filter")
    if F.shape != u.shape:
        raise ValueError(f"shape mismatch: image {u.shape} vs filter {F.shape}")
    return np.real(_fft.ifft2(_fft.fft2(u, workers=_workers) * F.values,
                              workers=_workers))


def condition_number(H):
    """Ratio of the largest to smallest magnitude over all frequency samples.

    Returns infinity when the filter has a spectral zero.
    """
    mag = np.abs(H.values)
    smallest = float(mag.min())
    if smallest == 0.0:
        return float("inf")
    return float(mag.max()) / smallest
