"""Synthetic degradation (blur plus noise), quality metrics, and test images."""

from dataclasses import dataclass

import numpy as np

from . import spectral
from .grid import PERIODIC, stretch_to_range

GAUSSIAN = "gaussian"
MOVING_AVERAGE = "moving_average"
CUSTOM_KERNEL = "custom_kernel"


@dataclass
class BlurSpec:
    """Parametric description of a mean-preserving blur kernel.

    kind    gaussian | moving_average | custom_kernel
    sigma   gaussian standard deviation in pixels
    radius  truncation radius in pixels; gaussian default ceil(4 sigma)
    kernel  explicit 2-D kernel for custom_kernel, centered on its middle sample
    """

    kind: str = GAUSSIAN
    sigma: float | None = None
    radius: int | None = None
    kernel: np.ndarray | None = None


@dataclass
class NoiseSpec:
    """Seeded white gaussian noise, fixed by std-dev or by a PSNR target.

    Exactly one of sigma / target_psnr must be set. A PSNR target resolves to
    sigma = 255 * 10^(-target/20), the noise level at which the degraded image
    sits that many dB from its noiseless blurred version on the [0, 255] scale.
    """

    sigma: float | None = None
    target_psnr: float | None = None
    seed: int | None = None

    def resolved_sigma(self):
        if (self.sigma is None) == (self.target_psnr is None):
            raise ValueError("set exactly one of sigma / target_psnr")
        if self.sigma is not None:
            if self.sigma < 0.0:
                raise ValueError("sigma must be nonnegative")
            return float(self.sigma)
        return 255.0 * 10.0 ** (-float(self.target_psnr) / 20.0)


def gaussian_kernel(sigma, radius=None):
    """Separable gaussian kernel truncated at the given radius, sum 1."""
    if sigma <= 0.0:
        raise ValueError("sigma must be positive")
    if radius is None:
        radius = int(np.ceil(4.0 * sigma))
    offsets = np.arange(-radius, radius + 1, dtype=float)
    profile = np.exp(-offsets ** 2 / (2.0 * sigma ** 2))
    kernel = np.outer(profile, profile)
    return kernel / kernel.sum()


def box_kernel(radius):
    """Uniform (2r+1) x (2r+1) moving-average kernel, sum 1."""
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    size = 2 * int(radius) + 1
    return np.full((size, size), 1.0 / (size * size))


def kernel_filter(kernel, shape):
    """Embed a centered spatial kernel on the periodic grid and transform it.

    The kernel is normalized to sum 1 (mean-preserving), wrapped around the
    origin, transformed, and peak-normalized.
    """
    kernel = np.asarray(kernel, dtype=float)
    if kernel.ndim != 2:
        raise ValueError("kernel must be 2-D")
    kn, km = kernel.shape
    n, m = shape
    if kn > n or km > m:
        raise ValueError(f"kernel {kernel.shape} larger than the grid {shape}")
    total = kernel.sum()
    if total <= 0.0:
        raise ValueError("kernel must have positive total mass")
    kernel = kernel / total
    grid = np.zeros(shape)
    rows = (np.arange(kn) - kn // 2) % n
    cols = (np.arange(km) - km // 2) % m
    grid[np.ix_(rows, cols)] = kernel
    response = spectral.forward_transform(grid, spectral.FOURIER)
    return spectral.normalize_blur(spectral.SpectralFilter(response, PERIODIC))


def blur_filter(spec, shape):
    """Build the normalized frequency response described by a BlurSpec."""
    if spec.kind == GAUSSIAN:
        if spec.sigma is None:
            raise ValueError("gaussian blur needs sigma")
        return kernel_filter(gaussian_kernel(spec.sigma, spec.radius), shape)
    if spec.kind == MOVING_AVERAGE:
        if spec.radius is None:
            raise ValueError("moving-average blur needs radius")
        return kernel_filter(box_kernel(spec.radius), shape)
    if spec.kind == CUSTOM_KERNEL:
        if spec.kernel is None:
            raise ValueError("custom blur needs a kernel")
        return kernel_filter(spec.kernel, shape)
    raise ValueError(f"unknown blur kind: {spec.kind!r}")


def degrade(f, H, noise):
    """Blur an image and add seeded white gaussian noise.

    Returns convolve(f, H) + e with e drawn at the resolved noise level;
    identical seeds give identical outputs.
    """
    f = np.asarray(f, dtype=float)
    if H.shape != f.shape:
        raise ValueError(f"shape mismatch: image {f.shape} vs filter {H.shape}")
    blurred = spectral.convolve_freq(f, H)
    sigma = noise.resolved_sigma()
    rng = np.random.default_rng(noise.seed)
    return blurred + rng.normal(0.0, sigma, f.shape)


def psnr(a, b):
    """Peak signal-to-noise ratio in dB on the [0, 255] convention.

    10 * log10(255^2 / MSE); returns infinity when the images are identical.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    mse = float(np.mean((a - b) ** 2))
    if mse == 0.0:
        return float("inf")
    return 10.0 * float(np.log10(255.0 ** 2 / mse))


# Standard ten-ellipse head phantom: amplitude, x half-axis, y half-axis,
# center x, center y, rotation in degrees, on the [-1, 1]^2 square.
_ELLIPSES = (
    (1.0, 0.69, 0.92, 0.0, 0.0, 0.0),
    (-0.8, 0.6624, 0.874, 0.0, -0.0184, 0.0),
    (-0.2, 0.11, 0.31, 0.22, 0.0, -18.0),
    (-0.2, 0.16, 0.41, -0.22, 0.0, 18.0),
    (0.1, 0.21, 0.25, 0.0, 0.35, 0.0),
    (0.1, 0.046, 0.046, 0.0, 0.1, 0.0),
    (0.1, 0.046, 0.046, 0.0, -0.1, 0.0),
    (0.1, 0.046, 0.023, -0.08, -0.605, 0.0),
    (0.1, 0.023, 0.023, 0.0, -0.606, 0.0),
    (0.1, 0.023, 0.046, 0.06, -0.605, 0.0),
)


def shepp_logan(n_rows, n_cols):
    """Rasterize the standard ten-ellipse head phantom, scaled to [0, 255].

    Piecewise constant by construction; pixel centers are sampled on the
    [-1, 1]^2 square with the first row at the top.
    """
    if n_rows < 32 or n_cols < 32:
        raise ValueError("phantom needs at least a 32x32 grid")
    y = 1.0 - (2.0 * np.arange(n_rows) + 1.0) / n_rows
    x = (2.0 * np.arange(n_cols) + 1.0) / n_cols - 1.0
    xg, yg = np.meshgrid(x, y)
    f = np.zeros((n_rows, n_cols))
    for amp, half_x, half_y, x0, y0, deg in _ELLIPSES:
        phi = np.deg2rad(deg)
        xr = (xg - x0) * np.cos(phi) + (yg - y0) * np.sin(phi)
        yr = (yg - y0) * np.cos(phi) - (xg - x0) * np.sin(phi)
        f[(xr / half_x) ** 2 + (yr / half_y) ** 2 <= 1.0] += amp
    # the amplitude table sums to exactly zero inside the ventricles; snap
    # the float dust so those regions match the background level
    f[np.abs(f) < 1e-9] = 0.0
    f -= f.min()
    peak = f.max()
    if peak > 0.0:
        f *= 255.0 / peak
    return f


def smooth_image(n_rows, n_cols, seed=None, sigma=3.0):
    """Seeded white noise blurred into a smooth test image on [0, 255]."""
    rng = np.random.default_rng(seed)
    noise = rng.normal(size=(n_rows, n_cols))
    H = blur_filter(BlurSpec(kind=GAUSSIAN, sigma=sigma), (n_rows, n_cols))
    return stretch_to_range(spectral.convolve_freq(noise, H))
