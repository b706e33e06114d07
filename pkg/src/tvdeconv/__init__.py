"""Total-variation image deconvolution by iterative shrinkage.

The package restores blurred, noisy grayscale images by minimizing a
data-fidelity term plus a multidirectional total-variation penalty. The
penalty measures gradients along L equally spaced directions, which spans
the range from anisotropic TV (one direction pair) toward isotropic TV as
L grows. Minimization runs in the gradient domain: each step is a cheap
soft-thresholding followed by a spectral projection back onto the set of
gradient fields, with an optional per-iteration back-tracking rule for the
step constant. A lagged-diffusivity solver for the smoothed isotropic
functional is included as an independent cross-check.

Layout:

- grid: signal space conventions (zero mean, inner product, norms)
- spectral: FFT/DCT transforms, Laplacian symbols, frequency filters
- calculus: gradient, divergence, their directional versions, integration
- functionals: anisotropic, isotropic, and directional TV values
- shrinkage: the iterative-shrinkage solvers and their traces
- lagged: the lagged-diffusivity reference solver and lambda estimation
- degrade: blur kernels, noise, phantoms, PSNR
- pnm: 8-bit P2/P5 graymap reader and writer
- cli: the command-line interface (degrade, restore, compare, check-operators)
"""

__version__ = "0.1.0"

from . import calculus, degrade, functionals, grid, lagged, pnm, shrinkage, spectral
from .calculus import (AngleSet, directional_divergence, directional_gradient,
                       divergence, gradient, integrate, project_onto_gradients)
from .degrade import BlurSpec, NoiseSpec, blur_filter, degrade as degrade_image, psnr, shepp_logan
from .functionals import directional_magnitude, tv_anisotropic, tv_directional, tv_isotropic
from .grid import PERIODIC, REPLICATIVE, inner_product, stretch_to_range, zero_mean_project
from .lagged import ConvergenceError, LaggedConfig, estimate_lambda
from .lagged import restore as lagged_restore
from .pnm import PnmError, read_image, write_image
from .shrinkage import (DivergenceError, IterationRecord, IterationTrace,
                        SolverConfig, energy, iterate_backtracking,
                        iterate_fixed, soft_threshold, step_constant)
from .spectral import SpectralFilter, convolve_freq, laplacian_symbol

__all__ = [
    "__version__",
    "AngleSet", "BlurSpec", "ConvergenceError", "DivergenceError",
    "IterationRecord", "IterationTrace", "LaggedConfig", "PERIODIC",
    "PnmError", "REPLICATIVE", "SolverConfig", "SpectralFilter",
    "blur_filter", "calculus", "convolve_freq", "degrade", "degrade_image",
    "directional_divergence", "directional_gradient", "directional_magnitude",
    "divergence", "energy", "estimate_lambda", "functionals", "gradient",
    "grid", "inner_product", "integrate", "iterate_backtracking",
    "iterate_fixed", "lagged", "lagged_restore", "laplacian_symbol", "pnm",
    "project_onto_gradients", "psnr", "read_image", "shepp_logan",
    "shrinkage", "soft_threshold", "spectral", "step_constant",
    "stretch_to_range", "tv_anisotropic", "tv_directional", "tv_isotropic",
    "write_image", "zero_mean_project",
]
