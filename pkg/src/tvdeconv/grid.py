"""Signal-space utilities: inner products, norms, and mean removal.

Images live on N x M real grids. Most operators in this package are defined
on the zero-mean subspace (constant images are invisible to gradients), so
the mean-removal helpers here get used throughout.
"""

import numpy as np

PERIODIC = "periodic"
REPLICATIVE = "replicative"

BOUNDARY_KINDS = (PERIODIC, REPLICATIVE)


def check_boundary(kind):
    """Validate a boundary-kind string and return it."""
    if kind not in BOUNDARY_KINDS:
        raise ValueError(f"unknown boundary kind: {kind!r}")
    return kind


def inner_product(a, b):
    """Sum of element-wise products of two equally shaped arrays.

    Works for images and for multichannel gradient fields alike; a field
    contributes the sum over all of its channels.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    return float(np.sum(a * b))


def zero_mean_project(f):
    """Subtract the mean, mapping an image onto the zero-mean subspace."""
    f = np.asarray(f, dtype=float)
    return f - f.mean()


def is_zero_mean(f, rtol=1e-9):
    """True when |sum(f)| <= rtol * size * max|f|."""
    f = np.asarray(f, dtype=float)
    scale = float(np.max(np.abs(f))) if f.size else 0.0
    if scale == 0.0:
        return True
    return abs(float(f.sum())) <= rtol * f.size * scale


def norms(x):
    """Return the (l1, l2, linf) norms of an array of any shape."""
    x = np.asarray(x, dtype=float)
    ax = np.abs(x)
    return float(ax.sum()), float(np.sqrt(np.sum(x * x))), float(ax.max())


def stretch_to_range(f, lo=0.0, hi=255.0):
    """Affinely map an image onto [lo, hi]; a constant image maps to lo."""
    f = np.asarray(f, dtype=float)
    fmin = float(f.min())
    spread = float(f.max()) - fmin
    if spread == 0.0:
        return np.full_like(f, lo)
    weight = (f - fmin) / spread
    return lo * (1.0 - weight) + hi * weight
