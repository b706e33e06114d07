"""Total-variation functionals.

Three discrete flavors: the anisotropic sum of absolute partial differences,
the isotropic sum of gradient magnitudes, and a directional family built on
rotated gradients that equals the anisotropic form with one direction and
tightens toward the isotropic form as directions are added.
"""

import numpy as np

from .calculus import directional_gradient, gradient
from .grid import PERIODIC


def directional_magnitude(a, b, angles):
    """Weighted absolute sum of the vector (a, b) resolved along rotated axes.

    Computes weight * sum_k(|a cos + b sin| + |b cos - a sin|) over the angle
    set. This is an upper bound on sqrt(a^2 + b^2), exact when (a, b) lies on
    one of the rotated axes, and it converges to the Euclidean magnitude as
    the angle count grows. Accepts scalars or equally shaped arrays.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    cos = angles.cosines.reshape((-1,) + (1,) * a.ndim)
    sin = angles.sines.reshape((-1,) + (1,) * a.ndim)
    total = np.sum(np.abs(a * cos + b * sin) + np.abs(b * cos - a * sin), axis=0)
    out = angles.weight * total
    return float(out) if out.ndim == 0 else out


def tv_anisotropic(f, boundary=PERIODIC):
    """Sum of absolute partial differences, |fx| + |fy|, over all pixels."""
    fx, fy = gradient(f, boundary)
    return float(np.sum(np.abs(fx) + np.abs(fy)))


def tv_isotropic(f, boundary=PERIODIC):
    """Sum of per-pixel gradient magnitudes sqrt(fx^2 + fy^2)."""
    fx, fy = gradient(f, boundary)
    return float(np.sum(np.hypot(fx, fy)))


def tv_directional(f, angles, boundary=PERIODIC):
    """Weighted l1 norm of the directional gradient.

    Sandwiched between the other two flavors for every angle count:
    tv_isotropic <= tv_directional <= tv_anisotropic, with equality to
    tv_anisotropic at a single direction.
    """
    v = directional_gradient(f, angles, boundary)
    return float(angles.weight * np.sum(np.abs(v)))
