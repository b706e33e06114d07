"""Discrete vector calculus on image grids.

Backward-difference gradients and their negative-adjoint divergences, for
periodic and replicative boundaries; rotated multichannel extensions of both;
spectral integration (a left inverse of the gradient on zero-mean images);
and the orthogonal projection onto the range of the gradient.

Fields are stacked channel-first: shape (2L, N, M) with channels ordered as
(x0, y0, x1, y1, ...), one (x, y) pair per direction.
"""

import numpy as np

from . import spectral
from .grid import PERIODIC, REPLICATIVE, check_boundary


class AngleSet:
    """Uniformly spaced rotation angles in [0, pi/2) with their shared weight.

    Attributes
    ----------
    directions : int
        Number of rotated gradient pairs L.
    angles : ndarray
        theta_k = pi k / (2 L) for k = 0 .. L-1.
    cosines, sines : ndarray
        Precomputed cos(theta_k) and sin(theta_k).
    weight : float
        1 / sum_k(cos theta_k + sin theta_k); exactly 1 when L == 1.
    """

    def __init__(self, directions):
        directions = int(directions)
        if directions < 1:
            raise ValueError("directions must be >= 1")
        self.directions = directions
        self.angles = np.pi * np.arange(directions) / (2.0 * directions)
        self.cosines = np.cos(self.angles)
        self.sines = np.sin(self.angles)
        self.weight = 1.0 / float(np.sum(self.cosines + self.sines))

    def __repr__(self):
        return f"AngleSet(directions={self.directions})"


def gradient(f, boundary=PERIODIC):
    """Backward-difference gradient of an image as a 2-channel field.

    Channel 0 holds the column-direction differences f[n, m] - f[n-1, m] and
    channel 1 the row-direction differences f[n, m] - f[n, m-1]. Periodic
    boundaries wrap the first difference around; replicative boundaries
    repeat the border sample, which zeroes the first row of channel 0 and the
    first column of channel 1.
    """
    f = np.asarray(f, dtype=float)
    check_boundary(boundary)
    if boundary == PERIODIC:
        fx = f - np.roll(f, 1, axis=0)
        fy = f - np.roll(f, 1, axis=1)
    else:
        fx = np.zeros_like(f)
        fy = np.zeros_like(f)
        fx[1:, :] = f[1:, :] - f[:-1, :]
        fy[:, 1:] = f[:, 1:] - f[:, :-1]
    return np.stack((fx, fy))


def divergence(v, boundary=PERIODIC):
    """Discrete divergence, the negative adjoint of gradient.

    For every image u and 2-channel field v,
    <gradient(u), v> == <u, -divergence(v)> holds exactly (up to round-off).
    """
    v = np.asarray(v, dtype=float)
    if v.ndim != 3 or v.shape[0] != 2:
        raise ValueError(f"expected a 2-channel field, got shape {v.shape}")
    check_boundary(boundary)
    vx, vy = v
    if boundary == PERIODIC:
        return (np.roll(vx, -1, axis=0) - vx) + (np.roll(vy, -1, axis=1) - vy)
    # replicative: the first row/column samples never enter (the matching
    # gradient channels are zero there), and the last ones close the telescope
    out = np.empty_like(vx)
    out[0, :] = vx[1, :]
    out[1:-1, :] = vx[2:, :] - vx[1:-1, :]
    out[-1, :] = -vx[-1, :]
    out[:, 0] += vy[:, 1]
    out[:, 1:-1] += vy[:, 2:] - vy[:, 1:-1]
    out[:, -1] -= vy[:, -1]
    return out


def directional_gradient(f, angles, boundary=PERIODIC):
    """Gradient resolved along each rotated axis pair of an angle set.

    Channels (2k, 2k+1) hold the gradient rotated by theta_k:
    (fx cos + fy sin, fy cos - fx sin). A single direction (theta_0 = 0)
    reduces to gradient().
    """
    fx, fy = gradient(f, boundary)
    cos = angles.cosines[:, None, None]
    sin = angles.sines[:, None, None]
    out = np.empty((2 * angles.directions,) + fx.shape)
    out[0::2] = cos * fx + sin * fy
    out[1::2] = cos * fy - sin * fx
    return out


def directional_divergence(v, angles, boundary=PERIODIC):
    """Negative adjoint of directional_gradient.

    Rotates each channel pair back to the grid axes, sums the pairs, and
    takes the divergence. One direction reduces to divergence(); composing
    with directional_gradient scales the plain Laplacian by the direction
    count: directional_divergence(directional_gradient(u)) == L * div(grad u).
    """
    v = np.asarray(v, dtype=float)
    expected = 2 * angles.directions
    if v.ndim != 3 or v.shape[0] != expected:
        raise ValueError(f"expected {expected} channels, got shape {v.shape}")
    cos = angles.cosines[:, None, None]
    sin = angles.sines[:, None, None]
    ux = np.sum(cos * v[0::2] - sin * v[1::2], axis=0)
    uy = np.sum(sin * v[0::2] + cos * v[1::2], axis=0)
    return divergence(np.stack((ux, uy)), boundary)


def integrate(v, angles, boundary=PERIODIC):
    """Recover the zero-mean image whose directional gradient best matches v.

    Computes (1/L) * inverse(transform(directional_divergence(v)) * Wi) with
    Wi the integration filter, which solves the normal equations of
    min ||directional_gradient(u) - v||^2 over zero-mean u. On fields that
    are exact directional gradients this is a left inverse:
    integrate(directional_gradient(f)) == f for zero-mean f. The output is
    always zero-mean because Wi zeroes the DC coefficient.

    The replicative path runs through the cosine transform and supports a
    single direction only.
    """
    check_boundary(boundary)
    if boundary == REPLICATIVE and angles.directions != 1:
        raise ValueError("replicative integration supports a single direction only")
    div = directional_divergence(v, angles, boundary)
    n, m = div.shape
    wi = spectral.integration_filter(n, m, boundary).values
    kind = spectral.transform_kind(boundary)
    spec = spectral.forward_transform(div, kind)
    return spectral.inverse_transform(spec * wi, kind) / angles.directions


def project_onto_gradients(v, angles, boundary=PERIODIC):
    """Orthogonal projection of a field onto the range of directional_gradient.

    Idempotent and self-adjoint; the residual v - P(v) is orthogonal to every
    directional gradient. For one direction the kernel contains the
    divergence-free (pure-curl) fields.
    """
    return directional_gradient(integrate(v, angles, boundary), angles, boundary)
