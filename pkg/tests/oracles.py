"""Slow, independently written reference computations for the tests.

Everything here is deliberately naive: explicit loops, dense matrices, and a
channel-last transcription of the published reference routines. None of it
imports computational pieces from the package beyond data containers, so a
bug in the library cannot hide by being compared against itself.
"""

import numpy as np


def inner_product_loops(a, b):
    """Sum of elementwise products via explicit Python loops."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    total = 0.0
    for index in np.ndindex(a.shape):
        total += a[index] * b[index]
    return total


def convolve_circular_loops(u, kernel):
    """Circular 2-D convolution by direct summation, kernel origin at [0, 0]."""
    u = np.asarray(u, dtype=float)
    kernel = np.asarray(kernel, dtype=float)
    n, m = u.shape
    out = np.zeros((n, m))
    for r in range(n):
        for c in range(m):
            acc = 0.0
            for i in range(n):
                for j in range(m):
                    acc += u[i, j] * kernel[(r - i) % n, (c - j) % m]
            out[r, c] = acc
    return out


def gradient_matrix(n, m, l_count):
    """Dense matrix of the directional gradient on an n-by-m grid.

    Rows are ordered channel by channel, each channel flattened row-major,
    matching a (2L, n, m) field raveled with numpy defaults. Periodic
    boundaries.
    """
    angles = [np.pi * k / (2.0 * l_count) for k in range(l_count)]
    size = n * m
    rows = []
    for theta in angles:
        alpha, beta = np.cos(theta), np.sin(theta)
        gx = np.zeros((size, size))
        gy = np.zeros((size, size))
        for i in range(n):
            for j in range(m):
                r = i * m + j
                gx[r, r] += 1.0
                gx[r, ((i - 1) % n) * m + j] -= 1.0
                gy[r, r] += 1.0
                gy[r, i * m + (j - 1) % m] -= 1.0
        rows.append(alpha * gx + beta * gy)
        rows.append(alpha * gy - beta * gx)
    return np.vstack(rows)


def integrate_dense_lsq(v, l_count):
    """Least-squares integration of a field via the dense gradient matrix.

    Returns the zero-mean image minimizing ||G f - v||_2. Intended for grids
    small enough that the dense normal equations are exact to round-off.
    """
    v = np.asarray(v, dtype=float)
    channels, n, m = v.shape
    assert channels == 2 * l_count
    g_mat = gradient_matrix(n, m, l_count)
    f, *_ = np.linalg.lstsq(g_mat, v.reshape(channels * n * m), rcond=None)
    f = f.reshape(n, m)
    return f - f.mean()


# ---------------------------------------------------------------------------
# Channel-last transcription of the published reference routines. Arrays are
# (N, M, 2L) as in the original; MATLAB's 1-based channels 2k-1, 2k become
# 0-based 2k, 2k+1.

def mdg_ref(u, l_count):
    u = np.asarray(u, dtype=float)
    theta = (np.pi / 2.0 / l_count) * np.arange(l_count)
    alpha, beta = np.cos(theta), np.sin(theta)
    n, m = u.shape
    ux = u - u[np.r_[n - 1, 0:n - 1], :]
    uy = u - u[:, np.r_[m - 1, 0:m - 1]]
    v = np.zeros((n, m, 2 * l_count))
    for k in range(l_count):
        v[:, :, 2 * k] = alpha[k] * ux + beta[k] * uy
        v[:, :, 2 * k + 1] = alpha[k] * uy - beta[k] * ux
    return v


def mdd_ref(v, l_count):
    v = np.asarray(v, dtype=float)
    theta = (np.pi / 2.0 / l_count) * np.arange(l_count)
    alpha, beta = np.cos(theta), np.sin(theta)
    n, m = v.shape[:2]
    ux = np.zeros((n, m))
    uy = np.zeros((n, m))
    for k in range(l_count):
        ux = ux + (alpha[k] * v[:, :, 2 * k] - beta[k] * v[:, :, 2 * k + 1])
        uy = uy + (beta[k] * v[:, :, 2 * k] + alpha[k] * v[:, :, 2 * k + 1])
    return (ux[np.r_[1:n, 0], :] - ux) + (uy[:, np.r_[1:m, 0]] - uy)


def operator_a_ref(v, a_values, l_count):
    return (1.0 / l_count) * np.real(
        np.fft.ifft2(np.fft.fft2(mdd_ref(v, l_count)) * a_values))


def operator_a_star_ref(u, a_values, l_count):
    return (-1.0 / l_count) * mdg_ref(
        np.real(np.fft.ifft2(np.fft.fft2(u) * np.conj(a_values))), l_count)


def operator_r_ref(v, a_values, l_count):
    a2 = a_values * np.conj(a_values)
    return (-1.0 / l_count ** 2) * mdg_ref(
        np.real(np.fft.ifft2(np.fft.fft2(mdd_ref(v, l_count)) * a2)), l_count)


def soft_ref(x, tau):
    return np.sign(x) * np.maximum(np.abs(x) - tau, 0.0)


def shrinkage_driver_ref(g, h_values, wi_values, l_count, c, tau, k_steps):
    """The fixed-step update loop exactly as published, channel-last.

    Returns the list of fields after each update (projection included) and
    the final integrated image before any renormalization.
    """
    g = np.asarray(g, dtype=float)
    a_values = h_values * wi_values
    b = operator_a_star_ref(g, a_values, l_count)
    v = mdg_ref(g, l_count)
    snapshots = []
    for _ in range(k_steps):
        v = soft_ref(v + (1.0 / c) * (b - operator_r_ref(v, a_values, l_count)), tau)
        v = mdg_ref(operator_a_ref(v, wi_values, l_count), l_count)
        snapshots.append(v.copy())
    f = operator_a_ref(v, wi_values, l_count)
    return snapshots, f


def field_to_channel_last(v):
    """(2L, N, M) packed field -> (N, M, 2L) reference layout."""
    return np.moveaxis(np.asarray(v), 0, -1)


def field_from_channel_last(v):
    return np.moveaxis(np.asarray(v), -1, 0)
