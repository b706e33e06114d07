"""Reference deconvolution by lagged diffusivity, plus the noise-driven
choice of the regularization weight.

Minimizes the smoothed total-variation objective

    0.5 * ||blur(f) - g||^2 + lam * sum sqrt(fx^2 + fy^2 + eps)

by repeatedly freezing the diffusivity 1/s at the previous iterate
(s = sqrt(fx^2 + fy^2 + eps)) and solving the resulting linear system

    adjoint_blur(blur(f)) - lam * div(grad(f) / s) = adjoint_blur(g)

with conjugate gradients, matrix-free. The smoothing parameter eps is relaxed
over a decreasing schedule, warm-starting each stage from the previous one.
This solver exists to cross-validate the shrinkage solver; it is deliberately
plain.
"""

from dataclasses import dataclass, field

import numpy as np
import scipy.sparse
from scipy.sparse.linalg import LinearOperator, cg, splu

from . import calculus, spectral
from .grid import PERIODIC


class ConvergenceError(RuntimeError):
    """The inner linear solver did not converge within its budget."""


def default_epsilon_schedule(start=1e-2, stop=1e-6):
    """Halvings of start while above stop, finishing with an exact stop stage."""
    if not 0.0 < stop < start:
        raise ValueError("need 0 < stop < start")
    schedule = []
    eps = float(start)
    while eps > stop:
        schedule.append(eps)
        eps *= 0.5
    schedule.append(float(stop))
    return schedule


@dataclass
class LaggedConfig:
    """Knobs for the lagged-diffusivity solver.

    lam              regularization weight (> 0)
    epsilon_schedule strictly decreasing positive smoothing values
    inner_tol        relative residual tolerance of the conjugate-gradient solve
    inner_max_iters  conjugate-gradient iteration cap
    outer_tol        relative-change tolerance of the fixed-point loop per stage
    outer_max_iters  fixed-point iteration cap per stage
    """

    lam: float
    epsilon_schedule: list = field(default_factory=default_epsilon_schedule)
    inner_tol: float = 1e-8
    inner_max_iters: int = 500
    outer_tol: float = 1e-6
    outer_max_iters: int = 40

    def validate(self):
        if self.lam <= 0.0:
            raise ValueError("lam must be positive")
        eps = np.asarray(self.epsilon_schedule, dtype=float)
        if eps.size == 0 or np.any(eps <= 0.0) or np.any(np.diff(eps) >= 0.0):
            raise ValueError("epsilon_schedule must be strictly decreasing and positive")


def diffusion_apply(f, s, lam, gram):
    """One application of the frozen-diffusivity operator.

    Computes convolve(f, |H|^2) - lam * div(grad(f) / s) for a strictly
    positive diffusivity denominator s. Symmetric positive definite whenever
    the blur response has no spectral zero.
    """
    blurred = spectral.convolve_freq(f, gram)
    grad = calculus.gradient(f, PERIODIC)
    return blurred - lam * calculus.divergence(grad / s, PERIODIC)


def diffusion_stencil(s, lam):
    """Sparse matrix of f -> -lam * div(grad(f) / s) on the periodic grid.

    The five-point stencil mirrors diffusion_apply minus its convolution
    term; it exists so the inner solves can be preconditioned by a direct
    factorization that tracks the (wildly varying) diffusivity exactly.
    """
    n, m = s.shape
    idx = np.arange(n * m).reshape(n, m)
    below = np.roll(idx, -1, axis=0)
    above = np.roll(idx, 1, axis=0)
    right = np.roll(idx, -1, axis=1)
    left = np.roll(idx, 1, axis=1)
    inv = 1.0 / s
    inv_below = np.roll(inv, -1, axis=0)
    inv_right = np.roll(inv, -1, axis=1)
    center = inv_below + inv_right + 2.0 * inv
    rows = np.concatenate([idx, idx, idx, idx, idx]).ravel()
    cols = np.concatenate([idx, below, above, right, left]).ravel()
    vals = np.concatenate([center, -inv_below, -inv, -inv_right, -inv]).ravel()
    matrix = scipy.sparse.coo_matrix((vals, (rows, cols)), shape=(n * m, n * m))
    return lam * matrix.tocsc()


def smoothed_energy(f, g, H, lam, eps):
    """0.5 ||blur(f) - g||^2 + lam * sum sqrt(fx^2 + fy^2 + eps)."""
    residual = spectral.convolve_freq(f, H) - np.asarray(g, dtype=float)
    fx, fy = calculus.gradient(f, PERIODIC)
    penalty = float(np.sum(np.sqrt(fx * fx + fy * fy + eps)))
    return 0.5 * float(np.sum(residual * residual)) + lam * penalty


def restore(g, H, config, callback=None):
    """Deconvolve an image by lagged diffusivity over a relaxed eps schedule.

    Parameters
    ----------
    g : array, N x M
        Degraded image.
    H : SpectralFilter
        Normalized periodic blur response.
    config : LaggedConfig
    callback : callable, optional
        Called as callback(stage, eps, image, energy) after each stage, with
        the smoothed energy evaluated at that stage's own eps.

    Returns
    -------
    Image with the same mean as adjoint_blur(g) (the data mean for a
    mean-preserving blur), unlike the shrinkage solvers' zero-mean output.
    """
    g = np.asarray(g, dtype=float)
    config.validate()
    if H.boundary != PERIODIC:
        raise ValueError("the solver runs on the periodic path")
    if H.shape != g.shape:
        raise ValueError(f"shape mismatch: image {g.shape} vs filter {H.shape}")

    gram = spectral.SpectralFilter(np.abs(H.values) ** 2, PERIODIC)
    adjoint = spectral.SpectralFilter(np.conj(H.values), PERIODIC)
    rhs = spectral.convolve_freq(g, adjoint)
    shape = g.shape
    identity = scipy.sparse.identity(g.size, format="csc")

    f = g.copy()
    for stage, eps in enumerate(config.epsilon_schedule):
        for _ in range(config.outer_max_iters):
            fx, fy = calculus.gradient(f, PERIODIC)
            s = np.sqrt(fx * fx + fy * fy + eps)
            operator = LinearOperator(
                (g.size, g.size),
                matvec=lambda x: diffusion_apply(
                    x.reshape(shape), s, config.lam, gram).ravel(),
                dtype=float)
            # precondition with identity + diffusion stencil: the stiff
            # diffusivity term is inverted exactly, leaving conjugate
            # gradients only the benign unit-peak convolution part
            factor = splu(identity + diffusion_stencil(s, config.lam))
            precond = LinearOperator((g.size, g.size), matvec=factor.solve,
                                     dtype=float)
            solution, info = cg(operator, rhs.ravel(), x0=f.ravel(),
                                rtol=config.inner_tol, atol=0.0,
                                maxiter=config.inner_max_iters, M=precond)
            if info != 0:
                raise ConvergenceError(
                    f"inner solve failed at stage eps={eps:g} (status {info})")
            f_next = solution.reshape(shape)
            done = _relative_change(f_next, f) < config.outer_tol
            f = f_next
            if done:
                break
        if callback is not None:
            callback(stage, eps, f, smoothed_energy(f, g, H, config.lam, eps))
    return f


def _relative_change(new, old):
    denom = float(np.sqrt(np.sum(old * old)))
    if denom == 0.0:
        return float(np.sqrt(np.sum(new * new)))
    return float(np.sqrt(np.sum((new - old) ** 2))) / denom


def estimate_lambda(reference, noise_variance):
    """Regularization weight from the noise level and a reference image.

    The gradient-magnitude spread of the reference sets the prior scale
    beta = sqrt(0.5 * var(|grad reference|)); the returned weight is
    noise_variance / beta. The reference may be the observed image itself or,
    in synthetic experiments, the ground truth.
    """
    if noise_variance <= 0.0:
        raise ValueError("noise_variance must be positive")
    fx, fy = calculus.gradient(np.asarray(reference, dtype=float), PERIODIC)
    magnitude = np.hypot(fx, fy)
    beta = float(np.sqrt(0.5 * np.var(magnitude)))
    if beta == 0.0:
        raise ValueError("reference image has no gradient variation")
    return noise_variance / beta
