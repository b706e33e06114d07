"""Cross-checking the two solvers against each other.

The shrinkage solver minimizes the L-direction TV penalty exactly (in the
gradient domain); the lagged-diffusivity solver minimizes a smoothed
isotropic TV by solving a sequence of linear systems. They are built from
different discrete machinery end to end, so agreement between them is
strong evidence the operator plumbing is right, and the remaining gap
measures how far tv_L sits from isotropic TV on the image at hand. Watch
the gap shrink as L grows.
"""

import time

import numpy as np

from tvdeconv import (LaggedConfig, SolverConfig, degrade, estimate_lambda,
                      lagged, psnr, shrinkage)

f = degrade.shepp_logan(64, 64)
H = degrade.blur_filter(degrade.BlurSpec(kind=degrade.GAUSSIAN, sigma=1.2),
                        f.shape)
noise = degrade.NoiseSpec(target_psnr=19.0, seed=11)
g = degrade.degrade(f, H, noise)
lam = estimate_lambda(g, noise.resolved_sigma() ** 2)
print(f"64x64 phantom, gaussian blur sigma 1.2, lambda {lam:.4f}")

start = time.perf_counter()
f_mld = lagged.restore(g, H, LaggedConfig(lam=lam))
print(f"lagged-diffusivity solution in {time.perf_counter() - start:.1f}s, "
      f"psnr {psnr(f, np.clip(f_mld, 0, 255)):.2f} dB")

mean_g = float(np.mean(g))
print(f"\n  {'L':>3s} {'rel l2 vs lagged':>18s} {'psnr (dB)':>10s} {'seconds':>8s}")
for L in (1, 3, 8):
    config = SolverConfig(lam=lam, directions=L, max_iters=6000, rel_tol=1e-7,
                          renormalize=False)
    start = time.perf_counter()
    f_tvis, _ = shrinkage.iterate_fixed(g, H, config)
    elapsed = time.perf_counter() - start
    full = f_tvis + mean_g
    rel = np.linalg.norm(full - f_mld) / np.linalg.norm(f_mld)
    print(f"  {L:3d} {100 * rel:17.2f}% "
          f"{psnr(f, np.clip(full, 0, 255)):10.2f} {elapsed:8.1f}")

print("\nthe disagreement tracks the tv_L-to-isotropic gap, not solver error;"
      "\nsee tv_family.py for the same progression measured on the functional.")
