"""Tour of the discrete operator calculus.

Everything the solvers rely on reduces to a handful of operator identities
on the zero-mean signal space: the directional divergence is the negative
adjoint of the directional gradient, spectral integration is a left inverse
of the gradient, the projection onto gradient fields is an orthogonal
projection, and composing divergence with gradient gives L times the
laplacian. This script checks each one on random data and prints the worst
relative error, same as `tvdeconv check-operators` but in library form.
"""

import numpy as np

from tvdeconv import calculus, grid, spectral

rng = np.random.default_rng(0)
shape = (33, 41)
L = 3
angles = calculus.AngleSet(L)

u = grid.zero_mean_project(rng.normal(size=shape))
v = rng.normal(size=(2 * L,) + shape)

mdgu = calculus.directional_gradient(u, angles)
mddv = calculus.directional_divergence(v, angles)

adj = abs(grid.inner_product(mdgu, v) + grid.inner_product(u, mddv))
adj /= np.linalg.norm(u) * np.linalg.norm(v)
print(f"adjointness   <mdg u, v> = -<u, mdd v>      rel err {adj:.3e}")

rec = calculus.integrate(mdgu, angles)
left = np.linalg.norm(rec - u) / np.linalg.norm(u)
print(f"left inverse  integrate(mdg u) = u          rel err {left:.3e}")

pv = calculus.project_onto_gradients(v, angles)
ppv = calculus.project_onto_gradients(pv, angles)
idem = np.linalg.norm(ppv - pv) / np.linalg.norm(v)
ortho = abs(grid.inner_product(v - pv, pv)) / np.linalg.norm(v) ** 2
print(f"projection    P(P v) = P v                  rel err {idem:.3e}")
print(f"projection    <v - P v, P v> = 0            rel err {ortho:.3e}")

lap = calculus.divergence(calculus.gradient(u))
comp = calculus.directional_divergence(mdgu, angles)
scale = np.linalg.norm(L * lap)
print(f"composition   mdd(mdg u) = {L} div(grad u)    rel err "
      f"{np.linalg.norm(comp - L * lap) / scale:.3e}")

# the periodic laplacian is diagonal in the fourier basis; the replicative
# one in the cosine basis. That diagonalization is what makes integration
# and the solver's per-frequency algebra cheap.
for boundary, kind in ((grid.PERIODIC, spectral.FOURIER),
                       (grid.REPLICATIVE, spectral.COSINE)):
    w = spectral.laplacian_symbol(*shape, boundary).values
    lap_b = calculus.divergence(calculus.gradient(u, boundary), boundary)
    lhs = spectral.forward_transform(lap_b, kind)
    rhs = spectral.forward_transform(u, kind) * w
    err = np.max(np.abs(lhs - rhs)) / np.max(np.abs(rhs))
    print(f"diagonal      {boundary:11s} laplacian symbol     rel err {err:.3e}")
