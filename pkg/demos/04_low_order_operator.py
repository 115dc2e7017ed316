"""
Inside the S2 low-order operator
================================

The correction step solves ``(I - L) S_eps = L r`` where ``L`` maps a
nodal scattering source to the scattering source of one S2 cascade sweep.
Because ``L`` only acts on a 2-per-cell field it is small enough to build
densely from impulse sweeps and LU-factor once.
"""

import numpy as np

from nonclassical_sn.experiments import table_config
from nonclassical_sn.s2sa import assemble_low_order, error_solve
from nonclassical_sn.source_iteration import Discretization

cfg = table_config("diffusion_mimic", c=0.99, cells=50, fp_nodes=64)
disc = Discretization.from_config(cfg)
op = assemble_low_order(cfg, disc)
print(f"L is {op.matrix.shape[0]} x {op.matrix.shape[1]}, built from {op.n_sweeps} sweeps")

# The dominant eigenvalue of L is what makes plain iteration slow
eig = np.linalg.eigvals(op.matrix)
print(f"largest |eigenvalue| of L: {np.abs(eig).max():.5f}  (c = {cfg.c})")

#%%
# Apply matches the assembled matrix, and one error solve satisfies its equation.
g = np.random.default_rng(0).normal(size=(cfg.cells, 2))
print("apply vs matrix:", np.abs(op.apply(g).ravel() - op.matrix @ g.ravel()).max())
S_eps, eps = error_solve(op, g)
res = S_eps.ravel() - op.matrix @ S_eps.ravel() - op.matrix @ g.ravel()
print("error-equation residual:", np.abs(res).max())
