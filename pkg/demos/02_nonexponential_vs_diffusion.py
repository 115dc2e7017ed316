"""
A nonexponential law that mimics diffusion
==========================================

The free-path density ``p(s) = 3 s exp(-sqrt(3) s)`` has the mean and mean
square of a diffusion process, so the collision rate density should track
Marshak diffusion. It does in the interior. Near the vacuum faces it
does not: the boundary layer is real transport physics, as a small Monte
Carlo run confirms.
"""

import numpy as np

from nonclassical_sn.experiments import compare_with_diffusion, figure_config
from nonclassical_sn.freepath import FreePathModel

model = FreePathModel("diffusion_mimic")
s = np.array([0.0, 0.5, 1.0, 3.0])
print("s           :", s)
print("p(s)        :", np.round(model.p(s), 6))
print("sigma_t(s)  :", np.round(model.sigma(s), 6), " <- grows from 0 to sqrt(3)")
print("survival(s) :", np.round(model.survival(s), 6))

cmp = compare_with_diffusion(figure_config("diffusion_mimic"))
rel = cmp.relative_error
mid = len(rel) // 2
print(f"\nf vs sigma_t * phi_diffusion: midplane {rel[mid]:.2%}, edge {rel[0]:.2%}")

#%%
# Analog Monte Carlo with gamma-distributed free paths, edge bin only.
rng = np.random.default_rng(3)
X, c, histories = 20.0, 0.999, 40_000
x = rng.uniform(0, X, histories)
edge = 0
while x.size:
    x = x + rng.uniform(-1, 1, x.size) * rng.gamma(2.0, 1 / np.sqrt(3), x.size)
    x = x[(x > 0) & (x < X)]
    edge += np.count_nonzero(x < 1.0)
    x = x[rng.uniform(size=x.size) < c]
mc_edge = edge * X / histories  # collisions per unit length over [0, 1]
f_edge = cmp.value[:20].mean()
print(f"collision density on [0, 1]: Monte Carlo {mc_edge:.1f}, spectral {f_edge:.1f}, "
      f"diffusion {cmp.reference[:20].mean():.1f}")
