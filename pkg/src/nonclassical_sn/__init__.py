"""Nonclassical spectral S_N transport in slab geometry.

Source iteration and S2 synthetic acceleration for the Laguerre-moment
form of the one-speed nonclassical transport equation, with classical
S_N and Marshak-diffusion reference solvers.
"""

from .config import ConfigError, ProblemConfig, emit_config, parse_config
from .discretization import SpatialMesh, cascade_sweep, scattering_source
from .experiments import figure_config, run_scan, solve, table_config
from .freepath import (
    FreePathModel,
    FreePathQuadrature,
    ModelKind,
    MomentCoefficients,
    compute_moments,
    laguerre_eval,
    p_of_s,
    sigma_t_of_s,
    survival,
)
from .postprocess import (
    classical_angular_flux,
    collision_rate_density,
    reconstruct_nonclassical_flux,
    scalar_flux,
)
from .quadrature import AngularQuadrature, gauss_legendre
from .reference import classical_sn_solve, diffusion_analytic, diffusion_solve
from .s2sa import LowOrderOperator, assemble_low_order, error_solve, s2sa_solve
from .source_iteration import (
    Discretization,
    SolveReport,
    si_solve,
    spectral_radius_estimate,
    stopping_check,
)

__version__ = "0.1.0"
