"""Exact P1 finite elements for the 1D integral fractional Laplacian."""

from .assembly import (
    FractionalOrder,
    StiffnessMatrix,
    assemble,
    assemble_uniform_toeplitz,
    hat_distance,
    stiffness_entry,
    stiffness_entry_matrix_form,
)
from .experiments import conditioning_study, convergence_study, fit_slope, mu_scan
from .mesh import (
    Mesh,
    MeshStats,
    build_beta_mapped,
    build_power_left,
    build_power_symmetric,
    build_uniform,
    mesh_stats,
)
from .oracle import QuadratureSpec, stiffness_entry_quadrature
from .solver import assemble_load, exact_solution, max_error, solve
from .spectral import SpectralSummary, condition_number, eigen_extremes

__version__ = "0.1.0"
