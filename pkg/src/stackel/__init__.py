"""Canonical classification and curvature verification of Einstein-space
metrics that depend on a single variable (three commuting spatial Killing
directions, Bianchi type I).

The pipeline: reduce the constant structure matrix to one of three
canonical variants, solve the two autonomous subsystems in closed form,
assemble the ten-family metric catalog, and confirm every family by the
Einstein residual R_ij - Lambda g_ij computed along two independent paths.
"""

from .assembly import (
    AssembledMetric,
    FamilySpec,
    assemble,
    catalog,
    det_identity_dev,
    gamma_residuals,
    kappa_consistency,
    lambda_of,
    list_families,
)
from .canonical import (
    CanonicalClass,
    StructureMatrix,
    admissible_eta0,
    admissible_transform,
    classify,
    split_direction,
)
from .curvature import (
    MetricJet,
    ResidualReport,
    christoffel,
    einstein_residual,
    fd_jet_provider,
    invert_sym4,
    ricci_general,
    ricci_kappa,
    ricci_mixed_from_jet,
    ricci_mixed_u0,
)
from .discrepancies import Discrepancy, collect as collect_discrepancies
from .numerics import Stencil, TauGrid, central_diff, rk4_integrate
from .solutions import (
    CosmologicalData,
    PhiSolution,
    SpatialSolution,
    epsilon_p,
    first_integral_check,
    make_phi,
    phi_residuals,
    solve_eta,
    solve_phi,
    transform_spatial,
)

__version__ = "0.1.0"

__all__ = [
    "AssembledMetric",
    "CanonicalClass",
    "CosmologicalData",
    "Discrepancy",
    "FamilySpec",
    "MetricJet",
    "PhiSolution",
    "ResidualReport",
    "SpatialSolution",
    "Stencil",
    "StructureMatrix",
    "TauGrid",
    "admissible_eta0",
    "admissible_transform",
    "assemble",
    "catalog",
    "central_diff",
    "christoffel",
    "classify",
    "collect_discrepancies",
    "det_identity_dev",
    "einstein_residual",
    "epsilon_p",
    "fd_jet_provider",
    "first_integral_check",
    "gamma_residuals",
    "invert_sym4",
    "kappa_consistency",
    "lambda_of",
    "list_families",
    "make_phi",
    "phi_residuals",
    "ricci_general",
    "ricci_kappa",
    "ricci_mixed_from_jet",
    "ricci_mixed_u0",
    "rk4_integrate",
    "solve_eta",
    "solve_phi",
    "split_direction",
    "transform_spatial",
]
