"""Contextual inverse optimization: geometric knowledge-set tracking and
online policies over cost cones, backed by the C++ core."""

from ._conelearn import (
    ConelearnError,
    angle,
    circumcenter_of_generators,
    cone_angle,
    cone_contains,
    cone_update,
    effective_difference,
    gram_schmidt,
    inradius_diagnostics,
    min_norm_point,
    poly_center,
    polyhedral_angle_bound,
    run,
    solve_linear,
    sym_eig,
    verify,
    worst_case_loss,
)

__all__ = [
    "ConelearnError",
    "angle",
    "circumcenter_of_generators",
    "cone_angle",
    "cone_contains",
    "cone_update",
    "effective_difference",
    "gram_schmidt",
    "inradius_diagnostics",
    "min_norm_point",
    "poly_center",
    "polyhedral_angle_bound",
    "run",
    "solve_linear",
    "sym_eig",
    "verify",
    "worst_case_loss",
]

__version__ = "0.1.0"
