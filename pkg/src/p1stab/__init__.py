"""Metrics, geodesics and length-space checks on the stability space of P^1."""

from .coords import (
    Algebraic,
    Boundary,
    ChamberMismatch,
    ChartPoint,
    DomainError,
    Geometric,
    StabPoint,
    c_act,
    chart_to_stab,
    orbit_rep,
    project_closure,
    stab_to_chart,
)
from .halfplane import MoebiusMap, d_hyp, d_Z
from .lattice import lattice_arg_extrema, lattice_log_extrema, supinf_center
from .metric import (
    DistanceBreakdown,
    boundary_infimum,
    brute_force_distance,
    distance,
    optimal_shift,
    quotient_distance,
)
from .paths import (
    Polyline,
    additivity_check,
    bent_geodesic,
    boundary_crossings,
    composite_path,
    dZ_geodesic_point,
    path_length,
    reparametrize_arclength,
)
from .sheaves import LineBundle, Skyscraper, central_charge, mass_phase

__all__ = [
    "Algebraic",
    "Boundary",
    "ChamberMismatch",
    "ChartPoint",
    "DistanceBreakdown",
    "DomainError",
    "Geometric",
    "LineBundle",
    "MoebiusMap",
    "Polyline",
    "Skyscraper",
    "StabPoint",
    "additivity_check",
    "bent_geodesic",
    "boundary_crossings",
    "boundary_infimum",
    "brute_force_distance",
    "c_act",
    "central_charge",
    "chart_to_stab",
    "composite_path",
    "d_Z",
    "d_hyp",
    "dZ_geodesic_point",
    "distance",
    "lattice_arg_extrema",
    "lattice_log_extrema",
    "mass_phase",
    "optimal_shift",
    "orbit_rep",
    "path_length",
    "project_closure",
    "quotient_distance",
    "reparametrize_arclength",
    "stab_to_chart",
    "supinf_center",
]
