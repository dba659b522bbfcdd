"""Return-map cascade near a robust homoclinic tangency: tables, orbits, cocycles, Birkhoff blocks."""
from .birkhoff import Itinerary, block_averages, build_itinerary, square_cuts, square_symbol
from .checks import strip_checks, containment_checks, quadratic_checks, cocycle_checks
from .dynamics import (CvCocycle, CvCocycleState, CvPoint, apply_F, cocycle, ftle_series,
                       orbit, parity_subseries, random_seed, u_margin)
from .params import CvConfigError, CvParams, ftle_limits, n_sequence
from .tables import Check, CvTables, build_tables, check_constants

__all__ = [
    "Check", "CvCocycle", "CvCocycleState", "CvConfigError", "CvParams", "CvPoint", "CvTables",
    "Itinerary", "apply_F", "block_averages", "build_itinerary", "build_tables",
    "check_constants", "cocycle", "ftle_limits", "ftle_series", "strip_checks",
    "containment_checks", "quadratic_checks", "cocycle_checks", "n_sequence", "orbit",
    "parity_subseries", "random_seed", "square_cuts", "square_symbol", "u_margin",
]
