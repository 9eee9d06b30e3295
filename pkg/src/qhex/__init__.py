"""Exact evaluation of the q-weighted lozenge tiling partition function of a
hexagon with a triangular hole, by enumeration, determinants, a multiple
basic hypergeometric sum and a closed form.
"""

from .closed_form import prefactor_C, q_det, symmetry_check, theorem_Z
from .exactalg import FactorProduct, GRat, Mono, QLaurent, RatFunc
from .qcalculus import QField
from .tilings import (
    MethodPreconditionError,
    Region,
    RegionError,
    brute_force_Z,
    enumerate_tilings,
    lindstrom_Z,
    region_grid,
    region_new,
    selberg_Z,
    split_Z,
)

__all__ = [
    "FactorProduct", "GRat", "MethodPreconditionError", "Mono", "QField", "QLaurent",
    "RatFunc", "Region", "RegionError", "brute_force_Z", "enumerate_tilings", "lindstrom_Z",
    "prefactor_C", "q_det", "region_grid", "region_new", "selberg_Z", "split_Z",
    "symmetry_check", "theorem_Z",
]
