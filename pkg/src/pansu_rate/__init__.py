"""Word metrics on H3(Z), H3(Z) x Z and Z^3 compared with their asymptotic cones."""

from .geometry import (
    HeisPoint,
    ProdPoint,
    d3,
    dinf,
    dilate,
    synthesize_geodesic,
)
from .lattice import (
    BudgetExceeded,
    GenSet,
    Group,
    LatticeElement,
    builtin_genset,
    enumerate_ball,
    word_distance,
)

__all__ = [
    "HeisPoint", "ProdPoint", "d3", "dinf", "dilate", "synthesize_geodesic",
    "BudgetExceeded", "GenSet", "Group", "LatticeElement", "builtin_genset",
    "enumerate_ball", "word_distance",
]
