"""Exact combinatorics of rational external rays under angle multiplication."""

from .circle import Angle, Arc, crosses, cyclic_sort, orbit, parse_angle, parse_arc, sigma, unlinked
from .critportrait import CriticalPortrait, Partition, hat_closure, partition, piece_of, quadratic_portrait
from .entropy import AccSet, PairGraph, acc_angles, core_entropy, hdim_growth, pair_graph, spectral_radius
from .estimators import CoreEntropyTransformer, LandingClusterer, check_angles
from .exceptions import *  # noqa: F401,F403
from .itinerary import (
    Itinerary,
    Lamination,
    boundary_side,
    enumerate_angles,
    first_split,
    itinerary,
    lamination,
    lamination_from_partition,
    lands_together,
    same_itinerary,
)
from .portrait import (
    Portrait,
    Sector,
    first_narrow_time,
    key_inequality_audit,
    map_portrait,
    nesting_report,
    sector_image,
    sectors,
)
from .quadratic import (
    CharacteristicArc,
    characteristic_arc,
    characteristic_audit,
    escape_time,
    monotonicity_check,
    precedes,
    preimage_arcs,
)

__version__ = "0.1.0"
