"""Entanglement entropy of spin-flip stabilizer states on lattices.

Exact GF(2) rank arithmetic for the entropy of equal-superposition
stabilizer states, a k x k toric-code front end with the published
closed forms, and a dense statevector oracle for cross-validation at
small sizes.
"""

from .engine import (
    EntropyReport,
    ScanResult,
    absolute_entanglement_scan,
    boundary_bounds_check,
    entropy_bounds,
    entropy_equal_superposition,
    geometric_entropy,
    ground_degeneracy,
    independent_generator_count,
    is_closed_string_net,
    is_diagonal,
    perimeter_entropy,
)
from .errors import LatticeFormatError, ResourceLimitError
from .gf2 import FlipVector, Gf2Matrix
from .lattice import (
    BoundaryStats,
    Lattice,
    Partition,
    boundary_stats,
    build_torus,
    disk_region,
    ladder_operators,
    lattice_to_document,
    load_lattice,
    named_partition,
    parse_lattice_document,
    plaquette_group,
    random_rectangle_region,
    random_simple_region,
    region_from_sites,
    star_group,
)
from .oracle import (
    basis_state_entropy_invariance,
    build_ground_state,
    concurrence,
    off_diagonal_mass,
    oracle_entropy,
    reduced_density_matrix,
    von_neumann_entropy,
)
from .states import (
    GroundStateCoeffs,
    alpha,
    binary_entropy,
    closed_form_entropy,
    p_param,
)

__version__ = "0.1.0"

__all__ = [
    "BoundaryStats",
    "EntropyReport",
    "FlipVector",
    "Gf2Matrix",
    "GroundStateCoeffs",
    "Lattice",
    "LatticeFormatError",
    "Partition",
    "ResourceLimitError",
    "ScanResult",
    "absolute_entanglement_scan",
    "alpha",
    "basis_state_entropy_invariance",
    "binary_entropy",
    "boundary_bounds_check",
    "boundary_stats",
    "build_ground_state",
    "build_torus",
    "closed_form_entropy",
    "concurrence",
    "disk_region",
    "entropy_bounds",
    "entropy_equal_superposition",
    "geometric_entropy",
    "ground_degeneracy",
    "independent_generator_count",
    "is_closed_string_net",
    "is_diagonal",
    "ladder_operators",
    "lattice_to_document",
    "load_lattice",
    "named_partition",
    "off_diagonal_mass",
    "oracle_entropy",
    "p_param",
    "parse_lattice_document",
    "perimeter_entropy",
    "plaquette_group",
    "random_rectangle_region",
    "random_simple_region",
    "reduced_density_matrix",
    "region_from_sites",
    "star_group",
    "von_neumann_entropy",
]
