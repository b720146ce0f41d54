"""Exact finite-scale checks of symmetry fractionalization in a CCZ-dressed
honeycomb toric code."""
from .algebra import (
    PhasePoly,
    XdOperator,
    NonScalarCommutator,
    apply_to_basis,
    ccz,
    commutator_phase,
    cz,
    diagonal,
    identity,
    pauli_x,
    pauli_z,
    x_product,
    z_product,
)
from .cohomology import (
    FiniteGroup,
    GModule,
    cocycle2_check,
    coboundary,
    coboundary_from_rephasing,
    cohomologous,
    eta_from_omega,
    h2_bruteforce,
    h2_trivial_action,
    smith_normal_form,
)
from .kernels import BACKEND
from .lattice import (
    HoneycombLattice,
    LatticeError,
    build_patch,
    build_torus,
    hexagon_loop,
    lattice_from_spec,
    loop_from_edges,
    loop_from_plaquettes,
    path_from,
    region_from_plaquettes,
)
from .model import SetModel, omega_table, verify_loop_identity, w_table_example

__version__ = "0.1.0"

__all__ = [
    "PhasePoly", "XdOperator", "NonScalarCommutator", "apply_to_basis", "ccz", "commutator_phase",
    "cz", "diagonal", "identity", "pauli_x", "pauli_z", "x_product", "z_product",
    "FiniteGroup", "GModule", "cocycle2_check", "coboundary", "coboundary_from_rephasing",
    "cohomologous", "eta_from_omega", "h2_bruteforce", "h2_trivial_action", "smith_normal_form",
    "BACKEND", "HoneycombLattice", "LatticeError", "build_patch", "build_torus", "hexagon_loop",
    "lattice_from_spec", "loop_from_edges", "loop_from_plaquettes", "path_from",
    "region_from_plaquettes", "SetModel", "omega_table", "verify_loop_identity", "w_table_example",
]
