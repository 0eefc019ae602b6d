"""Exact cohomological bounds and verified motion planners on finite simplicial complexes."""

from .chain_algebra import (
    Cochain,
    CohomologyBasis,
    betti_numbers,
    boundary_matrix,
    cohomology_basis,
    cup_product,
    integer_homology,
)
from .complex_core import (
    BaryPoint,
    OpenSet,
    ProductPoint,
    SimplicialComplex,
    build_complex,
    diagonal_map,
    product_complex,
    sample_product_points,
)
from .fixtures import BUILTINS, STANDARD, get_complex
from .linalg import GF, QQ, ZZ, parse_field
from .ring_invariants import (
    cohomology_ring,
    cup_length,
    tc_lower_bound_report,
    tensor_square,
    zcl_via_product_complex,
    zero_divisor_cup_length,
)
from .strom_milnor import StromStructure, verify_strom

__version__ = "0.1.0"
