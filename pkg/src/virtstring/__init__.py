"""Invariants of virtual strings (flat virtual knots) from Gauss diagrams.

Core objects: Gauss diagrams and their homotopy moves, based
matrices with reduction to the unique primitive, signed singular based
matrices, the cobracket and singular-term sums, and certified lower
bounds / exact values for the minimal self-intersection number.
"""

from .based_matrix import (
    BasedMatrix,
    CanonicalizationCapExceeded,
    ElementClass,
    Reduction,
    based_matrix,
    canonical_form,
    classify,
    homologous,
    reduce_to_primitive,
    rho,
)
from .diagram import (
    HEAD,
    KERNEL_IMPLEMENTATION,
    TAIL,
    DiagramError,
    GaussDiagram,
    SignedDiagram,
    canonical_key,
    canonical_key_signed,
    is_semi_trivial,
    make_alpha_pq,
    make_example_M,
    parse_diagram,
    rotate,
    serialize_diagram,
)
from .invariants import (
    MuReport,
    TermSum,
    bound_report,
    certify_not_semi_trivial,
    is_trivial,
    mu_analysis,
    mu_terms,
    nu,
    nu_via_smoothing,
    smoothing_S,
)
from .moves import (
    BudgetExceeded,
    Move,
    MoveError,
    OrbitCertificate,
    SearchResult,
    applicable_moves,
    apply_move,
    apply_signed_move,
    homotopic_bounded,
    homotopic_signed_bounded,
    path_from_json,
    path_to_json,
    signed_applicable_moves,
    type3_orbit,
)
from .signed_matrix import (
    NoStandardFormError,
    NotPrimitiveError,
    SignedBasedMatrix,
    SignedClass,
    d_moves,
    is_primitive_signed,
    reduce_signed,
    signed_canonical_form,
    signed_classify,
    signed_homology_equivalent,
    signed_matrix,
    standard_primitive,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "1.0.0"
