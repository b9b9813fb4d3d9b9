"""Gluing discrete Morse matchings over covers of simplicial complexes."""
from .complex import (
    EMPTY,
    ComplexError,
    SimplicialComplex,
    cone_apexes,
    faces,
    from_facets,
    induced,
    intersect,
    is_subcomplex,
    join,
    star,
    union,
)
from .gluing import (
    Decomposition,
    HypothesisReport,
    HypothesisViolation,
    MissingAssignment,
    check_hypothesis,
    decompose,
    verify,
)
from .homology import (
    HomologyProfile,
    IntegerMatrix,
    boundary_matrix,
    reduced_homology,
    smith_normal_form,
    wedge_profile,
)
from .morse import (
    MorseData,
    MorseMatching,
    cone_matching,
    greedy_matching,
    matching_from_spec,
    validate_matching,
)
from .poset import Cover, IntersectionPoset, UnionMismatch, intersection_poset, order_complex, strict_down_set

__version__ = "0.1.0"
