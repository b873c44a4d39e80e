"""Subword complexes over finite Coxeter groups, their K-polynomials, and Grothendieck polynomials."""
from ._jit import backend_name
from .complex import (
    SubwordComplex,
    SizeError,
    VoidComplexError,
    absorbable_set,
    boundary_faces,
    build_complex,
    classify,
    deletion,
    facet_adjacency_graph,
    link,
    simplify,
    vertex_decompose,
)
from .coxeter import (
    CoxeterError,
    Dihedral,
    SignedPermutations,
    SymmetricGroup,
    bruhat_leq,
    demazure_product,
    make_system,
    minimal_universal_word,
    reduced_words,
    repetition_number,
)
from .grothendieck import (
    fomin_kirillov_expand,
    grothendieck_from_complex,
    grothendieck_recursive,
    pipe_dream_absorbable_check,
    porism_scan,
    square_word,
)
from .kpoly import (
    alexander_inversion_check,
    hochster_betti,
    hochster_kpoly,
    kpoly_demazure,
    kpoly_dual,
    kpoly_faces,
    kpoly_shelling,
)
from .poly import SparsePolynomial, demazure_operator, parse_poly
from .topology import reduced_homology, ridge_degree_check, verify_shelling

__version__ = "0.1.0"
