"""Exact workbench for functorial semi-norms on finitely presented categories.

Everything is computed over the rationals with ``fractions.Fraction``.
"""
from .exactq import RationalMatrix, Subspace, format_rational, parse_rational, rref
from .simplex import L1Problem, L1Solution, enumerate_basic_optima, min_weighted_l1
from .fincat import (
    CatFunctor,
    GeneratorArrow,
    ObjectSpec,
    PresentedCategory,
    enumerate_morphisms,
    load_category,
    one_object,
    validate,
)
from .seminorm import (
    INF,
    GeneratingFamily,
    Generated,
    NatTransform,
    Pullback,
    Sum,
    Tabulated,
    Trivial,
    check_functorial,
    eval_generated,
    evaluate,
    transfer_along_retraction,
)
from .locus import carries, seminorm_locus, universal_locus
from .diagonal import Enumeration, diagonal_weights, q_constant, verify_carry_bound
from .counterexample import EventualSeq, SeqObject, brute_force_value, closed_form_value, gap_demo
from .homology import SimplicialComplex, boundary_matrix, circle_model_bridge, homology_basis, l1_simplicial

__version__ = "0.1.0"
