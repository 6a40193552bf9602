"""Exact computations with quadratic algebras, FRT bialgebras and twisted QYBE solutions."""

__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .scalars import RatFunc, as_scalar, format_scalar, parse_scalar, q, specialize
from .tensor import EndTensor, EndTensor3, is_qybe_solution, qybe_residual, tensor_from_doc, tensor_to_doc
from .ncpoly import NCPoly, NCTensor
from .quadratic import (
    GradedAut,
    QuadraticAlgebra,
    algebra_from_doc,
    algebra_to_doc,
    bullet,
    dual_automorphism,
    exterior_algebra,
    free_algebra,
    graded_component,
    hilbert_function,
    koszul_dual,
    normal_form,
    polynomial_algebra,
    relation_span_equal,
    twisted_multiply,
    zhang_twist_relations,
)
from .frt import (
    FRT_CONVENTION,
    Convention,
    FRTBialgebra,
    LaurentElement,
    TwistingPair,
    check_cocycle_identity,
    check_twisting_pair,
    cocycle_closed_form,
    cocycle_sigma,
    cocycle_sigma_inverse,
    frt_relations,
    is_grouplike_central,
    manin_end,
    manin_twisting_pair,
    oq_matrix_relations,
    q_determinant,
    twisting_pair_family,
    winding,
)
from .twist import TwistSpec, classical_rq, twist_r, twist_rq_closed_form
