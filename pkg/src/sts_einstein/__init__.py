"""Exact construction and Einstein certification of the homogeneous metrics
attached to symplectic triple systems."""

from .catalog import (
    ACCEPTANCE_KEYS,
    HomogeneousPoly,
    from_key,
    make_g2_type,
    make_orthogonal_type,
    make_special_type,
    make_symplectic_type,
    transvection,
)
from .exactnum import Rational, Signature, mat_kernel, mat_rank, signature_of_symmetric, trace_wrt_orthogonal_basis
from .geometry import (
    MetricData,
    brace,
    build_alpha,
    build_geometry,
    build_metric,
    build_q_tensor,
    curvature_closed_form,
    curvature_via_alpha,
    einstein_certify,
    ricci,
    trace_q_direct,
    trace_q_formula,
)
from .lie import EnvelopingAlgebra, LieAlgebra, build_enveloping, check_jacobi, gamma_op, killing_form, reductive_split
from .pipeline import CHECKS, verify
from .results import CheckResult, ConstructionError
from .sts import (
    SymplecticBasis,
    TripleSystem,
    check_axiom_1,
    check_axiom_2,
    check_axiom_3,
    check_axiom_4,
    check_axioms,
    form_eval,
    inder_basis,
    inner_derivation,
    is_simple,
    symplectic_basis,
    triple_product,
)

__version__ = "0.1.0"
