"""Exact and numerical tools for the polynomial moment problem: vanishing of
int_a^b P^i q dz, its relation to functional decomposition, and the monodromy of
P^{-1} that links the two."""
from .decompose import (CompositionCertificate, common_right_divisor, composition_condition, is_indecomposable,
                        multiplicities, right_factors)
from .errors import (InvalidInstance, NumericFailure, ParseError, PolyMomentError)
from .field import QQ, FieldElement, NumberField, fe_embed, format_scalar, parse_scalar
from .moments import (ProblemInstance, cauchy_expansion_check, double_moment, double_moments, moment_kernel,
                      moment_report, single_moment, single_moments)
from .poly import Poly, wadic_expand
from .problem import load_problem, parse_problem
from .verdict import Verdict, VerdictKind, auto_verdict, cross_validate, theorem1_verdict, theorem2_verdict

__version__ = "0.1.0"

__all__ = [
    "CompositionCertificate", "FieldElement", "InvalidInstance", "NumberField", "NumericFailure", "ParseError",
    "Poly", "PolyMomentError", "ProblemInstance", "QQ", "Verdict", "VerdictKind", "auto_verdict",
    "cauchy_expansion_check", "common_right_divisor", "composition_condition", "cross_validate", "double_moment",
    "double_moments", "fe_embed", "format_scalar", "is_indecomposable", "load_problem", "moment_kernel",
    "moment_report", "multiplicities", "parse_problem", "parse_scalar", "right_factors", "single_moment",
    "single_moments", "theorem1_verdict", "theorem2_verdict", "wadic_expand",
]
