"""Sharp differential-subordination bounds with numerical certification.

The package computes, for three first-order differential operator families
(additive, logarithmic and reciprocal), the least coefficient beta for which
the extremal dominant function stays inside a catalog of Caratheodory-type
target regions.  Every closed-form bound is backed by an independent
quadrature-plus-bisection oracle, and each containment claim can be certified
geometrically by winding-number tests on sampled boundary curves.
"""

from subord.functions import (
    FUNCTION_IDS,
    BoundaryCurve,
    TargetFunction,
    Verdict,
    eval_target,
    eval_target_deriv,
    get_target,
    region_contains,
    target_boundary,
)
from subord.quadrature import (
    KERNEL_SOURCES,
    IntegralConstant,
    integral_constants,
    kernel_eval,
    path_integral,
)
from subord.bounds import (
    QFamily,
    SubordinationCase,
    get_case,
    list_cases,
    min_beta_bisection,
    sharp_beta,
)
from subord.subordination import (
    Containment,
    ContainmentReport,
    SharpnessReport,
    lemma_hypotheses,
    q_eval,
    sharpness_probe,
    verify_containment,
)
from subord.starlike import (
    AnalyticFunctionSpec,
    class_membership,
    corollary_check,
    m_expr,
    ratio_zfp_over_f,
)

__version__ = "0.1.0"

__all__ = [
    "FUNCTION_IDS",
    "KERNEL_SOURCES",
    "AnalyticFunctionSpec",
    "BoundaryCurve",
    "Containment",
    "ContainmentReport",
    "IntegralConstant",
    "QFamily",
    "SharpnessReport",
    "SubordinationCase",
    "TargetFunction",
    "Verdict",
    "class_membership",
    "corollary_check",
    "eval_target",
    "eval_target_deriv",
    "get_case",
    "get_target",
    "integral_constants",
    "kernel_eval",
    "lemma_hypotheses",
    "list_cases",
    "m_expr",
    "min_beta_bisection",
    "path_integral",
    "q_eval",
    "ratio_zfp_over_f",
    "region_contains",
    "sharp_beta",
    "sharpness_probe",
    "target_boundary",
    "verify_containment",
]
