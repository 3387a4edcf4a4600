"""Conjugate quandles of SL(2,C) and PSL(2,C) and quandles of Kleinian groups."""

from .components import (
    ComponentIdSL,
    GeneralCoord,
    ParabolicCoord,
    TraceClass,
    base_point_psl,
    base_point_sl,
    chart_general,
    chart_general_inv,
    chart_parabolic,
    chart_parabolic_inv,
    component_of_psl,
    component_of_sl,
    conjugator_to_base,
    lambda_of_trace,
)
from .decompose import Transvection, decompose_in_Xt, decompose_UL, transvection_in_Xt
from .errors import QuandleError
from .kleinian import (
    ElementaryType,
    GroupSpec,
    KleinQuandle,
    build_quandle,
    cayley_ball,
    centralizer_type,
    discreteness_report,
    preset,
)
from .moebius import IsometryClass, PSL2Element, SL2Matrix, classify, psl_eq
from .numerics import CC, EPS, QuadraticField, QuadScalar
from .quandle import QuandleTriplet, check_axioms, conjugation_sample, inner_orbit

__version__ = "0.1.0"

__all__ = [
    "base_point_psl",
    "base_point_sl",
    "build_quandle",
    "cayley_ball",
    "CC",
    "centralizer_type",
    "chart_general",
    "chart_general_inv",
    "chart_parabolic",
    "chart_parabolic_inv",
    "check_axioms",
    "classify",
    "component_of_psl",
    "component_of_sl",
    "ComponentIdSL",
    "conjugation_sample",
    "conjugator_to_base",
    "decompose_in_Xt",
    "decompose_UL",
    "discreteness_report",
    "ElementaryType",
    "EPS",
    "GeneralCoord",
    "GroupSpec",
    "inner_orbit",
    "IsometryClass",
    "KleinQuandle",
    "lambda_of_trace",
    "ParabolicCoord",
    "preset",
    "PSL2Element",
    "psl_eq",
    "QuadraticField",
    "QuadScalar",
    "QuandleError",
    "QuandleTriplet",
    "SL2Matrix",
    "TraceClass",
    "Transvection",
    "transvection_in_Xt",
    "__version__",
]
