"""Stochastic orders, their lattice suprema and maxitive functionals on finite laws."""

from .functionals import (
    FunctionalSpec,
    MaxitivityReport,
    alpha_min_from_set,
    check_maxitivity,
    es,
    es_bar,
    eval_penalty,
    evaluate,
    g_transform_eval,
    var,
)
from .lattice import QuantileFamily, concave_envelope, sup_order, total_variation
from .orders import OrderVerdict, Relation, check_order
from .penalty import PenaltyCurve, PenaltyFamily
from .quantile import (
    DEFAULT_TOL,
    DistributionError,
    PiecewiseLinearFn,
    StepQuantile,
    build_distribution,
    cdf,
    eval_q,
    eval_q_plus,
    integrated_quantile,
    mean,
    negate,
    quantile_from_integrated,
    quantile_from_reflected,
    reflected_integrated,
    translate,
)

__all__ = [
    "DEFAULT_TOL",
    "DistributionError",
    "FunctionalSpec",
    "MaxitivityReport",
    "OrderVerdict",
    "PenaltyCurve",
    "PenaltyFamily",
    "PiecewiseLinearFn",
    "QuantileFamily",
    "Relation",
    "StepQuantile",
    "alpha_min_from_set",
    "build_distribution",
    "cdf",
    "check_maxitivity",
    "check_order",
    "concave_envelope",
    "es",
    "es_bar",
    "eval_penalty",
    "eval_q",
    "eval_q_plus",
    "evaluate",
    "g_transform_eval",
    "integrated_quantile",
    "mean",
    "negate",
    "quantile_from_integrated",
    "quantile_from_reflected",
    "reflected_integrated",
    "sup_order",
    "total_variation",
    "translate",
    "var",
]
