"""Exact rational measures, convolutions and operator towers on finite group levels."""

from .errors import PreconditionError, UltrameasureError, ValidationError
from .scalar import Rational, UltraNorm, abs_q, format_rational, norm_sqrt, parse_rational, valuation
from .groups import (
    FiniteGroup,
    Subgroup,
    SubgroupChain,
    cyclic,
    from_table,
    group_from_descriptor,
    heisenberg,
    make_chain,
    quotient_project,
)
from .measures import (
    Measure,
    ScalarFunction,
    dirac,
    haar,
    integrate,
    random_function,
    random_measure,
    random_probability_measure,
    random_symmetric_probability_measure,
)
from .convolve import (
    approximate_unit,
    convolve_functions,
    convolve_measures,
    is_coset_constant,
    level_convolve,
    level_norm,
    overlap_function,
    translated_sup_norm,
    weighted_sup_norm,
)
from .tower import (
    ScalarSequence,
    Tower,
    TowerElement,
    algebra_norm,
    associativity_defect,
    autocorrelation_at_identity,
    c0_star,
    commutativity_defect,
    constant_tower,
    ideal_member,
    idempotent_tower,
    involution,
    star,
)
from .rep import Operator, averaged_operator, isometry_check, weighted_regular_rep

__version__ = "0.1.0"

__all__ = [
    "PreconditionError",
    "UltrameasureError",
    "ValidationError",
    "Rational",
    "UltraNorm",
    "abs_q",
    "format_rational",
    "norm_sqrt",
    "parse_rational",
    "valuation",
    "FiniteGroup",
    "Subgroup",
    "SubgroupChain",
    "cyclic",
    "from_table",
    "group_from_descriptor",
    "heisenberg",
    "make_chain",
    "quotient_project",
    "Measure",
    "ScalarFunction",
    "dirac",
    "haar",
    "integrate",
    "random_function",
    "random_measure",
    "random_probability_measure",
    "random_symmetric_probability_measure",
    "approximate_unit",
    "convolve_functions",
    "convolve_measures",
    "is_coset_constant",
    "level_convolve",
    "level_norm",
    "overlap_function",
    "translated_sup_norm",
    "weighted_sup_norm",
    "ScalarSequence",
    "Tower",
    "TowerElement",
    "algebra_norm",
    "associativity_defect",
    "autocorrelation_at_identity",
    "c0_star",
    "commutativity_defect",
    "constant_tower",
    "ideal_member",
    "idempotent_tower",
    "involution",
    "star",
    "Operator",
    "averaged_operator",
    "isometry_check",
    "weighted_regular_rep",
]
