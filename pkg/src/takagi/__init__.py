"""Exact level sets of the Takagi function.

The public API is re-exported here; see the submodules for details:
``arith`` (rationals and binary expansions), ``evaluate`` (T and T_k),
``expansion`` (the interval maps and Takagi expansions), ``engine``
(cardinalities, level sets, witnesses), ``local`` (local level sets),
``humps`` (humps and measure bounds) and ``oracle`` (dyadic-box covers).
"""

from .arith import (
    BinaryExpansion,
    DomainError,
    digit_sum_D,
    format_rational,
    has_three_zero_run_after_first_one,
    is_dyadic,
    parse_binary,
    parse_rational,
    to_binary,
)
from .engine import (
    AffineMap,
    CardinalityResult,
    Doubling,
    Kind,
    LevelSetEnumeration,
    TwoPointResult,
    Verdict,
    WitnessConstruction,
    cardinality,
    construct_witness,
    doubling_bound_check,
    enumerate_level_set,
    f_map,
    g_map,
    is_two_point_level_set,
    verify_minus_two_claims,
)
from .evaluate import PartialEvaluation, check_functional_equation, phi, takagi, takagi_partial
from .expansion import (
    INF,
    AlternativeExpansion,
    FixedPoint,
    OrdinateInterval,
    TakagiExpansion,
    Tail,
    alternative_expansions,
    canonical_expansion,
    expansion_to_abscissa,
    expansion_to_ordinate,
    fixed_point,
    kappa,
    ordinate_interval,
    parse_expansion,
    phi_map,
    psi,
    t,
)
from .humps import (
    HumpDescriptor,
    HumpFilter,
    MeasureBounds,
    RemovedIntervalSystem,
    catalan,
    enumerate_humps,
    removed_intervals,
    s2_measure_bounds,
    sigma_k,
)
from .local import LocalLevelSet, local_level_set, same_local_level_set
from .oracle import DyadicBox, IntervalCover, enclose, level_set_cover

__version__ = "0.1.0"

__all__ = [
    "BinaryExpansion",
    "DomainError",
    "digit_sum_D",
    "format_rational",
    "has_three_zero_run_after_first_one",
    "is_dyadic",
    "parse_binary",
    "parse_rational",
    "to_binary",
    "AffineMap",
    "CardinalityResult",
    "Doubling",
    "Kind",
    "LevelSetEnumeration",
    "TwoPointResult",
    "Verdict",
    "WitnessConstruction",
    "cardinality",
    "construct_witness",
    "doubling_bound_check",
    "enumerate_level_set",
    "f_map",
    "g_map",
    "is_two_point_level_set",
    "verify_minus_two_claims",
    "INF",
    "AlternativeExpansion",
    "FixedPoint",
    "OrdinateInterval",
    "TakagiExpansion",
    "Tail",
    "alternative_expansions",
    "canonical_expansion",
    "expansion_to_abscissa",
    "expansion_to_ordinate",
    "fixed_point",
    "kappa",
    "ordinate_interval",
    "parse_expansion",
    "phi_map",
    "psi",
    "t",
    "HumpDescriptor",
    "HumpFilter",
    "MeasureBounds",
    "RemovedIntervalSystem",
    "catalan",
    "enumerate_humps",
    "removed_intervals",
    "s2_measure_bounds",
    "sigma_k",
    "PartialEvaluation",
    "check_functional_equation",
    "phi",
    "takagi",
    "takagi_partial",
    "LocalLevelSet",
    "local_level_set",
    "same_local_level_set",
    "DyadicBox",
    "IntervalCover",
    "enclose",
    "level_set_cover",
]
