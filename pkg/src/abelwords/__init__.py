"""Abelian complexity, balance and abelian powers of classical infinite words."""
from .abelian import (
    BalanceProfile,
    ComplexityProfile,
    ParikhPrefixSums,
    StabilizationPolicy,
    abelian_complexity_profile,
    abelian_equivalent,
    balance_profile,
    max_abelian_complexity,
    parikh,
    periodicity_probe,
    prefix_factor_balance,
    window_spectrum,
)
from .factors import (
    factor_complexity_profile,
    right_special_factors,
    tribonacci_central_check,
    tribonacci_central_checks,
)
from .powers import (
    abelian_power_violation,
    fixed_period_falsifier,
    max_abelian_power_at,
    min_period_for_k,
    period_doubling_check,
    position_coverage_report,
    two_period_cover,
)
from .wordgen import (
    Champernowne,
    Literal,
    MorphicFixedPoint,
    MorphicImage,
    Morphism,
    Prepend,
    PrefixBuffer,
    SturmianDirective,
    UltimatelyPeriodic,
    WordSpec,
    apply_morphism,
    materialize,
    parse_spec,
)

__version__ = "0.1.0"
