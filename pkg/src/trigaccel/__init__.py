"""Difference-operator transforms that accelerate trigonometric series.

Typical use::

    from trigaccel import SeriesSpec, TrigPhase, two_exponential, transform
    series = SeriesSpec(two_exponential(2, 3), TrigPhase(1, 0, 3 * math.pi / 4))
    t = transform(series, [1 / 3, 2 / 9])
    value = transformed_partial_sum(t, 4)
"""

from .acceleration import (
    DecayCondition,
    RatioDivergent,
    RSelection,
    RSelectionConfig,
    StopReason,
    ValidationReport,
    ZeroDenominator,
    estimate_r_next,
    estimate_r_sequence,
    euler_partial_sum,
    euler_term,
    validate_theorem2,
)
from .evaluation import (
    AccelerationReport,
    BudgetExceeded,
    PEntry,
    build_report,
    oracle_sum,
    terms_to_tolerance_direct,
    terms_to_tolerance_transformed,
)
from .operators import (
    Kind,
    RSequence,
    TrigPhase,
    apply_L_recurrence,
    apply_L_symmetric,
    elementary_symmetric,
    trig_L,
)
from .sequences import (
    CoefficientSequence,
    from_values,
    geometric,
    power,
    read_coefficient_file,
    two_exponential,
)
from .summation import CompensatedSum, compensated_sum
from .transforms import (
    DenominatorNearZero,
    SeriesSpec,
    TransformResult,
    transform,
    transform_single_r,
    transformed_partial_sum,
)

__version__ = "0.1.0"
