"""Low-complexity subshifts, topological full groups as cocycle tables,
and random-walk entropy experiments."""

__version__ = "0.1.0"

from .errors import (  # noqa: F401
    AdmissibilityViolation,
    ConditionViolated,
    DomainError,
    EmptyAlphabet,
    FullgroupLabError,
    IncompleteTable,
    InsufficientData,
    InternalInvariantError,
    NotInvertible,
    PeriodicCollision,
    ResourceLimit,
    SaturationFailure,
    SpecMismatch,
    UnresolvableHole,
    ValidationError,
)
from .subshifts import (  # noqa: F401
    Alphabet,
    ExplicitSpec,
    FullShiftSpec,
    LanguageTable,
    SturmianSpec,
    SubshiftSpec,
    SubstitutionSpec,
    ToeplitzSpec,
    build_spec,
    complexity,
    complexity_interp,
    factors,
    fibonacci_spec,
    is_primitive,
    language_table,
    spec_to_dict,
    substitution_iterate,
    toeplitz_word,
)
from .points import (  # noqa: F401
    ExplicitPoint,
    MechanicalPoint,
    PeriodicPoint,
    Point,
    SubstitutionFixedPoint,
    ToeplitzPoint,
    canonical_point,
    find_cylinder_position,
    is_periodic_window,
)
from .cocycles import (  # noqa: F401
    CocycleElement,
    GeneratorSet,
    ball,
    canonicalize,
    compose,
    element_from_dict,
    equals,
    evaluate,
    fibonacci_generators,
    from_table,
    identity,
    inverse,
    is_constant_on_cylinder,
    is_constant_on_depth,
)
from .walks import (  # noqa: F401
    ConvolutionCache,
    GroupDistribution,
    StepMeasure,
    WalkSample,
    cylinder_depth,
    default_depth_scale,
    entropy,
    entropy_envelope,
    exact_convolution,
    folner_growth_bound,
    max_displacement_tail,
    measure_from_weights,
    mixture_entropy_check,
    pushforward_offsets,
    reflection_check,
    return_probability_suite,
    sample_orbit_walks,
    stable_set_report,
    supported_a_grid,
    total_variation,
    uniform_measure,
)
from .schreier import SchreierBall, build_ball, export_adjacency_csv, export_dot  # noqa: F401
