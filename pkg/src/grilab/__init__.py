"""grilab: exact noncommutative computer algebra at desk scale.

Quaternion division algebras over Q, truncated twisted Laurent series, an
iterated Laurent tower with its shift-twisted outer ring, generalized
rational expressions with randomized identity testing, and a CLI that runs
reproducible verification scenarios over all of it.  Every computation is
exact; truncated values carry explicit precision frontiers.
"""

from .errors import (
    ConfigError,
    ExprSyntaxError,
    GrilabError,
    InapplicableAutomorphismError,
    InsufficientPrecisionError,
    NotDivisionRingError,
    NotInvertibleError,
    ResampleCapExhaustedError,
    RingMismatchError,
    SizeLimitError,
    UnboundNameError,
    WindowOverflowError,
    ZeroElementError,
    ZeroInverseError,
    ZeroLeadingTermError,
)
from .expr import (
    Constant,
    Environment,
    EvalOutcome,
    ExprAst,
    Literal,
    Negation,
    NonPermissible,
    Power,
    Product,
    Substitution,
    Sum,
    Value,
    Variable,
    eval_expr,
    format_expr,
    free_vars,
    parse_expr,
)
from .harness import (
    Report,
    SCENARIOS,
    ScenarioConfig,
    cmd_eval,
    cmd_fuzz,
    cmd_verify_lemma11,
    cmd_verify_lemma21,
    cmd_verify_lemma31,
    cmd_verify_prop22,
    cmd_verify_theorem,
    environment_for,
)
from .identities import (
    Counterexample,
    DegreeProbeReport,
    IndependenceCertificate,
    NoCounterexample,
    Verdict,
    algebraic_degree_probe,
    build_gn,
    eval_gn_dp,
    eval_gn_naive,
    is_gri_monte_carlo,
)
from .linalg import exact_rank
from .quaternions import (
    QuatAlgebra,
    QuatParams,
    Quaternion,
    central_order,
    commutator,
    is_central,
    min_poly,
    quat_algebra,
)
from .rings import (
    Automorphism,
    Identity,
    QuadConjugation,
    QuadField,
    QuadFieldElem,
    Rational,
    RationalField,
    Ring,
    TowerShift,
    apply_automorphism,
    automorphism_inverse,
    automorphism_power,
    compose_automorphisms,
    quad_field,
    rational_field,
    ring_add,
    ring_inv,
    ring_mul,
    ring_neg,
    ring_of,
    ring_pow,
    ring_sub,
)
from .sampling import SampleSpec, sample_element, sample_quaternion, sample_rational
from .series import (
    CenterProbeVerdict,
    SeriesRing,
    TowerElem,
    TowerRing,
    TruncSeries,
    center_probe,
    commutes_to_prec,
    lift_series_to_outer,
    outer_ring,
    series_inv,
    series_mul,
    series_ring,
    series_to_vector,
    tower_ring,
    tower_shift,
    truncate,
)

__version__ = "0.1.0"
