"""Causal event posets quantified by embedded observer chains.

Particle chains plus pairwise influence edges form a causal poset; projecting
events onto observer chains yields interval pairs, an invariant interval
scalar, emergent (t, x) coordinates and Lorentz-analog boosts.  Free-particle
influence sequences give zig-zag paths and rate-based kinematics, and the
consistent amplitude calculus over those sequences is the 1+1D checkerboard
propagator.
"""

from .errors import (
    BoundaryError,
    CapExceededError,
    CausetkitError,
    CoordinationUndecidableError,
    CycleError,
    PosetStructureError,
    SchemaError,
    UnknownEventError,
    UnquantifiableIntervalError,
)
from .exact import Surd, collapse, sqrt_exact
from .poset import (
    CausalPoset,
    ValidationReport,
    Violation,
    build_poset,
    causal_leq,
    dual,
    load_poset,
    save_poset,
    topological_order,
    validate,
)
from .quantify import (
    ANTICHAIN_LIKE,
    CHAIN_LIKE,
    MODE_COORDINATED,
    MODE_SINGLE_CHAIN,
    PROJECTION_LIKE,
    ChainValuation,
    IntervalPair,
    IntervalScalar,
    LinearRelation,
    Projection,
    SpacetimeInterval,
    backward_project,
    chain_length,
    check_coordination,
    decompose,
    distance,
    forward_project,
    from_spacetime,
    interval_pair,
    interval_scalar,
    length,
    lorentz_transform,
    metric_scalar,
    pair_transform,
    quantification_rows,
    to_spacetime,
)
from .kinematics import (
    DEFAULT_ENUMERATION_CAP,
    InfluenceSequence,
    KinematicState,
    P_MOVE,
    Q_MOVE,
    SpacetimePath,
    UnorderedInfluenceCount,
    count_orderings,
    enumerate_orderings,
    kinematic_state,
    path_rows,
    random_sequence,
    rates,
    sequence_to_path,
    transform_energy_momentum,
    transform_rates,
)
from .checkerboard import (
    Amplitude,
    CheckerboardField,
    ConstraintReport,
    DerivedWeighting,
    FeynmanWeighting,
    PathWeight,
    PropagatorPair,
    Spinor,
    amp_add,
    amp_mul,
    born,
    expand_sequence,
    kernel,
    kernel_discrepancy,
    kernel_matrix,
    kernel_pathsum,
    make_propagators,
    measurement_amplitude,
    parallel_join,
    path_weight,
    propagators_from_mass,
    propagators_from_theta,
    reversal_count,
    sequence_amplitude,
    series_join,
    step_field,
    transition_magnitude_solutions,
    unordered_amplitude,
    verify_propagator_constraints,
    zero_momentum_propagators,
)

__version__ = "0.1.0"
