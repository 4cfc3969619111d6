"""Finite Markov chains viewed as symbolic dynamics.

Simulate chains of any memory order, embed their paths in the space of
symbol sequences, certify the diameter and separation conditions of the
shift, and search sample paths for unpredictability witnesses.
"""

__version__ = "0.1.0"

from .chaos import (
    ArcCoverageReport,
    DevaneyCertificate,
    Witness,
    WitnessReport,
    arc_coverage,
    de_bruijn,
    default_epsilon0,
    devaney_certificate,
    divergence_locator,
    find_witnesses,
    recurrence_shifts,
)
from .estimators import (
    ArcCoverageAnalyzer,
    BlockEncoder,
    MarkovChainSimulator,
    UnpredictabilityScanner,
    WalkEventEncoder,
)
from .exceptions import (
    ConfigParseError,
    EnumerationBudgetExceeded,
    MarkovChaosError,
    ValidationError,
)
from .randomwalk import (
    WalkConfig,
    build_walk_chain,
    decode_events_to_walk,
    encode_walk_to_events,
    simulate_walk,
    step_function_export,
)
from .sequence_space import (
    Cylinder,
    check_diameter_condition,
    check_separation_condition,
    cylinder_diameter,
    delta_metric,
    shift,
    similarity_coverage,
)
from .simulator import Realization, random_initial, simulate
from .state_space import StateSpace, min_pairwise_distance, validate_metric
from .transition import (
    TransitionModel,
    block_encode,
    lift_to_first_order,
    subsequence_projection,
    validate_stochastic,
)
