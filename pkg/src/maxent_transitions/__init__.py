"""Maximum-entropy prediction and testing of social-state transitions in repeated 2x2 constant-sum games."""

__version__ = "0.1.0"

from maxent_transitions.errors import (
    DomainError,
    InvalidInputError,
    InvariantViolation,
    MaxEntTransitionsError,
    ParseError,
    UndefinedAggregateError,
    ValidationError,
)
from maxent_transitions.game import (
    STATES,
    Direction,
    GameKind,
    PayoffMatrix,
    SocialState,
    classify_game,
    expected_payoffs,
    msne,
)
from maxent_transitions.sessions import (
    PairSession,
    RoundRecord,
    SessionDataset,
    parse_sessions,
    read_sessions,
    serialize_sessions,
    validate_dataset,
)
from maxent_transitions.transitions import (
    TransitionCounts,
    aggregated_transition,
    count_observations,
    count_transitions,
)
from maxent_transitions.maxent import (
    DiscreteDistribution,
    brute_force_maxent,
    expected_frequency_table,
    extremal_counterexample,
    maxent_probabilities,
    shannon_entropy,
)
from maxent_transitions.stats import build_paired_points, goodness_of_fit, ols_regression
from maxent_transitions.simulate import AgentSpec, SimConfig, agent_step, simulate_experiment, simulate_session
from maxent_transitions.analysis import analyze_counts, analyze_dataset

__all__ = [name for name in dir() if not name.startswith("_")]
