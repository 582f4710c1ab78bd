"""End-to-end chain: counts -> mean points -> MaxEnt expectations -> fit statistics."""

from __future__ import annotations

import math
from collections.abc import Mapping
from dataclasses import dataclass, field

import numpy as np

from maxent_transitions.errors import DomainError
from maxent_transitions.game import STATES, Direction, SocialState
from maxent_transitions.maxent import (
    DiscreteDistribution,
    ExpectedTable,
    expected_frequency_table,
    shannon_entropy,
)
from maxent_transitions.sessions import SessionDataset
from maxent_transitions.stats import (
    GoodnessOfFit,
    PairedPoints,
    RegressionResult,
    build_paired_points,
    goodness_of_fit,
    ols_regression,
    ols_with_direction_dummy,
)
from maxent_transitions.transitions import (
    AggregatedTransition,
    TransitionCounts,
    all_aggregates,
    count_transitions,
)

RowKey = tuple[Direction, SocialState]


@dataclass
class GameAnalysis:
    game_id: str
    counts: TransitionCounts
    omega: np.ndarray
    aggregates: dict[RowKey, AggregatedTransition | None]
    expected: ExpectedTable
    points: PairedPoints
    regressions: dict[Direction, RegressionResult | None]
    regression_errors: dict[Direction, str] = field(default_factory=dict)
    gof: dict[RowKey, GoodnessOfFit | None] = field(default_factory=dict)
    gof_errors: dict[RowKey, str] = field(default_factory=dict)
    entropy: dict[RowKey, tuple[float, float] | None] = field(default_factory=dict)


def _regress(points: PairedPoints, level: float) -> tuple[RegressionResult | None, str | None]:
    try:
        return ols_regression(points, level), None
    except DomainError as exc:
        return None, str(exc)


def analyze_counts(
    game_id: str,
    tc: TransitionCounts,
    omega: np.ndarray | None = None,
    normalization: str = "total",
    level: float = 0.99,
) -> GameAnalysis:
    """Run the full chain on one game's transition counts.

    ``omega`` defaults to the forward totals (occurrences with a successor).
    Fit quality never raises: degenerate regressions and fit tests are
    recorded in the ``*_errors`` maps instead.
    """
    omega = tc.totals_forward if omega is None else np.asarray(omega)
    table = expected_frequency_table(tc, normalization=normalization, omega=omega)
    points = build_paired_points({game_id: tc}, {game_id: table}, scope="per-game")
    result = GameAnalysis(
        game_id=game_id,
        counts=tc,
        omega=np.asarray(omega),
        aggregates=all_aggregates(tc),
        expected=table,
        points=points,
        regressions={},
    )
    for direction in Direction:
        reg, err = _regress(points.only(direction), level)
        result.regressions[direction] = reg
        if err:
            result.regression_errors[direction] = err
    for key, pred in table.rows.items():
        if pred is None:
            result.gof[key] = None
            result.entropy[key] = None
            result.gof_errors[key] = "undefined aggregate"
            continue
        actual = DiscreteDistribution(pred.actual_counts)
        result.entropy[key] = (shannon_entropy(actual), shannon_entropy(DiscreteDistribution(pred.probabilities)))
        try:
            result.gof[key] = goodness_of_fit(pred.actual_counts, pred.expected_counts)
        except DomainError as exc:
            result.gof[key] = None
            result.gof_errors[key] = str(exc)
    return result


def analyze_dataset(
    d: SessionDataset,
    game_id: str = "data",
    normalization: str = "total",
    level: float = 0.99,
) -> GameAnalysis:
    return analyze_counts(game_id, count_transitions(d), normalization=normalization, level=level)


@dataclass
class PooledRegressions:
    per_direction: dict[Direction, RegressionResult | None]
    both_directions: RegressionResult | None
    direction_dummy: RegressionResult | None
    n_games: int


def pooled_regressions(analyses: Mapping[str, GameAnalysis], level: float = 0.99) -> PooledRegressions:
    """Regressions over all games' points: per direction, both directions, and with a direction dummy."""
    counts = {gid: a.counts for gid, a in analyses.items()}
    tables = {gid: a.expected for gid, a in analyses.items()}
    points = build_paired_points(counts, tables, scope="pooled")
    per_direction = {d: _regress(points.only(d), level)[0] for d in Direction}
    both = _regress(points, level)[0]
    try:
        dummy = ols_with_direction_dummy(points, level)
    except DomainError:
        dummy = None
    return PooledRegressions(per_direction, both, dummy, len(analyses))


def entropy_summary(a: GameAnalysis, base: float | None = None) -> list[dict]:
    """Actual vs MaxEnt entropy per row; in nats unless ``base`` is given."""
    scale = 1.0 / math.log(base) if base else 1.0
    unit = "nats" if base is None else ("bits" if base == 2 else f"log{base}")
    out = []
    for direction in Direction:
        for s in STATES:
            pair = a.entropy.get((direction, s))
            out.append({
                "direction": direction.value,
                "state": s.label,
                "unit": unit,
                "actual": None if pair is None else pair[0] * scale,
                "maxent": None if pair is None else pair[1] * scale,
            })
    return out
