"""State sequences, transition counts and per-state aggregated transitions."""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np

from maxent_transitions import kernels
from maxent_transitions.errors import DomainError, InvalidInputError, UndefinedAggregateError
from maxent_transitions.game import STATES, Direction, SocialState
from maxent_transitions.sessions import COL_ACTIONS, ROW_ACTIONS, RoundRecord, SessionDataset

_P_COORD = np.array([s.i for s in STATES], dtype=float)
_Q_COORD = np.array([s.j for s in STATES], dtype=float)


def state_sequence(records: Sequence[RoundRecord]) -> list[SocialState]:
    """Social state of each round, in round order."""
    ordered = sorted(records, key=lambda r: r.round)
    return [
        SocialState.from_indicators(COL_ACTIONS[r.col_action.upper()], ROW_ACTIONS[r.row_action.upper()])
        for r in ordered
    ]


@dataclass(frozen=True, eq=False)
class TransitionCounts:
    """Counts of ordered state pairs ``matrix[from, to]`` over consecutive rounds.

    The forward view of state ``s`` is row ``s``; the backward view is column
    ``s``.  Both read the same storage.
    """

    matrix: np.ndarray

    def __post_init__(self) -> None:
        m = np.array(self.matrix, dtype=np.int64)
        if m.shape != (4, 4) or (m < 0).any():
            raise InvalidInputError("transition counts must be a non-negative 4x4 table")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @classmethod
    def from_sequences(cls, sequences: Iterable[np.ndarray]) -> TransitionCounts:
        total = np.zeros((4, 4), dtype=np.int64)
        for seq in sequences:
            total += kernels.count_pairs(np.asarray(seq, dtype=np.int64))
        return cls(total)

    def count(self, source: SocialState, target: SocialState) -> int:
        return int(self.matrix[source, target])

    def forward(self, s: SocialState) -> np.ndarray:
        """Counts from ``s`` to each target x00..x11."""
        return self.matrix[s, :].copy()

    def backward(self, s: SocialState) -> np.ndarray:
        """Counts into ``s`` from each source x00..x11."""
        return self.matrix[:, s].copy()

    def row(self, s: SocialState, direction: Direction) -> np.ndarray:
        return self.backward(s) if Direction(direction) is Direction.BACKWARD else self.forward(s)

    @property
    def totals_forward(self) -> np.ndarray:
        return self.matrix.sum(axis=1)

    @property
    def totals_backward(self) -> np.ndarray:
        return self.matrix.sum(axis=0)

    def total(self, s: SocialState, direction: Direction) -> int:
        return int(self.row(s, direction).sum())

    @property
    def n_transitions(self) -> int:
        return int(self.matrix.sum())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TransitionCounts):
            return NotImplemented
        return bool(np.array_equal(self.matrix, other.matrix))

    __hash__ = None  # type: ignore[assignment]


def _require_transitions(d: SessionDataset) -> None:
    short = [p.pair_id for p in d.pairs if p.rounds < 2]
    if short or not d.pairs:
        raise DomainError(f"T >= 2 required for transitions (pairs: {', '.join(short) or 'none'})")


def count_transitions(d: SessionDataset) -> TransitionCounts:
    """Pool consecutive-round transitions of every pair; nothing crosses a pair boundary."""
    _require_transitions(d)
    return TransitionCounts.from_sequences(p.states() for p in d.pairs)


def count_observations(d: SessionDataset) -> np.ndarray:
    """Per-state occurrences that have a successor round (rounds 1..T-1 of each pair)."""
    return count_transitions(d).totals_forward


@dataclass(frozen=True)
class AggregatedTransition:
    state: SocialState
    direction: Direction
    mean_point: tuple[float, float]
    vector: tuple[float, float]
    total: int


def mean_point(row: np.ndarray) -> tuple[float, float]:
    """Mean (p, q) coordinate of partner states weighted by ``row`` counts."""
    row = np.asarray(row, dtype=float)
    total = row.sum()
    if total <= 0:
        raise UndefinedAggregateError("no transitions to aggregate")
    return float(row @ _P_COORD / total), float(row @ _Q_COORD / total)


def aggregated_transition(tc: TransitionCounts, s: SocialState, direction: Direction) -> AggregatedTransition:
    """Mean starting point (backward) or mean terminal point (forward) of state ``s``."""
    s = SocialState(s)
    direction = Direction(direction)
    row = tc.row(s, direction)
    total = int(row.sum())
    if total == 0:
        verb = "entered" if direction is Direction.BACKWARD else "left"
        raise UndefinedAggregateError(f"state {s} is never {verb}; {direction.value} aggregate undefined")
    p_bar, q_bar = mean_point(row)
    si, sj = s.coords
    if direction is Direction.BACKWARD:
        vector = (si - p_bar, sj - q_bar)
    else:
        vector = (p_bar - si, q_bar - sj)
    return AggregatedTransition(s, direction, (p_bar, q_bar), vector, total)


def all_aggregates(tc: TransitionCounts) -> dict[tuple[Direction, SocialState], AggregatedTransition | None]:
    """Aggregates for every (direction, state); ``None`` marks an undefined aggregate."""
    out: dict[tuple[Direction, SocialState], AggregatedTransition | None] = {}
    for direction in Direction:
        for s in STATES:
            try:
                out[(direction, s)] = aggregated_transition(tc, s, direction)
            except UndefinedAggregateError:
                out[(direction, s)] = None
    return out
