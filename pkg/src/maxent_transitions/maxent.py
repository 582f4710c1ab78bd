"""Maximum-entropy transition distributions over the four social states.

Given only the mean partner coordinate ``(p_bar, q_bar)`` of a state's
transitions, the entropy maximiser over x00..x11 is the product of two
Bernoulli laws: ``P(x_ij) = p_bar**i (1-p_bar)**(1-i) q_bar**j (1-q_bar)**(1-j)``.
The same form serves backward transitions (over source states) and forward
transitions (over target states).

Every distribution with those means is parametrised by ``pi11`` on the
interval ``[max(0, p+q-1), min(p, q)]``::

    (pi00, pi01, pi10, pi11) = (1 - p - q + pi11, q - pi11, p - pi11, pi11)

which is what the brute-force search and the counterexample generator walk.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from maxent_transitions import kernels
from maxent_transitions.errors import DomainError, InvalidInputError, UndefinedAggregateError
from maxent_transitions.game import STATES, Direction, SocialState, transition_label
from maxent_transitions.transitions import TransitionCounts, aggregated_transition


@dataclass(frozen=True, eq=False)
class DiscreteDistribution:
    """Probabilities (or counts summing to ``total``) over x00, x01, x10, x11."""

    values: np.ndarray
    total: float | None = None

    def __post_init__(self) -> None:
        v = np.array(self.values, dtype=float)
        if v.shape != (4,) or (v < 0).any() or not np.isfinite(v).all():
            raise InvalidInputError(f"distribution needs four finite non-negative values, got {self.values!r}")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def probabilities(self) -> np.ndarray:
        s = self.values.sum()
        if s <= 0:
            raise DomainError("distribution has zero mass")
        return self.values / s

    @property
    def is_counts(self) -> bool:
        return self.total is not None

    def marginal_means(self) -> tuple[float, float]:
        pi = self.probabilities
        return float(pi[2] + pi[3]), float(pi[1] + pi[3])

    def __getitem__(self, s: SocialState) -> float:
        return float(self.values[s])

    def __iter__(self):
        return iter(self.values.tolist())


def _feasible_interval(p_bar: float, q_bar: float) -> tuple[float, float]:
    for name, v in (("p_bar", p_bar), ("q_bar", q_bar)):
        if not (math.isfinite(v) and 0.0 <= v <= 1.0):
            raise DomainError(f"{name} must lie in [0, 1], got {v}")
    return max(0.0, p_bar + q_bar - 1.0), min(p_bar, q_bar)


def _joint(p_bar: float, q_bar: float, pi11: float) -> np.ndarray:
    v = np.array([1.0 - p_bar - q_bar + pi11, q_bar - pi11, p_bar - pi11, pi11])
    # endpoints may land a rounding error below zero
    return np.clip(v, 0.0, None)


def maxent_probabilities(mean: tuple[float, float]) -> DiscreteDistribution:
    """Product-Bernoulli distribution with partner means ``mean = (p_bar, q_bar)``."""
    p_bar, q_bar = (float(x) for x in mean)
    for name, v in (("p_bar", p_bar), ("q_bar", q_bar)):
        if not (math.isfinite(v) and 0.0 <= v <= 1.0):
            raise InvalidInputError(f"{name} must lie in [0, 1], got {v}")
    probs = [
        (p_bar if s.i else 1.0 - p_bar) * (q_bar if s.j else 1.0 - q_bar)
        for s in STATES
    ]
    return DiscreteDistribution(np.array(probs))


def shannon_entropy(d: DiscreteDistribution | np.ndarray, base: float | None = None) -> float:
    """Entropy in nats (or in ``base`` units) with ``0 log 0 = 0``; counts are normalised first."""
    pi = d.probabilities if isinstance(d, DiscreteDistribution) else DiscreteDistribution(d).probabilities
    nz = pi[pi > 0]
    h = float(-(nz * np.log(nz)).sum())
    return h / math.log(base) if base is not None else h


def binary_entropy(x: float) -> float:
    return shannon_entropy(DiscreteDistribution([1.0 - x, x, 0.0, 0.0]))


def brute_force_maxent(mean: tuple[float, float], resolution: float = 1e-4) -> DiscreteDistribution:
    """Grid search for the maximum-entropy joint with the given means.

    The search walks ``pi11`` over its feasible interval in steps no larger
    than ``resolution`` (both endpoints included), so the returned point is
    within ``resolution`` of the true maximiser in every cell.
    """
    if not 0.0 < resolution <= 0.01:
        raise InvalidInputError(f"resolution must be in (0, 0.01], got {resolution}")
    p_bar, q_bar = (float(x) for x in mean)
    lo, hi = _feasible_interval(p_bar, q_bar)
    if hi - lo <= 0.0:
        return DiscreteDistribution(_joint(p_bar, q_bar, lo))
    n = int(math.ceil((hi - lo) / resolution)) + 1
    step = (hi - lo) / (n - 1)
    k, _ = kernels.max_entropy_on_segment(p_bar, q_bar, lo, step, n)
    return DiscreteDistribution(_joint(p_bar, q_bar, lo + k * step))


def _integer_counts(p_bar: float, q_bar: float, total: int, at_upper: bool) -> np.ndarray:
    n_p = int(round(p_bar * total))
    n_q = int(round(q_bar * total))
    n11 = min(n_p, n_q) if at_upper else max(0, n_p + n_q - total)
    return np.array([total - n_p - n_q + n11, n_q - n11, n_p - n11, n11], dtype=float)


def extremal_counterexample(mean: tuple[float, float], total: int) -> DiscreteDistribution:
    """Minimum-entropy counts with the given means: a vertex of the feasible set.

    When both vertices are equally extreme, the one with smaller ``pi11`` wins.
    """
    total = int(total)
    if total <= 0:
        raise InvalidInputError("total must be positive")
    p_bar, q_bar = (float(x) for x in mean)
    lo, hi = _feasible_interval(p_bar, q_bar)
    h_lo = shannon_entropy(DiscreteDistribution(_joint(p_bar, q_bar, lo)))
    h_hi = shannon_entropy(DiscreteDistribution(_joint(p_bar, q_bar, hi)))
    at_upper = h_hi < h_lo - 1e-12
    return DiscreteDistribution(_integer_counts(p_bar, q_bar, total, at_upper), total=total)


@dataclass(frozen=True)
class MaxEntPrediction:
    state: SocialState
    direction: Direction
    mean_point: tuple[float, float]
    probabilities: tuple[float, float, float, float]
    expected_counts: tuple[float, float, float, float]
    actual_counts: tuple[int, int, int, int]
    scale: float

    def labels(self) -> list[str]:
        return [transition_label(self.state, partner, self.direction) for partner in STATES]

    def rounded(self) -> list[int]:
        return [round_half_up(x) for x in self.expected_counts]

    def to_dict(self) -> dict:
        return {
            "state": self.state.label,
            "direction": self.direction.value,
            "constraint": list(self.mean_point),
            "probabilities": list(self.probabilities),
            "expected": list(self.expected_counts),
            "actual": list(self.actual_counts),
            "scale": self.scale,
        }


def round_half_up(x: float) -> int:
    return int(math.floor(x + 0.5))


NORMALIZATIONS = ("total", "omega")


@dataclass(frozen=True)
class ExpectedTable:
    """MaxEnt predictions for all eight (direction, state) rows; ``None`` where undefined."""

    rows: dict[tuple[Direction, SocialState], MaxEntPrediction | None]
    normalization: str

    def prediction(self, direction: Direction, s: SocialState) -> MaxEntPrediction | None:
        return self.rows[(Direction(direction), SocialState(s))]

    def cells(self) -> dict[str, float | None]:
        """Unrounded expected count per transition label (32 entries)."""
        out: dict[str, float | None] = {}
        for (direction, s), pred in self.rows.items():
            for partner in STATES:
                label = transition_label(s, partner, direction)
                out[label] = None if pred is None else pred.expected_counts[partner]
        return out

    def missing(self) -> list[tuple[Direction, SocialState]]:
        return [key for key, pred in self.rows.items() if pred is None]


def expected_frequency_table(
    tc: TransitionCounts,
    normalization: str = "total",
    omega: np.ndarray | None = None,
) -> ExpectedTable:
    """Expected counts for every row: MaxEnt probabilities times a per-state scale.

    ``normalization="total"`` scales by the direction-specific transition total
    of the state.  ``"omega"`` scales by the state's observation count
    ``omega`` (defaults to forward totals, i.e. rounds with a successor).
    """
    if normalization not in NORMALIZATIONS:
        raise InvalidInputError(f"normalization must be one of {NORMALIZATIONS}, got {normalization!r}")
    if omega is None:
        omega = tc.totals_forward
    omega = np.asarray(omega, dtype=float)
    rows: dict[tuple[Direction, SocialState], MaxEntPrediction | None] = {}
    for direction in Direction:
        for s in STATES:
            try:
                agg = aggregated_transition(tc, s, direction)
            except UndefinedAggregateError:
                rows[(direction, s)] = None
                continue
            probs = maxent_probabilities(agg.mean_point).values
            scale = float(agg.total) if normalization == "total" else float(omega[s])
            rows[(direction, s)] = MaxEntPrediction(
                state=s,
                direction=direction,
                mean_point=agg.mean_point,
                probabilities=tuple(float(x) for x in probs),
                expected_counts=tuple(float(x) for x in probs * scale),
                actual_counts=tuple(int(x) for x in tc.row(s, direction)),
                scale=scale,
            )
    return ExpectedTable(rows, normalization)
