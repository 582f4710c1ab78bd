"""Validation statistics: OLS of actual on expected counts, t quantiles, chi-square fit."""

from __future__ import annotations

import math
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field

import numpy as np
from scipy import optimize, special

from maxent_transitions.errors import DomainError, InvalidInputError
from maxent_transitions.fixtures import GAME_IDS
from maxent_transitions.game import STATES, Direction, transition_label
from maxent_transitions.maxent import ExpectedTable
from maxent_transitions.transitions import TransitionCounts


# --- distributions -----------------------------------------------------------

def t_cdf(t: float, dof: float) -> float:
    """Student-t CDF through the regularized incomplete beta function."""
    if not dof > 0:
        raise InvalidInputError(f"dof must be positive, got {dof}")
    if t == 0:
        return 0.5
    tail = 0.5 * special.betainc(0.5 * dof, 0.5, dof / (dof + t * t))
    return 1.0 - tail if t > 0 else tail


def t_sf(t: float, dof: float) -> float:
    return t_cdf(-t, dof)


def t_quantile(p: float, dof: float) -> float:
    """Inverse Student-t CDF by bracketing and Brent root-finding on :func:`t_cdf`."""
    if not 0.0 < p < 1.0:
        raise InvalidInputError(f"p must lie in (0, 1), got {p}")
    if not dof >= 1:
        raise InvalidInputError(f"dof must be >= 1, got {dof}")
    if p == 0.5:
        return 0.0
    if p < 0.5:
        return -t_quantile(1.0 - p, dof)
    # 1 - cdf is computed directly to keep precision in the upper tail
    target = 1.0 - p

    def upper_tail(t: float) -> float:
        return 0.5 * special.betainc(0.5 * dof, 0.5, dof / (dof + t * t)) - target

    hi = 1.0
    while upper_tail(hi) > 0:
        hi *= 2.0
    return optimize.brentq(upper_tail, 0.0, hi, xtol=1e-14, rtol=4 * np.finfo(float).eps, maxiter=500)


def chi2_sf(x: float, dof: float) -> float:
    """Chi-square survival function through the regularized upper incomplete gamma."""
    if not dof > 0:
        raise InvalidInputError(f"dof must be positive, got {dof}")
    if x <= 0:
        return 1.0
    return float(special.gammaincc(0.5 * dof, 0.5 * x))


# --- paired points -----------------------------------------------------------

@dataclass(frozen=True)
class PairedPoint:
    expected: float
    actual: float
    label: str
    direction: Direction
    game: str = ""

    def to_dict(self) -> dict:
        return {
            "game": self.game,
            "direction": self.direction.value,
            "label": self.label,
            "expected": self.expected,
            "actual": self.actual,
        }


@dataclass(frozen=True)
class PairedPoints:
    points: tuple[PairedPoint, ...]
    excluded: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        keys = [(pt.game, pt.label) for pt in self.points]
        if len(set(keys)) != len(keys):
            raise InvalidInputError("paired point labels must be unique within a set")
        for pt in self.points:
            if pt.expected < 0 or pt.actual < 0:
                raise InvalidInputError(f"negative frequency at {pt.label}")

    def __len__(self) -> int:
        return len(self.points)

    def only(self, direction: Direction) -> PairedPoints:
        direction = Direction(direction)
        return PairedPoints(tuple(pt for pt in self.points if pt.direction is direction), self.excluded)

    @property
    def expected(self) -> np.ndarray:
        return np.array([pt.expected for pt in self.points], dtype=float)

    @property
    def actual(self) -> np.ndarray:
        return np.array([pt.actual for pt in self.points], dtype=float)

    @classmethod
    def from_arrays(cls, expected: Sequence[float], actual: Sequence[float],
                    direction: Direction = Direction.FORWARD) -> PairedPoints:
        return cls(tuple(
            PairedPoint(float(x), float(y), f"pt{k}", Direction(direction))
            for k, (x, y) in enumerate(zip(expected, actual))
        ))


def _game_order(game_id: str) -> tuple[int, str]:
    return (GAME_IDS.index(game_id), "") if game_id in GAME_IDS else (len(GAME_IDS), game_id)


def build_paired_points(
    counts: Mapping[str, TransitionCounts],
    tables: Mapping[str, ExpectedTable],
    scope: str = "per-game",
) -> PairedPoints:
    """One (expected, actual) point per transition and direction.

    ``scope="per-game"`` takes exactly one game; ``"pooled"`` concatenates the
    games in g1..g11 order (other identifiers after, alphabetically).  Rows
    with an undefined aggregate are left out and listed in ``excluded``.
    """
    if set(counts) != set(tables):
        raise InvalidInputError(
            f"game identifiers differ: counts {sorted(counts)} vs expected {sorted(tables)}"
        )
    if scope not in ("per-game", "pooled"):
        raise InvalidInputError(f"scope must be 'per-game' or 'pooled', got {scope!r}")
    if scope == "per-game" and len(counts) != 1:
        raise InvalidInputError("per-game scope needs exactly one game")
    points: list[PairedPoint] = []
    excluded: list[str] = []
    for game in sorted(counts, key=_game_order):
        tc, table = counts[game], tables[game]
        for direction in Direction:
            for s in STATES:
                pred = table.prediction(direction, s)
                if pred is None:
                    excluded.append(f"{game}:{direction.value}:{s.label}")
                    continue
                row = tc.row(s, direction)
                for partner in STATES:
                    points.append(PairedPoint(
                        expected=pred.expected_counts[partner],
                        actual=float(row[partner]),
                        label=transition_label(s, partner, direction),
                        direction=direction,
                        game=game,
                    ))
    return PairedPoints(tuple(points), tuple(excluded))


# --- regression --------------------------------------------------------------

@dataclass(frozen=True)
class RegressionResult:
    slope: float
    intercept: float
    slope_ci: tuple[float, float]
    intercept_ci: tuple[float, float]
    level: float
    n: int
    dof: int
    slope_se: float = 0.0
    intercept_se: float = 0.0
    slope_p: float = 0.0
    intercept_p: float = 1.0
    r_squared: float = 1.0

    def to_dict(self) -> dict:
        return {
            "slope": self.slope,
            "slope_ci": list(self.slope_ci),
            "intercept": self.intercept,
            "intercept_ci": list(self.intercept_ci),
            "level": self.level,
            "n": self.n,
            "dof": self.dof,
            "slope_se": self.slope_se,
            "intercept_se": self.intercept_se,
            "slope_p": self.slope_p,
            "intercept_p": self.intercept_p,
            "r_squared": self.r_squared,
        }


def _check_level(level: float) -> float:
    level = float(level)
    if not 0.0 < level < 1.0:
        raise InvalidInputError(f"confidence level must lie in (0, 1), got {level}")
    return level


def ols_regression(pts: PairedPoints, level: float = 0.99) -> RegressionResult:
    """Regress actual (y) on expected (x) with classical t-based intervals."""
    level = _check_level(level)
    x, y = pts.expected, pts.actual
    n = x.shape[0]
    if n < 3:
        raise DomainError(f"regression needs at least 3 points, got {n}")
    x_mean, y_mean = x.mean(), y.mean()
    dx = x - x_mean
    sxx = float(dx @ dx)
    if sxx <= 1e-12 * max(1.0, float(x @ x)):
        raise DomainError("expected values have zero variance; slope undefined")
    slope = float(dx @ (y - y_mean)) / sxx
    intercept = float(y_mean - slope * x_mean)
    resid = y - (intercept + slope * x)
    dof = n - 2
    ssr = float(resid @ resid)
    s2 = ssr / dof
    se_slope = math.sqrt(s2 / sxx)
    se_int = math.sqrt(s2 * (1.0 / n + x_mean * x_mean / sxx))
    tq = t_quantile(0.5 + level / 2.0, dof)
    sst = float((y - y_mean) @ (y - y_mean))

    def two_sided(est: float, se: float) -> float:
        if se == 0.0:
            return 0.0 if est != 0.0 else 1.0
        return 2.0 * t_sf(abs(est) / se, dof)

    return RegressionResult(
        slope=slope,
        intercept=intercept,
        slope_ci=(slope - tq * se_slope, slope + tq * se_slope),
        intercept_ci=(intercept - tq * se_int, intercept + tq * se_int),
        level=level,
        n=n,
        dof=dof,
        slope_se=se_slope,
        intercept_se=se_int,
        slope_p=two_sided(slope, se_slope),
        intercept_p=two_sided(intercept, se_int),
        r_squared=1.0 - ssr / sst if sst > 0 else 1.0,
    )


def ols_with_direction_dummy(pts: PairedPoints, level: float = 0.99) -> RegressionResult:
    """Pooled regression over both directions with a forward-direction intercept shift.

    The returned intercept is the backward baseline.
    """
    level = _check_level(level)
    x, y = pts.expected, pts.actual
    dummy = np.array([pt.direction is Direction.FORWARD for pt in pts.points], dtype=float)
    n = x.shape[0]
    design = np.column_stack([np.ones(n), x, dummy])
    if n < 4 or np.linalg.matrix_rank(design) < 3:
        raise DomainError("direction-dummy regression needs both directions and varying x")
    beta, *_ = np.linalg.lstsq(design, y, rcond=None)
    resid = y - design @ beta
    dof = n - 3
    s2 = float(resid @ resid) / dof
    cov = s2 * np.linalg.inv(design.T @ design)
    se = np.sqrt(np.diag(cov))
    tq = t_quantile(0.5 + level / 2.0, dof)
    return RegressionResult(
        slope=float(beta[1]),
        intercept=float(beta[0]),
        slope_ci=(float(beta[1] - tq * se[1]), float(beta[1] + tq * se[1])),
        intercept_ci=(float(beta[0] - tq * se[0]), float(beta[0] + tq * se[0])),
        level=level,
        n=n,
        dof=dof,
        slope_se=float(se[1]),
        intercept_se=float(se[0]),
        slope_p=2.0 * t_sf(abs(beta[1]) / se[1], dof) if se[1] > 0 else 0.0,
        intercept_p=2.0 * t_sf(abs(beta[0]) / se[0], dof) if se[0] > 0 else 1.0,
    )


# --- goodness of fit ---------------------------------------------------------

@dataclass(frozen=True)
class GoodnessOfFit:
    chi2: float
    p_value: float
    dof: int
    cells: int = 4
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"chi2": self.chi2, "p_value": self.p_value, "dof": self.dof}


def goodness_of_fit(actual: Sequence[float], expected: Sequence[float], dof: int | None = None) -> GoodnessOfFit:
    """Pearson chi-square of ``actual`` against ``expected``.

    ``dof`` defaults to cells - 1 - 2, since the two mean constraints were
    estimated from the same counts (1 for the four-cell case).
    """
    a = np.asarray(actual, dtype=float)
    e = np.asarray(expected, dtype=float)
    if a.shape != e.shape or a.ndim != 1:
        raise InvalidInputError("actual and expected must be 1-d and equally long")
    if (e <= 0).any():
        raise DomainError("every expected cell must be positive")
    if (a < 0).any():
        raise InvalidInputError("actual counts must be non-negative")
    if dof is None:
        dof = a.shape[0] - 3
    if dof < 1:
        raise InvalidInputError(f"dof must be >= 1, got {dof}")
    chi2 = float(((a - e) ** 2 / e).sum())
    return GoodnessOfFit(chi2, chi2_sf(chi2, dof), int(dof), int(a.shape[0]))
