"""Two-person constant-sum 2x2 games and their mixed-strategy equilibrium.

Payoff layout (row player's payoffs; the column player receives ``s`` minus these)::

              L (i=0)   R (i=1)
    U (j=0)     a         b
    D (j=1)     c         d

Social states are written ``x_ij`` with ``i`` the column player's strategy and
``j`` the row player's, so ``a`` is paid at x00, ``b`` at x10, ``c`` at x01 and
``d`` at x11.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from maxent_transitions.errors import DomainError, InvalidInputError


class SocialState(enum.IntEnum):
    """Joint pure-strategy profile; the integer value is the canonical index."""

    X00 = 0
    X01 = 1
    X10 = 2
    X11 = 3

    @classmethod
    def from_indicators(cls, i: int, j: int) -> SocialState:
        if i not in (0, 1) or j not in (0, 1):
            raise InvalidInputError(f"state indicators must be 0 or 1, got ({i}, {j})")
        return cls(2 * i + j)

    @classmethod
    def parse(cls, label: str) -> SocialState:
        label = label.strip().lower().lstrip("x")
        if len(label) != 2 or any(ch not in "01" for ch in label):
            raise InvalidInputError(f"unknown social state {label!r}")
        return cls.from_indicators(int(label[0]), int(label[1]))

    @property
    def i(self) -> int:
        """Column-player indicator (0=L, 1=R)."""
        return self.value >> 1

    @property
    def j(self) -> int:
        """Row-player indicator (0=U, 1=D)."""
        return self.value & 1

    @property
    def coords(self) -> tuple[float, float]:
        return (float(self.i), float(self.j))

    @property
    def code(self) -> str:
        return f"{self.i}{self.j}"

    @property
    def label(self) -> str:
        return f"x{self.code}"

    def __str__(self) -> str:
        return self.label


STATES: tuple[SocialState, ...] = tuple(SocialState)


class Direction(str, enum.Enum):
    """Backward transitions enter a state from round t-1; forward ones leave it for round t+1."""

    BACKWARD = "backward"
    FORWARD = "forward"

    @property
    def arrow(self) -> str:
        return "<-" if self is Direction.BACKWARD else "->"


def transition_label(state: SocialState, partner: SocialState, direction: Direction) -> str:
    """Label such as ``T01<-00`` (into x01 from x00) or ``T01->00`` (from x01 to x00)."""
    return f"T{state.code}{direction.arrow}{partner.code}"


@dataclass(frozen=True)
class PayoffMatrix:
    a: float
    b: float
    c: float
    d: float
    s: float

    def __post_init__(self) -> None:
        for name in ("a", "b", "c", "d", "s"):
            value = getattr(self, name)
            try:
                value = float(value)
            except (TypeError, ValueError) as exc:
                raise InvalidInputError(f"payoff {name} is not a number: {value!r}") from exc
            if not math.isfinite(value):
                raise InvalidInputError(f"payoff {name} must be finite, got {value}")
            object.__setattr__(self, name, value)

    def row_payoff(self, state: SocialState) -> float:
        return (self.a, self.c, self.b, self.d)[state]

    def col_payoff(self, state: SocialState) -> float:
        return self.s - self.row_payoff(state)

    def row_matrix(self) -> tuple[tuple[float, float], tuple[float, float]]:
        """Row player's payoff indexed ``[own action][opponent action]``."""
        return ((self.a, self.b), (self.c, self.d))

    def col_matrix(self) -> tuple[tuple[float, float], tuple[float, float]]:
        """Column player's payoff indexed ``[own action][opponent action]``."""
        s = self.s
        return ((s - self.a, s - self.c), (s - self.b, s - self.d))

    def min_payoff(self) -> float:
        return min(
            self.a, self.b, self.c, self.d,
            self.s - self.a, self.s - self.b, self.s - self.c, self.s - self.d,
        )

    def to_dict(self) -> dict[str, float]:
        return {"a": self.a, "b": self.b, "c": self.c, "d": self.d, "s": self.s}

    @classmethod
    def from_dict(cls, data: dict) -> PayoffMatrix:
        missing = [k for k in ("a", "b", "c", "d", "s") if k not in data]
        if missing:
            raise InvalidInputError(f"payoff matrix missing fields: {', '.join(missing)}")
        return cls(data["a"], data["b"], data["c"], data["d"], data["s"])


class GameKind(enum.Enum):
    UNIQUE_MIXED_NE = "UniqueMixedNE"
    OTHER = "Other"


@dataclass(frozen=True)
class GameClass:
    kind: GameKind
    msne: tuple[float, float] | None = None


def _has_unique_mixed_ne(m: PayoffMatrix) -> bool:
    a, b, c, d = m.a, m.b, m.c, m.d
    forward = a > c and b < d and a > b and c < d
    reverse = a < c and b > d and a < b and c > d
    return forward or reverse


def _indifference_point(m: PayoffMatrix) -> tuple[float, float]:
    # Row indifferent between U and D when the column plays R with prob p:
    #   (1-p)a + p b = (1-p)c + p d
    # Column indifferent between L and R when the row plays D with prob q:
    #   (1-q)a + q c = (1-q)b + q d
    a, b, c, d = m.a, m.b, m.c, m.d
    denom = a - b - c + d
    return (a - c) / denom, (a - b) / denom


def classify_game(m: PayoffMatrix) -> GameClass:
    """Classify ``m``; the strict sign conditions are taken literally (ties give OTHER)."""
    if not _has_unique_mixed_ne(m):
        return GameClass(GameKind.OTHER)
    return GameClass(GameKind.UNIQUE_MIXED_NE, _indifference_point(m))


def msne(m: PayoffMatrix) -> tuple[float, float]:
    """Return ``(p*, q*)``: probability the column plays R and the row plays D."""
    if not _has_unique_mixed_ne(m):
        raise DomainError("game has no unique mixed-strategy Nash equilibrium")
    return _indifference_point(m)


def _check_probability(name: str, value: float) -> float:
    value = float(value)
    if not 0.0 <= value <= 1.0:
        raise InvalidInputError(f"{name} must lie in [0, 1], got {value}")
    return value


def expected_payoffs(m: PayoffMatrix, p: float, q: float) -> tuple[float, float]:
    """Expected (row, column) payoffs when the column plays R w.p. ``p`` and the row plays D w.p. ``q``."""
    p = _check_probability("p", p)
    q = _check_probability("q", q)
    row = (1 - p) * (1 - q) * m.a + p * (1 - q) * m.b + (1 - p) * q * m.c + p * q * m.d
    return row, m.s - row


def indifference_gaps(m: PayoffMatrix, p: float, q: float) -> tuple[float, float]:
    """Payoff differences E[U]-E[D] for the row player and E[L]-E[R] for the column player."""
    p = _check_probability("p", p)
    q = _check_probability("q", q)
    row_gap = expected_payoffs(m, p, 0.0)[0] - expected_payoffs(m, p, 1.0)[0]
    col_gap = expected_payoffs(m, 0.0, q)[1] - expected_payoffs(m, 1.0, q)[1]
    return row_gap, col_gap
