"""Synthetic fixed-pair sessions from seeded agent models.

Random streams: every (pair, player) gets its own PCG64 generator seeded by
``numpy.random.SeedSequence(master_seed, spawn_key=(pair_index, player))``
with ``player`` 0 for the row player and 1 for the column player.  A player
draws one uniform per round up front and takes action 1 (D or R) when the
draw falls below its current choice probability.  Pairs therefore never share
randomness or history, and the output does not depend on execution order.
"""

from __future__ import annotations

import bisect
import json
import math
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from maxent_transitions import kernels
from maxent_transitions.errors import InvalidInputError, InvariantViolation
from maxent_transitions.game import PayoffMatrix
from maxent_transitions.sessions import PairSession, RoundRecord, SessionDataset

ROW, COL = 0, 1

AGENT_KINDS = {
    "IidMixed": kernels.IID_MIXED,
    "RothErev": kernels.ROTH_EREV,
    "LogitResponse": kernels.LOGIT_RESPONSE,
}

_PARAM_NAMES = {
    "IidMixed": ("prob",),
    "RothErev": ("initial_propensity", "recency", "experimentation"),
    "LogitResponse": ("precision", "window"),
}


class ConfigError(InvalidInputError):
    """Invalid simulation config; ``field`` is a dotted path to the offending entry."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


def _number(value, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(path, f"expected a number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise ConfigError(path, "must be finite")
    return value


@dataclass(frozen=True)
class AgentSpec:
    """Learning rule of one player.

    IidMixed(prob)
        Plays action 1 (D for the row player, R for the column player) with
        fixed probability ``prob``.
    RothErev(initial_propensity, recency, experimentation)
        Propensities start at ``initial_propensity``; after each round both
        decay by ``1 - recency``, the chosen action gains ``(1 - experimentation)``
        times the realized payoff and the other action the remaining share.
        Actions are chosen in proportion to propensities.
    LogitResponse(precision, window)
        Logit reply with precision ``precision`` to the opponent's action
        frequency over the last ``window`` rounds; uniform play until
        ``window`` rounds have been observed.
    """

    kind: str
    params: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.validate("agent")

    def validate(self, path: str) -> None:
        if self.kind not in AGENT_KINDS:
            raise ConfigError(f"{path}.kind", f"unknown agent kind {self.kind!r} (expected {', '.join(AGENT_KINDS)})")
        names = _PARAM_NAMES[self.kind]
        extra = sorted(set(self.params) - set(names))
        if extra:
            raise ConfigError(f"{path}.params.{extra[0]}", f"unexpected parameter for {self.kind}")
        for name in names:
            if name not in self.params:
                raise ConfigError(f"{path}.params.{name}", "missing")
            _number(self.params[name], f"{path}.params.{name}")
        p = self.params
        if self.kind == "IidMixed" and not 0.0 <= p["prob"] <= 1.0:
            raise ConfigError(f"{path}.params.prob", "must lie in [0, 1]")
        if self.kind == "RothErev":
            if not p["initial_propensity"] > 0:
                raise ConfigError(f"{path}.params.initial_propensity", "must be > 0")
            if not 0.0 <= p["recency"] < 1.0:
                raise ConfigError(f"{path}.params.recency", "must lie in [0, 1)")
            if not 0.0 <= p["experimentation"] < 1.0:
                raise ConfigError(f"{path}.params.experimentation", "must lie in [0, 1)")
        if self.kind == "LogitResponse":
            if not p["precision"] >= 0:
                raise ConfigError(f"{path}.params.precision", "must be >= 0")
            w = p["window"]
            if float(w) != int(w) or int(w) < 1:
                raise ConfigError(f"{path}.params.window", "must be an integer >= 1")

    @property
    def code(self) -> int:
        return AGENT_KINDS[self.kind]

    def kernel_params(self) -> list[float]:
        values = [float(self.params[name]) for name in _PARAM_NAMES[self.kind]]
        return values + [0.0] * (3 - len(values))

    def to_dict(self) -> dict:
        return {"kind": self.kind, "params": dict(self.params)}

    @classmethod
    def from_dict(cls, data, path: str = "agent") -> AgentSpec:
        if not isinstance(data, dict):
            raise ConfigError(path, "expected an object")
        if "kind" not in data:
            raise ConfigError(f"{path}.kind", "missing")
        params = data.get("params", {})
        if not isinstance(params, dict):
            raise ConfigError(f"{path}.params", "expected an object")
        spec = cls.__new__(cls)
        object.__setattr__(spec, "kind", data["kind"])
        object.__setattr__(spec, "params", dict(params))
        spec.validate(path)
        return spec


def iid(prob: float) -> AgentSpec:
    return AgentSpec("IidMixed", {"prob": prob})


def roth_erev(initial_propensity: float, recency: float, experimentation: float) -> AgentSpec:
    return AgentSpec("RothErev", {
        "initial_propensity": initial_propensity,
        "recency": recency,
        "experimentation": experimentation,
    })


def logit_response(precision: float, window: int) -> AgentSpec:
    return AgentSpec("LogitResponse", {"precision": precision, "window": window})


@dataclass(frozen=True)
class SimConfig:
    game: PayoffMatrix
    pairs: int
    rounds: int
    row_agent: AgentSpec
    col_agent: AgentSpec
    master_seed: int = 0

    def __post_init__(self) -> None:
        self.validate()

    def validate(self) -> None:
        if isinstance(self.pairs, bool) or not isinstance(self.pairs, int) or self.pairs < 1:
            raise ConfigError("pairs", "must be an integer >= 1")
        if isinstance(self.rounds, bool) or not isinstance(self.rounds, int) or self.rounds < 2:
            raise ConfigError("rounds", "rounds >= 2 required")
        if isinstance(self.master_seed, bool) or not isinstance(self.master_seed, int) or not 0 <= self.master_seed < 2**64:
            raise ConfigError("master_seed", "must be an unsigned 64-bit integer")
        for path, agent in (("row_agent", self.row_agent), ("col_agent", self.col_agent)):
            agent.validate(path)
            if agent.kind == "RothErev" and self.game.min_payoff() < 0:
                raise ConfigError(f"{path}.kind", "RothErev requires non-negative payoffs for both players")

    def to_dict(self) -> dict:
        return {
            "game": self.game.to_dict(),
            "pairs": self.pairs,
            "rounds": self.rounds,
            "row_agent": self.row_agent.to_dict(),
            "col_agent": self.col_agent.to_dict(),
            "master_seed": self.master_seed,
        }

    @classmethod
    def from_dict(cls, data) -> SimConfig:
        if not isinstance(data, dict):
            raise ConfigError("$", "config must be a JSON object")
        for key in ("game", "pairs", "rounds", "row_agent", "col_agent"):
            if key not in data:
                raise ConfigError(key, "missing")
        extra = sorted(set(data) - {"game", "pairs", "rounds", "row_agent", "col_agent", "master_seed"})
        if extra:
            raise ConfigError(extra[0], "unexpected field")
        game_data = data["game"]
        if not isinstance(game_data, dict):
            raise ConfigError("game", "expected an object with fields a, b, c, d, s")
        for key in ("a", "b", "c", "d", "s"):
            if key not in game_data:
                raise ConfigError(f"game.{key}", "missing")
            _number(game_data[key], f"game.{key}")
        return cls(
            game=PayoffMatrix.from_dict(game_data),
            pairs=data["pairs"],
            rounds=data["rounds"],
            row_agent=AgentSpec.from_dict(data["row_agent"], "row_agent"),
            col_agent=AgentSpec.from_dict(data["col_agent"], "col_agent"),
            master_seed=data.get("master_seed", 0),
        )

    @classmethod
    def from_json(cls, text: str) -> SimConfig:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError("$", f"invalid JSON: {exc}") from None
        return cls.from_dict(data)


def player_stream(master_seed: int, pair_index: int, player: int) -> np.random.Generator:
    """Independent generator for one player of one pair."""
    seq = np.random.SeedSequence(master_seed, spawn_key=(pair_index, player))
    return np.random.Generator(np.random.PCG64(seq))


def _flat(matrix) -> list[float]:
    return [float(matrix[0][0]), float(matrix[0][1]), float(matrix[1][0]), float(matrix[1][1])]


def simulate_pair(cfg: SimConfig, pair_index: int) -> PairSession:
    if not 0 <= pair_index < cfg.pairs:
        raise InvalidInputError(f"pair_index must lie in [0, {cfg.pairs}), got {pair_index}")
    row_u = player_stream(cfg.master_seed, pair_index, ROW).random(cfg.rounds)
    col_u = player_stream(cfg.master_seed, pair_index, COL).random(cfg.rounds)
    row_actions, col_actions, _ = kernels.play_session(
        cfg.row_agent.code, cfg.row_agent.kernel_params(), _flat(cfg.game.row_matrix()),
        cfg.col_agent.code, cfg.col_agent.kernel_params(), _flat(cfg.game.col_matrix()),
        row_u, col_u,
    )
    return PairSession(f"p{pair_index + 1}", row_actions, col_actions)


def simulate_session(cfg: SimConfig, pair_index: int) -> list[RoundRecord]:
    """Round records of pair ``pair_index``; depends only on the master seed and the index."""
    return simulate_pair(cfg, pair_index).records()


def simulate_experiment(cfg: SimConfig, workers: int | None = None) -> SessionDataset:
    """All pairs of ``cfg``; pairs may run on ``workers`` threads, merged in index order."""
    indices = range(cfg.pairs)
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            pairs = tuple(pool.map(lambda k: simulate_pair(cfg, k), indices))
    else:
        pairs = tuple(simulate_pair(cfg, k) for k in indices)
    return SessionDataset(game=cfg.game, pairs=pairs)


# --- step-by-step reference --------------------------------------------------

@dataclass
class History:
    """What one player has seen in its own pair: its actions, the opponent's, in round order."""

    own: list[int] = field(default_factory=list)
    opp: list[int] = field(default_factory=list)

    def append(self, own: int, opp: int) -> None:
        self.own.append(int(own))
        self.opp.append(int(opp))

    def __len__(self) -> int:
        return len(self.own)


def roth_erev_propensities(spec: AgentSpec, own_payoff, history: History) -> tuple[float, float]:
    """Replay the Roth-Erev update over ``history``; ``own_payoff[own][opp]`` is the player's payoff."""
    if spec.kind != "RothErev":
        raise InvalidInputError("propensities exist only for RothErev agents")
    q0 = q1 = float(spec.params["initial_propensity"])
    phi = float(spec.params["recency"])
    eps = float(spec.params["experimentation"])
    for t, (a, b) in enumerate(zip(history.own, history.opp)):
        reward = float(own_payoff[a][b])
        q0 = (1.0 - phi) * q0
        q1 = (1.0 - phi) * q1
        if a == 0:
            q0 = q0 + reward * (1.0 - eps)
            q1 = q1 + reward * eps
        else:
            q1 = q1 + reward * (1.0 - eps)
            q0 = q0 + reward * eps
        if not (q0 > 0.0 and q1 > 0.0):
            raise InvariantViolation(f"non-positive propensity after round {t + 1}")
    return q0, q1


def choice_probability(spec: AgentSpec, own_payoff, history: History) -> float:
    """Probability of action 1 in the next round."""
    if spec.kind == "IidMixed":
        return float(spec.params["prob"])
    if spec.kind == "RothErev":
        q0, q1 = roth_erev_propensities(spec, own_payoff, history)
        return q1 / (q0 + q1)
    window = int(spec.params["window"])
    if len(history) < window:
        return 0.5
    belief = sum(history.opp[-window:]) / window
    e0 = float(own_payoff[0][0]) * (1.0 - belief) + float(own_payoff[0][1]) * belief
    e1 = float(own_payoff[1][0]) * (1.0 - belief) + float(own_payoff[1][1]) * belief
    x = float(spec.params["precision"]) * (e1 - e0)
    if x >= 0:
        return 1.0 / (1.0 + math.exp(-x))
    z = math.exp(x)
    return z / (1.0 + z)


def agent_step(spec: AgentSpec, own_payoff, history: History, stream: np.random.Generator | float) -> int:
    """Next action (0/1) given the history; ``stream`` is a generator or a pre-drawn uniform."""
    u = stream if isinstance(stream, float) else float(stream.random())
    return 1 if u < choice_probability(spec, own_payoff, history) else 0


# --- non-agent synthetic data ------------------------------------------------

def simulate_markov_experiment(
    transition: Sequence[Sequence[float]],
    pairs: int,
    rounds: int,
    seed: int,
    game: PayoffMatrix | None = None,
    initial: int = 0,
) -> SessionDataset:
    """Pairs whose joint state follows a Markov chain on x00..x11.

    ``transition[s][t]`` is the probability of moving from state ``s`` to
    ``t``.  Useful for data whose transitions are deliberately not MaxEnt.
    """
    P = np.asarray(transition, dtype=float)
    if P.shape != (4, 4) or (P < 0).any() or not np.allclose(P.sum(axis=1), 1.0):
        raise InvalidInputError("transition must be a 4x4 row-stochastic matrix")
    if pairs < 1 or rounds < 2:
        raise InvalidInputError("pairs >= 1 and rounds >= 2 required")
    cum = np.cumsum(P, axis=1)
    cum[:, -1] = 1.0
    cum_rows = [row.tolist() for row in cum]
    out = []
    for k in range(pairs):
        u = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(k,)))).random(rounds)
        seq = [int(initial)]
        s = seq[0]
        for x in u[1:].tolist():
            s = bisect.bisect_right(cum_rows[s], x)
            seq.append(s)
        states = np.array(seq, dtype=np.int64)
        out.append(PairSession(f"p{k + 1}", states & 1, states >> 1))
    return SessionDataset(game=game, pairs=tuple(out))
