"""Pure-Python kernels; reference behaviour for the compiled ``_kernels`` twin.

Both modules must perform floating-point operations in the same order so that
simulations are bitwise identical whichever backend is loaded.
"""

from __future__ import annotations

import math

import numpy as np

from maxent_transitions.errors import InvariantViolation

IID_MIXED = 0
ROTH_EREV = 1
LOGIT_RESPONSE = 2


def count_pairs(states):
    """4x4 counts of consecutive ``(states[t], states[t+1])`` pairs."""
    states = np.asarray(states, dtype=np.int64)
    counts = np.zeros((4, 4), dtype=np.int64)
    if states.shape[0] < 2:
        return counts
    prev = int(states[0])
    for t in range(1, states.shape[0]):
        cur = int(states[t])
        counts[prev, cur] += 1
        prev = cur
    return counts


def _logistic(x):
    if x >= 0.0:
        return 1.0 / (1.0 + math.exp(-x))
    z = math.exp(x)
    return z / (1.0 + z)


class _Player:
    __slots__ = ("kind", "params", "payoff", "q0", "q1", "window", "ring", "ones", "min_q")

    def __init__(self, kind, params, payoff, rounds):
        self.kind = kind
        self.params = params
        self.payoff = payoff  # flat [own 0 vs opp 0, own 0 vs opp 1, own 1 vs opp 0, own 1 vs opp 1]
        self.q0 = params[0]
        self.q1 = params[0]
        self.min_q = params[0] if kind == ROTH_EREV else math.inf
        self.window = int(params[1]) if kind == LOGIT_RESPONSE else 0
        self.ring = [0] * max(self.window, 1)
        self.ones = 0

    def prob_one(self, t):
        if self.kind == IID_MIXED:
            return self.params[0]
        if self.kind == ROTH_EREV:
            return self.q1 / (self.q0 + self.q1)
        if t < self.window:
            return 0.5
        belief = self.ones / self.window
        pay = self.payoff
        e0 = pay[0] * (1.0 - belief) + pay[1] * belief
        e1 = pay[2] * (1.0 - belief) + pay[3] * belief
        return _logistic(self.params[0] * (e1 - e0))

    def update(self, t, own, opp):
        if self.kind == ROTH_EREV:
            phi = self.params[1]
            eps = self.params[2]
            reward = self.payoff[2 * own + opp]
            self.q0 = (1.0 - phi) * self.q0
            self.q1 = (1.0 - phi) * self.q1
            if own == 0:
                self.q0 = self.q0 + reward * (1.0 - eps)
                self.q1 = self.q1 + reward * eps
            else:
                self.q1 = self.q1 + reward * (1.0 - eps)
                self.q0 = self.q0 + reward * eps
            if not (self.q0 > 0.0 and self.q1 > 0.0):
                raise InvariantViolation(f"non-positive propensity after round {t + 1}")
            self.min_q = min(self.min_q, self.q0, self.q1)
        elif self.kind == LOGIT_RESPONSE:
            slot = t % self.window
            if t >= self.window:
                self.ones -= self.ring[slot]
            self.ring[slot] = opp
            self.ones += opp


def play_session(row_kind, row_params, row_payoff, col_kind, col_params, col_payoff, row_u, col_u):
    """Play one fixed pair for ``len(row_u)`` rounds.

    Each player takes action 1 in round ``t`` when its uniform draw is below
    its current choice probability.  Returns ``(row_actions, col_actions,
    min_propensity)`` where the last item is ``inf`` unless a Roth-Erev agent
    is present.
    """
    rounds = len(row_u)
    row = _Player(row_kind, [float(v) for v in row_params], [float(v) for v in row_payoff], rounds)
    col = _Player(col_kind, [float(v) for v in col_params], [float(v) for v in col_payoff], rounds)
    row_actions = np.zeros(rounds, dtype=np.int8)
    col_actions = np.zeros(rounds, dtype=np.int8)
    for t in range(rounds):
        r = 1 if float(row_u[t]) < row.prob_one(t) else 0
        c = 1 if float(col_u[t]) < col.prob_one(t) else 0
        row_actions[t] = r
        col_actions[t] = c
        row.update(t, r, c)
        col.update(t, c, r)
    return row_actions, col_actions, min(row.min_q, col.min_q)


def _entropy4(p, q, x):
    h = 0.0
    for v in (1.0 - p - q + x, q - x, p - x, x):
        if v > 0.0:
            h -= v * math.log(v)
    return h


def max_entropy_on_segment(p, q, lo, step, n):
    """Grid point ``lo + k*step`` (k < n) maximising the entropy of the joint with marginals p, q.

    Returns ``(k, entropy)``; ties resolve to the smallest ``k``.
    """
    best_k = 0
    best_h = -math.inf
    for k in range(n):
        h = _entropy4(p, q, lo + k * step)
        if h > best_h:
            best_h = h
            best_k = k
    return best_k, best_h
