# cython: language_level=3
"""Compiled kernels; must stay arithmetically identical to ``_kernels_py``."""

import numpy as np

from libc.math cimport exp, log, INFINITY

from maxent_transitions.errors import InvariantViolation

cdef enum:
    IID_MIXED = 0
    ROTH_EREV = 1
    LOGIT_RESPONSE = 2


def count_pairs(states):
    cdef long long[::1] s = np.ascontiguousarray(states, dtype=np.int64)
    counts = np.zeros((4, 4), dtype=np.int64)
    cdef long long[:, ::1] out = counts
    cdef Py_ssize_t t, n = s.shape[0]
    cdef long long prev, cur
    if n < 2:
        return counts
    prev = s[0]
    for t in range(1, n):
        cur = s[t]
        out[prev, cur] += 1
        prev = cur
    return counts


cdef inline double _logistic(double x) nogil:
    cdef double z
    if x >= 0.0:
        return 1.0 / (1.0 + exp(-x))
    z = exp(x)
    return z / (1.0 + z)


cdef struct Player:
    int kind
    double p0, p1, p2
    double pay[4]
    double q0, q1, min_q
    int window
    int ones


cdef inline double _prob_one(Player* pl, Py_ssize_t t) nogil:
    cdef double belief, e0, e1
    if pl.kind == IID_MIXED:
        return pl.p0
    if pl.kind == ROTH_EREV:
        return pl.q1 / (pl.q0 + pl.q1)
    if t < pl.window:
        return 0.5
    belief = <double>pl.ones / <double>pl.window
    e0 = pl.pay[0] * (1.0 - belief) + pl.pay[1] * belief
    e1 = pl.pay[2] * (1.0 - belief) + pl.pay[3] * belief
    return _logistic(pl.p0 * (e1 - e0))


cdef inline int _update(Player* pl, int[::1] ring, Py_ssize_t t, int own, int opp) nogil:
    cdef double reward, phi, eps
    cdef Py_ssize_t slot
    if pl.kind == ROTH_EREV:
        phi = pl.p1
        eps = pl.p2
        reward = pl.pay[2 * own + opp]
        pl.q0 = (1.0 - phi) * pl.q0
        pl.q1 = (1.0 - phi) * pl.q1
        if own == 0:
            pl.q0 = pl.q0 + reward * (1.0 - eps)
            pl.q1 = pl.q1 + reward * eps
        else:
            pl.q1 = pl.q1 + reward * (1.0 - eps)
            pl.q0 = pl.q0 + reward * eps
        if not (pl.q0 > 0.0 and pl.q1 > 0.0):
            return -1
        if pl.q0 < pl.min_q:
            pl.min_q = pl.q0
        if pl.q1 < pl.min_q:
            pl.min_q = pl.q1
    elif pl.kind == LOGIT_RESPONSE:
        slot = t % pl.window
        if t >= pl.window:
            pl.ones -= ring[slot]
        ring[slot] = opp
        pl.ones += opp
    return 0


cdef Player _make_player(int kind, params, payoff):
    cdef Player pl
    cdef int k
    pl.kind = kind
    pl.p0 = float(params[0])
    pl.p1 = float(params[1]) if len(params) > 1 else 0.0
    pl.p2 = float(params[2]) if len(params) > 2 else 0.0
    for k in range(4):
        pl.pay[k] = float(payoff[k])
    pl.q0 = pl.p0
    pl.q1 = pl.p0
    pl.min_q = pl.p0 if kind == ROTH_EREV else INFINITY
    pl.window = int(pl.p1) if kind == LOGIT_RESPONSE else 0
    pl.ones = 0
    return pl


def play_session(int row_kind, row_params, row_payoff, int col_kind, col_params, col_payoff, row_u, col_u):
    cdef double[::1] ru = np.ascontiguousarray(row_u, dtype=np.float64)
    cdef double[::1] cu = np.ascontiguousarray(col_u, dtype=np.float64)
    cdef Py_ssize_t t, rounds = ru.shape[0]
    cdef Player row = _make_player(row_kind, row_params, row_payoff)
    cdef Player col = _make_player(col_kind, col_params, col_payoff)
    cdef int[::1] row_ring = np.zeros(max(row.window, 1), dtype=np.intc)
    cdef int[::1] col_ring = np.zeros(max(col.window, 1), dtype=np.intc)
    row_actions_arr = np.zeros(rounds, dtype=np.int8)
    col_actions_arr = np.zeros(rounds, dtype=np.int8)
    cdef signed char[::1] ra = row_actions_arr
    cdef signed char[::1] ca = col_actions_arr
    cdef int r, c
    cdef Py_ssize_t failed_at = -1
    with nogil:
        for t in range(rounds):
            r = 1 if ru[t] < _prob_one(&row, t) else 0
            c = 1 if cu[t] < _prob_one(&col, t) else 0
            ra[t] = r
            ca[t] = c
            if _update(&row, row_ring, t, r, c) != 0 or _update(&col, col_ring, t, c, r) != 0:
                failed_at = t
                break
    if failed_at >= 0:
        raise InvariantViolation(f"non-positive propensity after round {failed_at + 1}")
    return row_actions_arr, col_actions_arr, min(row.min_q, col.min_q)


cdef inline double _entropy4(double p, double q, double x) nogil:
    cdef double h = 0.0
    cdef double v
    v = 1.0 - p - q + x
    if v > 0.0:
        h -= v * log(v)
    v = q - x
    if v > 0.0:
        h -= v * log(v)
    v = p - x
    if v > 0.0:
        h -= v * log(v)
    v = x
    if v > 0.0:
        h -= v * log(v)
    return h


def max_entropy_on_segment(double p, double q, double lo, double step, Py_ssize_t n):
    cdef Py_ssize_t k, best_k = 0
    cdef double h, best_h = -INFINITY
    with nogil:
        for k in range(n):
            h = _entropy4(p, q, lo + k * step)
            if h > best_h:
                best_h = h
                best_k = k
    return best_k, best_h
