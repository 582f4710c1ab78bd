import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from maxent_transitions import kernels

BACKENDS = kernels.available_backends()
PY = BACKENDS["python"]


def test_cython_backend_built():
    # the compiled extension ships with the package; the fallback exists for environments without a compiler
    assert "cython" in BACKENDS
    assert kernels.BACKEND in BACKENDS


def test_env_var_forces_python():
    out = subprocess.run(
        [sys.executable, "-c", "from maxent_transitions import kernels; print(kernels.BACKEND)"],
        env={**os.environ, "MAXENT_TRANSITIONS_PURE_PYTHON": "1"},
        capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_count_pairs_hand_example(name):
    m = BACKENDS[name].count_pairs(np.array([0, 1, 1, 3], dtype=np.int64))
    expected = np.zeros((4, 4), dtype=np.int64)
    expected[0, 1] = expected[1, 1] = expected[1, 3] = 1
    assert np.array_equal(m, expected)
    assert BACKENDS[name].count_pairs(np.array([2], dtype=np.int64)).sum() == 0


@settings(max_examples=50)
@given(st.lists(st.integers(0, 3), min_size=0, max_size=300))
def test_count_pairs_parity(seq):
    arr = np.array(seq, dtype=np.int64)
    ref = PY.count_pairs(arr)
    for mod in BACKENDS.values():
        assert np.array_equal(mod.count_pairs(arr), ref)


PAYOFF_ROW = [77.0, 35.0, 8.0, 48.0]
PAYOFF_COL = [23.0, 92.0, 65.0, 52.0]
AGENTS = [
    (kernels.IID_MIXED, [0.3, 0.0, 0.0]),
    (kernels.ROTH_EREV, [100.0, 0.1, 0.2]),
    (kernels.ROTH_EREV, [1.0, 0.0, 0.0]),
    (kernels.LOGIT_RESPONSE, [0.3, 4.0, 0.0]),
    (kernels.LOGIT_RESPONSE, [500.0, 1.0, 0.0]),
]


@pytest.mark.parametrize("row", AGENTS)
@pytest.mark.parametrize("col", AGENTS)
def test_play_session_bitwise_parity(row, col):
    rng = np.random.default_rng(17)
    ru, cu = rng.random(2000), rng.random(2000)
    ref = PY.play_session(row[0], row[1], PAYOFF_ROW, col[0], col[1], PAYOFF_COL, ru, cu)
    for mod in BACKENDS.values():
        got = mod.play_session(row[0], row[1], PAYOFF_ROW, col[0], col[1], PAYOFF_COL, ru, cu)
        assert np.array_equal(got[0], ref[0]) and np.array_equal(got[1], ref[1])
        assert got[2] == ref[2]


@settings(max_examples=40)
@given(st.floats(0, 1), st.floats(0, 1), st.integers(2, 3000))
def test_entropy_grid_parity(p, q, n):
    lo, hi = max(0.0, p + q - 1.0), min(p, q)
    step = (hi - lo) / (n - 1)
    ref = PY.max_entropy_on_segment(p, q, lo, step, n)
    for mod in BACKENDS.values():
        assert mod.max_entropy_on_segment(p, q, lo, step, n) == ref

