import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from maxent_transitions.errors import DomainError, InvalidInputError
from maxent_transitions.fixtures import GAME_IDS, load_paper_fixture
from maxent_transitions.game import STATES, Direction, SocialState
from maxent_transitions.maxent import (
    DiscreteDistribution,
    binary_entropy,
    brute_force_maxent,
    expected_frequency_table,
    extremal_counterexample,
    maxent_probabilities,
    round_half_up,
    shannon_entropy,
)
from maxent_transitions.transitions import TransitionCounts
from oracles import maxent_slsqp

X00, X01, X10, X11 = STATES
G1_X01_MEAN = (271 / 432, 299 / 432)


def g1_table(normalization="total"):
    fx = load_paper_fixture("g1")
    return expected_frequency_table(TransitionCounts(fx.forward), normalization, omega=np.array(fx.omega))


def test_product_form_examples():
    counts = maxent_probabilities(G1_X01_MEAN).values * 432
    assert [round_half_up(x) for x in counts] == [50, 111, 83, 188]
    assert maxent_probabilities((0, 0)).values.tolist() == [1, 0, 0, 0]
    assert maxent_probabilities((0.5, 0.5)).values.tolist() == [0.25] * 4


def test_product_form_rejects_out_of_range():
    with pytest.raises(InvalidInputError):
        maxent_probabilities((1.2, 0.1))
    with pytest.raises(InvalidInputError):
        maxent_probabilities((0.2, float("nan")))


def test_expected_table_g1_rows():
    t = g1_table()
    x01 = t.prediction(Direction.BACKWARD, X01)
    assert x01.rounded() == [50, 111, 83, 188]
    x00 = t.prediction(Direction.BACKWARD, X00)
    assert x00.rounded() == pytest.approx([459, 160, 279, 97], abs=1)
    assert sum(x00.expected_counts) == pytest.approx(995)
    assert x00.labels() == ["T00<-00", "T00<-01", "T00<-10", "T00<-11"]


def test_omega_normalization_differs_where_totals_differ():
    total = g1_table("total").prediction(Direction.BACKWARD, X00)
    omega = g1_table("omega").prediction(Direction.BACKWARD, X00)
    assert (total.scale, omega.scale) == (995, 994)
    assert sum(omega.expected_counts) == pytest.approx(994)
    # forward totals are omega by construction, so forward rows agree
    for s in STATES:
        assert (g1_table("total").prediction(Direction.FORWARD, s).expected_counts
                == g1_table("omega").prediction(Direction.FORWARD, s).expected_counts)


def test_unknown_normalization():
    with pytest.raises(InvalidInputError):
        expected_frequency_table(TransitionCounts(np.eye(4, dtype=int)), "bogus")


def test_single_pair_forward_row():
    m = np.zeros((4, 4), dtype=int)
    m[X00, X00] = 2
    t = expected_frequency_table(TransitionCounts(m))
    assert t.prediction(Direction.FORWARD, X00).expected_counts == (2.0, 0.0, 0.0, 0.0)
    assert len(t.missing()) == 6
    cells = t.cells()
    assert len(cells) == 32 and cells["T11->00"] is None


@pytest.mark.parametrize("gid", GAME_IDS)
def test_expected_table_regeneration(gid):
    fx = load_paper_fixture(gid)
    t = expected_frequency_table(TransitionCounts(fx.forward))
    for label, value in t.cells().items():
        tol = 2 if label in fx.corrections else 1
        assert abs(round_half_up(value) - fx.expected[label]) <= tol, label


def test_typo_cells_recomputed():
    g8 = expected_frequency_table(TransitionCounts(load_paper_fixture("g8").forward)).cells()
    g6 = expected_frequency_table(TransitionCounts(load_paper_fixture("g6").forward)).cells()
    # frozen from an exact-fraction recomputation of the fixture counts
    assert g8["T00->00"] == pytest.approx(96.77, abs=0.005)
    assert g6["T11<-11"] == pytest.approx(332.63, abs=0.005)


def test_brute_force_examples():
    uniform = brute_force_maxent((0.5, 0.5), 1e-4)
    assert np.abs(uniform.values - 0.25).max() <= 1e-3
    close = brute_force_maxent(G1_X01_MEAN, 1e-5)
    assert np.abs(close.values - maxent_probabilities(G1_X01_MEAN).values).max() <= 1e-4
    forced = brute_force_maxent((1.0, 0.3), 1e-3)
    assert forced.values == pytest.approx([0, 0, 0.7, 0.3], abs=1e-12)


def test_brute_force_agrees_with_numerical_optimizer():
    for mean in [(0.2, 0.9), (0.63, 0.69), (0.05, 0.5), (0.5, 0.5)]:
        grid = brute_force_maxent(mean, 1e-5).values
        slsqp = maxent_slsqp(*mean)
        assert np.abs(grid - slsqp).max() <= 1e-4


def test_brute_force_arguments():
    with pytest.raises(InvalidInputError):
        brute_force_maxent((0.5, 0.5), 0.0)
    with pytest.raises(InvalidInputError):
        brute_force_maxent((0.5, 0.5), 0.02)
    with pytest.raises(DomainError):
        brute_force_maxent((1.5, 0.5), 1e-3)


def test_counterexample_g1():
    ce = extremal_counterexample(G1_X01_MEAN, 432)
    assert ce.values.tolist() == [133, 28, 0, 271]
    v = ce.values.astype(int)
    assert (v[2] + v[3], v[1] + v[3]) == (271, 299)
    assert ce.marginal_means() == pytest.approx(G1_X01_MEAN, abs=1e-15)
    assert shannon_entropy(ce) < shannon_entropy(maxent_probabilities(G1_X01_MEAN))


def test_counterexample_tie_break_and_degenerate():
    assert extremal_counterexample((0.5, 0.5), 4).values.tolist() == [0, 2, 2, 0]
    assert extremal_counterexample((1.0, 1.0), 10).values.tolist() == [0, 0, 0, 10]
    with pytest.raises(DomainError):
        extremal_counterexample((1.5, 0.0), 10)
    with pytest.raises(InvalidInputError):
        extremal_counterexample((0.5, 0.5), 0)


def test_entropy_examples():
    assert shannon_entropy(DiscreteDistribution([0.25] * 4)) == pytest.approx(math.log(4), abs=1e-15)
    assert shannon_entropy(DiscreteDistribution([1, 0, 0, 0])) == 0.0
    assert shannon_entropy(DiscreteDistribution([0.25] * 4), base=2) == pytest.approx(2.0)
    p, q = G1_X01_MEAN
    product = shannon_entropy(maxent_probabilities(G1_X01_MEAN))
    assert product == pytest.approx(binary_entropy(p) + binary_entropy(q), abs=1e-14)
    direct = -sum(x * math.log(x) for x in (p, 1 - p)) - sum(x * math.log(x) for x in (q, 1 - q))
    assert product == pytest.approx(direct, abs=1e-14)


def test_distribution_validation():
    with pytest.raises(InvalidInputError):
        DiscreteDistribution([0.5, 0.5, 0.1])
    with pytest.raises(InvalidInputError):
        DiscreteDistribution([0.5, -0.5, 0.5, 0.5])
    with pytest.raises(DomainError):
        DiscreteDistribution([0, 0, 0, 0]).probabilities
    counts = DiscreteDistribution([1, 1, 2, 0], total=4)
    assert counts.is_counts and counts[SocialState.X10] == 2


unit = st.floats(0, 1, allow_nan=False)


@given(unit, unit)
def test_product_form_properties(p, q):
    pi = maxent_probabilities((p, q)).values
    assert abs(pi.sum() - 1) <= 1e-12
    assert abs(pi[2] + pi[3] - p) <= 1e-12
    assert abs(pi[1] + pi[3] - q) <= 1e-12
    assert abs(pi[0] * pi[3] - pi[1] * pi[2]) <= 1e-12


@settings(max_examples=60)
@given(unit, unit, st.integers(1, 5000))
def test_entropy_dominance(p, q, total):
    ce = extremal_counterexample((p, q), total)
    assert ce.values.sum() == total
    assert (ce.values >= 0).all()
    h_max = shannon_entropy(maxent_probabilities((p, q)))
    lo, hi = max(0.0, p + q - 1.0), min(p, q)
    assert shannon_entropy(ce) <= h_max + 1e-9 or hi - lo < 1.0 / total


@settings(max_examples=30)
@given(unit, unit)
def test_brute_force_never_beats_closed_form(p, q):
    grid = brute_force_maxent((p, q), 1e-3)
    assert shannon_entropy(grid) <= shannon_entropy(maxent_probabilities((p, q))) + 1e-12
