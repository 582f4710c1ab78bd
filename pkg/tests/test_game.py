import itertools
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from maxent_transitions.errors import DomainError, InvalidInputError
from maxent_transitions.fixtures import GAME_IDS, load_paper_fixture
from maxent_transitions.game import (
    STATES,
    Direction,
    GameKind,
    PayoffMatrix,
    SocialState,
    classify_game,
    expected_payoffs,
    indifference_gaps,
    msne,
    transition_label,
)
from oracles import msne_grid

G1 = PayoffMatrix(77, 35, 8, 48, 100)
G4 = PayoffMatrix(55, 75, 73, 60, 100)

# frozen from the indifference-grid oracle (resolution 1e-4) in oracles.msne_grid;
# the grid points are the closed forms rounded to the grid
G1_MSNE_GRID = (0.8415, 0.5122)
G4_MSNE_GRID = (0.5455, 0.6061)


def test_state_enumeration_order():
    assert [s.label for s in STATES] == ["x00", "x01", "x10", "x11"]
    assert [s.coords for s in STATES] == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert SocialState.from_indicators(1, 0) is SocialState.X10
    assert SocialState.parse("01") is SocialState.X01
    assert SocialState.parse("x11") is SocialState.X11


def test_transition_labels():
    assert transition_label(SocialState.X01, SocialState.X00, Direction.BACKWARD) == "T01<-00"
    assert transition_label(SocialState.X00, SocialState.X01, Direction.FORWARD) == "T00->01"


def test_column_payoff_is_complement():
    for s in STATES:
        assert G1.row_payoff(s) + G1.col_payoff(s) == 100
    assert [G1.row_payoff(s) for s in STATES] == [77, 8, 35, 48]


def test_non_finite_payoff_rejected():
    with pytest.raises(InvalidInputError):
        PayoffMatrix(float("nan"), 0, 0, 1, 1)
    with pytest.raises(InvalidInputError):
        PayoffMatrix(1, float("inf"), 0, 1, 1)


def test_classify_examples(g11_game):
    assert classify_game(G1).kind is GameKind.UNIQUE_MIXED_NE
    g11 = classify_game(g11_game)
    assert g11.kind is GameKind.UNIQUE_MIXED_NE and g11.msne == (0.5, 0.5)
    dominated = classify_game(PayoffMatrix(1, 0, 0, 0, 1))
    assert dominated.kind is GameKind.OTHER and dominated.msne is None


def test_all_fixture_games_have_unique_msne():
    for gid in GAME_IDS:
        cls = classify_game(load_paper_fixture(gid).payoffs)
        assert cls.kind is GameKind.UNIQUE_MIXED_NE
        p, q = cls.msne
        assert 0 < p < 1 and 0 < q < 1


def test_boundary_ties_are_other():
    assert classify_game(PayoffMatrix(5, 0, 5, 5, 5)).kind is GameKind.OTHER
    with pytest.raises(DomainError):
        msne(PayoffMatrix(5, 0, 5, 5, 5))


def test_reversed_condition_preserved_by_relabeling():
    # swapping the row player's strategies maps (a,b,c,d) to (c,d,a,b)
    flipped = PayoffMatrix(G1.c, G1.d, G1.a, G1.b, G1.s)
    assert classify_game(flipped).kind is GameKind.UNIQUE_MIXED_NE
    p, q = msne(flipped)
    p0, q0 = msne(G1)
    assert p == pytest.approx(p0, abs=1e-12)
    assert q == pytest.approx(1 - q0, abs=1e-12)


@pytest.mark.parametrize("game,frozen", [(G1, G1_MSNE_GRID), (G4, G4_MSNE_GRID)])
def test_msne_matches_grid_oracle(game, frozen):
    oracle = msne_grid(game.a, game.b, game.c, game.d, game.s)
    assert oracle == pytest.approx(frozen, abs=1e-12)
    p, q = msne(game)
    assert abs(p - oracle[0]) <= 1e-4 and abs(q - oracle[1]) <= 1e-4


def test_msne_closed_forms():
    assert msne(G1) == pytest.approx((69 / 82, 21 / 41), abs=1e-15)
    assert msne(G4) == pytest.approx((6 / 11, 20 / 33), abs=1e-15)
    assert msne(PayoffMatrix(5, 0, 0, 5, 5)) == (0.5, 0.5)


@pytest.mark.parametrize("gid", GAME_IDS)
def test_msne_indifference(gid):
    m = load_paper_fixture(gid).payoffs
    p, q = msne(m)
    row_gap, col_gap = indifference_gaps(m, p, q)
    assert abs(row_gap) < 1e-9 and abs(col_gap) < 1e-9


def test_expected_payoff_examples(g11_game):
    assert expected_payoffs(G1, 0, 0) == (77, 23)
    assert expected_payoffs(G1, 1, 1) == (48, 52)
    assert expected_payoffs(g11_game, 0.5, 0.5) == (2.5, 2.5)


def test_expected_payoffs_out_of_range():
    with pytest.raises(InvalidInputError):
        expected_payoffs(G1, 1.5, 0.2)
    with pytest.raises(InvalidInputError):
        expected_payoffs(G1, 0.2, -0.1)


def test_constant_sum_on_grid():
    for gid in GAME_IDS:
        m = load_paper_fixture(gid).payoffs
        for p, q in itertools.product(np.linspace(0, 1, 21), repeat=2):
            row, col = expected_payoffs(m, p, q)
            assert abs(row + col - m.s) <= 1e-12


@given(
    st.tuples(*[st.floats(-100, 100, allow_nan=False) for _ in range(4)]),
    st.floats(0, 1),
    st.floats(0, 1),
)
def test_expected_payoffs_bilinear(payoffs, p, q):
    m = PayoffMatrix(*payoffs, s=100.0)
    row, _ = expected_payoffs(m, p, q)
    # linear in p at fixed q
    r0, _ = expected_payoffs(m, 0.0, q)
    r1, _ = expected_payoffs(m, 1.0, q)
    assert math.isclose(row, (1 - p) * r0 + p * r1, abs_tol=1e-9)


@given(st.tuples(*[st.integers(-50, 50) for _ in range(4)]))
def test_msne_whenever_classified(payoffs):
    m = PayoffMatrix(*payoffs, s=0)
    cls = classify_game(m)
    if cls.kind is GameKind.UNIQUE_MIXED_NE:
        p, q = cls.msne
        assert 0 < p < 1 and 0 < q < 1
        gaps = indifference_gaps(m, p, q)
        assert abs(gaps[0]) < 1e-9 and abs(gaps[1]) < 1e-9
    else:
        with pytest.raises(DomainError):
            msne(m)


def test_payoff_dict_round_trip():
    assert PayoffMatrix.from_dict(G4.to_dict()) == G4
