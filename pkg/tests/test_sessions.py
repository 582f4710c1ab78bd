import io

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from maxent_transitions.errors import InvalidInputError, ParseError, ValidationError
from maxent_transitions.fixtures import (
    G1_X01_BACKWARD_COUNTEREXAMPLE,
    GAME_IDS,
    EXPECTED_CORRECTIONS,
    load_paper_fixture,
    parse_game_selector,
)
from maxent_transitions.game import STATES, Direction, SocialState
from maxent_transitions.sessions import (
    PairSession,
    SessionDataset,
    parse_sessions,
    read_sessions,
    serialize_sessions,
    validate_dataset,
)
from maxent_transitions.transitions import state_sequence

HEADER = "pair_id,round,row_action,col_action\n"


def test_minimal_two_round_session():
    d = parse_sessions(HEADER + "p1,1,U,L\np1,2,D,L\n")
    assert d.meta == (1, 2)
    assert state_sequence(d.pairs[0].records()) == [SocialState.X00, SocialState.X01]


def test_nine_by_five_hundred_meta():
    rng = np.random.default_rng(7)
    lines = [HEADER]
    for k in range(9):
        for t in range(500):
            lines.append(f"p{k},{t + 1},{'UD'[rng.integers(2)]},{'LR'[rng.integers(2)]}\n")
    d = parse_sessions("".join(lines))
    assert d.meta == (9, 500)
    assert d.n_records == 4500


def test_round_gap_is_validation_error():
    with pytest.raises(ValidationError) as err:
        parse_sessions(HEADER + "p1,1,U,L\np1,2,U,L\np1,4,D,R\n")
    assert "round 3" in err.value.violations[0] and "'p1'" in err.value.violations[0]


def test_duplicate_round_is_validation_error():
    with pytest.raises(ValidationError) as err:
        parse_sessions(HEADER + "p1,1,U,L\np1,1,U,L\n")
    assert "duplicate" in err.value.violations[0]


def test_unknown_action_is_parse_error_with_line():
    with pytest.raises(ParseError) as err:
        parse_sessions(HEADER + "p1,1,U,L\np1,2,X,L\n")
    assert err.value.line == 3
    assert "line 3" in str(err.value)


def test_malformed_rows():
    with pytest.raises(ParseError):
        parse_sessions(HEADER + "p1,1,U\n")
    with pytest.raises(ParseError):
        parse_sessions(HEADER + "p1,one,U,L\n")
    with pytest.raises(ParseError):
        parse_sessions("pair,round,row,col\n")
    with pytest.raises(ParseError):
        parse_sessions("")


def test_case_insensitive_actions_and_crlf():
    d = parse_sessions("PAIR_ID,Round,row_action,col_action\r\np1,1,u,r\r\np1,2,D,l\r\n")
    assert [r.state for r in d.records()] == [SocialState.X10, SocialState.X01]
    assert d.records()[0].row_action == "U" and d.records()[0].col_action == "R"


def test_interleaved_pairs():
    d = parse_sessions(HEADER + "a,1,U,L\nb,1,D,R\na,2,D,L\nb,2,U,L\n")
    assert [p.pair_id for p in d.pairs] == ["a", "b"]
    assert d.pairs[1].states().tolist() == [3, 0]


def test_unequal_rounds_rejected():
    with pytest.raises(ValidationError) as err:
        parse_sessions(HEADER + "a,1,U,L\na,2,U,L\na,3,U,L\nb,1,U,L\nb,2,U,L\n")
    assert len(err.value.violations) == 1 and "unequal" in err.value.violations[0]


def test_validate_reports():
    ok = SessionDataset(None, (PairSession("a", [0, 1], [1, 1]), PairSession("b", [0, 0], [0, 0])))
    assert validate_dataset(ok).violations == []
    unequal = SessionDataset(None, (PairSession("a", [0, 1, 1], [1, 1, 0]), PairSession("b", [0, 0], [0, 0])))
    assert len(validate_dataset(unequal).violations) == 1
    single = SessionDataset(None, (PairSession("a", [0], [1]),))
    assert validate_dataset(single).violations == ["T >= 2 required for transitions"]
    assert not validate_dataset(SessionDataset(None, ())).ok
    dup = SessionDataset(None, (PairSession("a", [0, 1], [1, 1]), PairSession("a", [0, 0], [0, 0])))
    assert "duplicate" in validate_dataset(dup).violations[0]


def test_one_round_file_rejected():
    with pytest.raises(ValidationError) as err:
        parse_sessions(HEADER + "p1,1,U,L\n")
    assert err.value.violations == ["T >= 2 required for transitions"]


def test_read_sessions_from_file(tmp_path):
    path = tmp_path / "s.csv"
    path.write_text(HEADER + "p1,1,U,L\np1,2,D,R\n")
    assert read_sessions(path).meta == (1, 2)


@st.composite
def datasets(draw):
    n_pairs = draw(st.integers(1, 4))
    rounds = draw(st.integers(2, 12))
    pairs = []
    for k in range(n_pairs):
        row = draw(st.lists(st.integers(0, 1), min_size=rounds, max_size=rounds))
        col = draw(st.lists(st.integers(0, 1), min_size=rounds, max_size=rounds))
        pairs.append(PairSession(f"p{k}", row, col))
    return SessionDataset(None, tuple(pairs))


@settings(max_examples=60)
@given(datasets())
def test_serialize_parse_round_trip(d):
    text = serialize_sessions(d)
    back = parse_sessions(io.StringIO(text))
    assert back.pairs == d.pairs
    assert serialize_sessions(back) == text


# --- fixtures ---------------------------------------------------------------

def test_fixture_g1_examples(g1):
    assert g1.omega == (994, 433, 1659, 1405)
    assert g1.backward[SocialState.X01].tolist() == [55, 106, 78, 193]
    assert (g1.groups, g1.rounds) == (9, 500)


def test_fixture_g11_shape():
    g11 = load_paper_fixture("g11")
    assert (g11.payoffs.a, g11.payoffs.b, g11.payoffs.c, g11.payoffs.d, g11.payoffs.s) == (5, 0, 0, 5, 5)
    assert (g11.groups, g11.rounds) == (12, 300)


def test_unknown_fixture():
    with pytest.raises(InvalidInputError):
        load_paper_fixture("g12")


@pytest.mark.parametrize("gid", GAME_IDS)
def test_fixture_transpose_identity(gid):
    fx = load_paper_fixture(gid)
    assert np.array_equal(fx.backward, fx.forward.T)


@pytest.mark.parametrize("gid", GAME_IDS)
def test_fixture_omega_equals_forward_totals(gid):
    fx = load_paper_fixture(gid)
    assert fx.forward.sum(axis=1).tolist() == list(fx.omega)
    assert sum(fx.omega) == fx.groups * (fx.rounds - 1)
    # backward totals count rounds 2..T, so they differ from omega by at most the pair count
    assert np.abs(fx.backward.sum(axis=1) - np.array(fx.omega)).max() <= fx.groups


def test_fixture_g1_x00_forward_sum(g1):
    assert g1.forward[SocialState.X00].tolist() == [464, 55, 401, 74]
    assert g1.actual("T01<-00") == 55 == g1.actual("T00->01")


def test_typo_cells_flagged():
    assert set(EXPECTED_CORRECTIONS) == {("g8", "T00->00"), ("g6", "T11<-11")}
    g8 = load_paper_fixture("g8")
    assert g8.expected["T00->00"] == 97 and "T00->00" in g8.corrections
    g6 = load_paper_fixture("g6")
    assert g6.expected["T11<-11"] == 333 and "T11<-11" in g6.corrections
    assert load_paper_fixture("g1").corrections == {}


def test_fixture_mean_point_anchor(g1):
    assert g1.mean_point(Direction.BACKWARD, SocialState.X01) == (0.63, 0.69)
    assert g1.mean_point(Direction.FORWARD, SocialState.X01) == (0.40, 0.45)


def test_counterexample_constant():
    assert G1_X01_BACKWARD_COUNTEREXAMPLE == (133, 28, 0, 271)


def test_fixture_tables_complete():
    for gid in GAME_IDS:
        fx = load_paper_fixture(gid)
        assert len(fx.expected) == 32
        assert len(fx.mean_points) == 8
        assert set(fx.regression) == set(Direction)
        assert all(len(STATES) == len(row) for row in fx.forward)


def test_game_selector():
    assert parse_game_selector("all") == list(GAME_IDS)
    assert parse_game_selector("g4, g1,g4") == ["g1", "g4"]
    with pytest.raises(InvalidInputError):
        parse_game_selector("g99")
    with pytest.raises(InvalidInputError):
        parse_game_selector("")
