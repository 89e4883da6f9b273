import pytest
from hypothesis import given

from rcjones.braid import (
    BraidWord,
    close,
    conjugate,
    delete_component,
    markov_moves,
    parse_braid,
    stabilize,
)
from rcjones.errors import BraidSyntaxError, PositionOutOfRange
from strategies import braids


def test_parse_examples():
    assert parse_braid("2: 1 1 1") == BraidWord(2, ((1, 1),) * 3)
    assert parse_braid("3: 1 -2") == BraidWord(3, ((1, 1), (2, -1)))
    assert parse_braid("1:") == BraidWord(1)


@pytest.mark.parametrize("text", ["2 1 1", "2: 1 x", "2: 0", ":"])
def test_parse_syntax_errors(text):
    with pytest.raises(BraidSyntaxError):
        parse_braid(text)


def test_parse_position_out_of_range():
    with pytest.raises(PositionOutOfRange):
        parse_braid("2: 2")


@given(braids())
def test_round_trip(b):
    assert parse_braid(str(b)) == b


def test_close_hopf():
    c = close(parse_braid("2: 1 1"))
    assert c.L == 2 and c.lk(0, 1) == 1 and c.self_linking(0) == c.self_linking(1) == 0


def test_close_trefoil():
    c = close(parse_braid("2: 1 1 1"))
    assert c.L == 1 and c.self_linking(0) == 3


def test_close_split_unknots():
    c = close(parse_braid("2:"))
    assert c.L == 2 and c.lk(0, 1) == 0


def test_stabilize_trefoil():
    b = stabilize(parse_braid("2: 1 1 1"))
    assert b == parse_braid("3: 1 1 1 2")
    c = close(b)
    assert c.L == 1 and c.self_linking(0) == 4


def test_conjugate_commuting():
    b = parse_braid("2: 1 1")
    assert conjugate(b, 1, 1) == b


def test_stabilize_hopf_negative():
    b = stabilize(parse_braid("2: 1 1"), -1)
    assert b.strands == 3 and close(b).L == 2


@given(braids())
def test_writhe_decomposition(b):
    c = close(b)
    diag = sum(c.self_linking(j) for j in range(c.L))
    off = sum(c.lk(i, j) for i in range(c.L) for j in range(i + 1, c.L))
    assert b.writhe() == diag + 2 * off


@given(braids(max_strands=3, max_len=6))
def test_markov_moves_preserve_linking(b):
    c = close(b)
    offdiag = sorted(c.lk(i, j) for i in range(c.L) for j in range(i + 1, c.L))
    for m in markov_moves(b):
        cm = close(m)
        assert cm.L == c.L
        assert sorted(cm.lk(i, j) for i in range(cm.L) for j in range(i + 1, cm.L)) == offdiag


@given(braids())
def test_closure_invariants(b):
    c = close(b)
    assert sum(c.strands_per_component) == b.strands
    for i in range(c.L):
        for j in range(c.L):
            assert c.lk(i, j) == c.lk(j, i)
    for s in range(b.strands):
        assert c.component_of_strand[s] == c.component_of_strand[c.permutation[s]]
    # replaying the word reproduces the top order
    at = list(range(b.strands))
    for p, _ in b.letters:
        at[p - 1], at[p] = at[p], at[p - 1]
    assert tuple(at) == c.top_order


def test_delete_component_of_hopf():
    sub, mapping = delete_component(parse_braid("2: 1 1"), 1)
    assert sub == BraidWord(1) and mapping == {0: 0}
