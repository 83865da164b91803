import math

import pytest
from hypothesis import given, settings, strategies as st

from branchedarc.arc import (TangleParseError, arc_algebra, crossing_signs, enumerate_matchings, identity_word,
                             is_crossingless, kh_brute, kh_link, parse_word, qpoly)

UNKNOT = {(0, -1): 1, (0, 1): 1}


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_matchings_catalan(n):
    ms = enumerate_matchings(n)
    assert len(ms) == math.comb(2 * n, n) // (n + 1)
    assert all(is_crossingless(m.pairs) for m in ms)


def test_parse_and_widths():
    T = parse_word("cup(1) x(2) cap(1)", width=2)
    assert T.widths == (2, 4, 4, 2) and (T.m, T.n) == (1, 1)
    assert parse_word("x(3)").m == 2
    assert str(T) == "cup(1) x(2) cap(1)"


@pytest.mark.parametrize("word,index", [("x(1) foo", 2), ("x(1) cap(5)", 2), ("bar", 1)])
def test_parse_errors_carry_index(word, index):
    with pytest.raises(TangleParseError) as e:
        parse_word(word, width=2)
    assert e.value.index == index


def test_unknot_and_jones():
    assert kh_link("cup(1) cap(1)") == UNKNOT
    assert qpoly(UNKNOT) == {-1: 1, 1: 1}
    # Reidemeister I either way
    assert kh_link("x(1)") == UNKNOT
    assert kh_link("X(1)") == UNKNOT


def test_hopf_and_trefoil():
    assert kh_link("x(1) x(1)") == {(0, 0): 1, (0, 2): 1, (2, 4): 1, (2, 6): 1}
    tref = kh_link("x(1) x(1) x(1)")
    assert tref == {(0, 1): 1, (0, 3): 1, (2, 5): 1, (2, 7): 1, (3, 7): 1, (3, 9): 1}
    assert qpoly(tref) == {1: 1, 3: 1, 5: 1, 9: -1}
    # the mirror
    assert kh_link("X(1) X(1) X(1)") == {(-h, -q): n for (h, q), n in tref.items()}


def test_reidemeister_two():
    unlink = {(0, -2): 1, (0, 0): 2, (0, 2): 1}
    assert kh_link(identity_word(1)) == unlink
    assert kh_link("x(1) X(1)") == unlink


def test_signs():
    assert crossing_signs(parse_word("x(1) x(1)")) == [1, 1]
    assert crossing_signs(parse_word("X(1) X(1)")) == [-1, -1]


braid = st.lists(st.tuples(st.sampled_from("xX"), st.integers(1, 3)), min_size=1, max_size=4)


@given(braid)
@settings(max_examples=40, deadline=None)
def test_kh_against_state_sum(letters):
    T = parse_word(" ".join(f"{k}({i})" for k, i in letters), width=4)
    assert kh_link(T) == kh_brute(T)


@pytest.mark.parametrize("n", [1, 2])
def test_arc_algebra(n):
    H = arc_algebra(n)
    assert len(H.basis) == (2 if n == 1 else 12)
    assert H.check() is None
    # positively graded once q is negated: unit at 0, the rest below
    unit = H.unit()
    assert all(H.q[k] == 0 for k in unit)
    assert all(H.q[k] < 0 for k in H.basis if k not in unit)


def test_h2_names():
    H = arc_algebra(2)
    names = sorted(H.name(k) for k in H.basis)
    assert names == sorted(["aa-11", "aa-1x", "aa-x1", "aa-xx", "ab-1", "ab-x",
                            "ba-1", "ba-x", "bb-11", "bb-1x", "bb-x1", "bb-xx"])
    assert H.mulv(H.parse("ab-1"), H.parse("ba-1")) == H.parse("aa-1x+aa-x1")
