import pytest

from branchedarc.arc import arc_algebra, identity_word, parse_word
from branchedarc.dmod import TableAlgebra
from branchedarc.gf2 import ChainComplex
from branchedarc.hh import (FilteredComplex, FiltrationError, GradingError, TangleBimodule, ainf_hochschild_cutoff,
                            check_positive, compare_twist, e1_vs_homology_words, full_twist, fulltwist_kh,
                            gr_homology, hochschild_complex, report_json, rozansky, solve_grading, ss_pages,
                            stable_bound, twist_shift)

# frozen from the direct computation (cross-checked against the twisted closures)
HH_H1 = {(t, q): 1 for t in range(-4, 1) for q in (2 * t, 2 * t - 2)}
HH_X1 = {(t, q + 1): n for (t, q), n in HH_H1.items()}
HH_H2_TOP = {(-3, -10): 1, (-3, -8): 5, (-3, -6): 5, (-3, -4): 1, (-2, -8): 1, (-2, -6): 5, (-2, -4): 4,
             (-1, -6): 1, (-1, -4): 4, (-1, -2): 3, (0, -4): 1, (0, -2): 3, (0, 0): 2}


def test_hh_of_h1():
    assert rozansky(identity_word(1), -4, 0) == HH_H1


def test_hh_of_crossing():
    assert rozansky("x(1)", -4, 0) == HH_X1


def test_hh_of_h2():
    assert rozansky(identity_word(2), -3, 0) == HH_H2_TOP


def test_positive_degrees_vanish():
    assert rozansky(identity_word(1), 1, 4) == {}


def test_window_is_exact():
    # a wider window gives the same answer on the overlap
    wide = rozansky(identity_word(1), -6, 2)
    assert {k: v for k, v in wide.items() if -4 <= k[0] <= 0} == HH_H1


def test_grading_check():
    check_positive(arc_algebra(2))
    bad = TableAlgebra(["1", "a"], ["1"], {"1": (0, 0), "a": (0, 0)},
                       {("1", "1"): {"1"}, ("1", "a"): {"a"}, ("a", "1"): {"a"}})
    bad.q = {"1": 0, "a": 1}
    bad.unit = lambda: frozenset(["1"])
    bad.basis = ["1", "a"]
    with pytest.raises(GradingError):
        check_positive(bad)


def test_twist_words():
    assert full_twist(1) == "x(1) x(1)"
    assert len(parse_word(full_twist(2)).crossings()) == 12
    assert twist_shift(identity_word(1), 2) == (-4, -12)
    assert twist_shift(identity_word(2), 1) == (-8, -24)
    assert stable_bound(identity_word(1), 3) == -4


@pytest.mark.parametrize("word", ["", "x(1)"])
@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_rozansky_vs_twist(word, k):
    T = parse_word(word, width=2) if word else identity_word(1)
    r = compare_twist(T, k, -8, 2)
    assert r["comparable"] and r["agree"], r


def test_twist_disagrees_below_bound():
    # one degree under a(k) the closure is already different
    T = identity_word(1)
    ft = fulltwist_kh(T, 2)["dims"]
    hh = rozansky(T, -3, -3)
    assert {k: v for k, v in ft.items() if k[0] == -3} != hh


def test_twist_cap():
    with pytest.raises(ValueError):
        fulltwist_kh(identity_word(2), 2)


def test_not_comparable_window():
    ft = fulltwist_kh(identity_word(1), 3, -10, -6)
    assert not ft["comparable"]


def test_filtration_must_not_rise():
    C = ChainComplex(["a", "b"], {"a": {"b"}}, {"a": 1, "b": 0})
    with pytest.raises(FiltrationError):
        FilteredComplex(C, {"a": 0, "b": 1})


def test_two_step_filtration():
    # a -> b drops the filtration by one, so d_0 = 0 and d_1 kills the pair
    C = ChainComplex(["a", "b", "c"], {"a": {"b"}}, {"a": 1, "b": 0, "c": 0})
    FC = FilteredComplex(C, {"a": 1, "b": 0, "c": 0})
    pages = ss_pages(FC)
    assert pages[0].total() == 3
    assert pages[-1].dims == gr_homology(FC) == {(0, 0): 1}
    assert pages[1].total() == 3
    assert pages[2].dims == {(0, 0): 1}
    assert pages[1].d_rank == 1


def test_spectral_sequence_crossing():
    from branchedarc.hh import ss_check
    r = ss_check("x(1)", (-3, 3))
    assert r.ok
    assert r.E2 == r.direct and r.Einf == r.gr_total


def test_hochschild_degrees():
    A = arc_algebra(1)
    M = TangleBimodule(identity_word(1))
    HC = hochschild_complex(A, M, -2, 0)
    assert all(HC.t[w] == -HC.k[w] for w in HC.words)


def test_ainf_cutoff(h2):
    g = solve_grading(h2.E)
    assert g is not None
    for f in h2.E.basis:
        assert all(g[e] == g[f] - 1 for e in h2.E.d(f))
    res = ainf_hochschild_cutoff(h2.E, 1)
    assert res["exact"] is False and res["cutoff"] == 1
    assert res["stable"]


def test_e1_is_homology_words(h2):
    e1, words = e1_vs_homology_words(h2.E, h2.retract, 2)
    assert e1 == words == {0: 8, 1: 40, 2: 224}


def test_report_json_deterministic():
    a = report_json(HH_H1)
    assert a == report_json(dict(reversed(list(HH_H1.items()))))
    assert '"exact": true' in a
