import pytest

from branchedarc.branched import FIXTURES, cfd_fixture
from branchedarc.dmod import (DgaError, FixtureError, MorSpace, TypeD, check_typed, delta_k, dual_numbers,
                              end_dga, is_bounded, parse_fixture)
from branchedarc.strands import strands_algebra, torus


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_fixtures_are_type_d(name):
    N = cfd_fixture(name)
    assert check_typed(N)[0]


def test_a1_a2_loops():
    A = strands_algebra(2)
    t = cfd_fixture("a1")
    w = cfd_fixture("a2")
    assert t.idem == {"t": 1} and w.idem == {"w": 2}
    assert {a for a, _ in t.delta["t"]} == A.chord_elem([(1, 3)], 1, 1) | A.chord_elem([(4, 7)], 1, 1)
    assert {a for a, _ in w.delta["w"]} == A.chord_elem([(1, 3)], 2, 2) | A.chord_elem([(6, 8)], 2, 2)


def test_loops_are_unbounded():
    ok, cyc = is_bounded(cfd_fixture("a1"))
    assert not ok and cyc == ["t"]
    assert is_bounded(cfd_fixture("torus-example"))[0]


def test_dual_numbers_delta_k():
    F = dual_numbers()
    N = TypeD(F, ["x"], {"x": 0}, {"x": {("a", "x")}})
    # a^2 = 0 so the relation holds, and delta^k never vanishes
    assert check_typed(N)[0]
    assert delta_k(N, 4)["x"] == {(("a",) * 4, "x")}
    assert not is_bounded(N)[0]


def test_broken_type_d_detected():
    A = strands_algebra(1)
    (r1,), (r2,) = torus("rho1"), torus("rho2")
    N = TypeD(A, ["x", "y", "z"], {"x": 0, "y": 1, "z": 0},
              {"x": {(r1, "y")}, "y": {(r2, "z")}})
    ok, x, terms = check_typed(N)
    assert not ok and x == "x"


def test_torus_morphism_differential():
    N = cfd_fixture("torus-example")
    S = MorSpace(N, N)
    (r12,), (r123,) = torus("rho12"), torus("rho123")
    got = S.d_basic(("z", r12, "y"))
    assert got == {("y", r12, "y"), ("z", r123, "x"), ("z", r12, "z")}


def test_end_dga_checks():
    E = end_dga([cfd_fixture("a1"), cfd_fixture("a2")])
    assert len(E.basis) == 16
    assert E.check() is None
    assert len(E.unit()) == 2


def test_end_dga_rejects_bad_summand():
    A = strands_algebra(1)
    (r1,), (r2,) = torus("rho1"), torus("rho2")
    N = TypeD(A, ["x", "y", "z"], {"x": 0, "y": 1, "z": 0},
              {"x": {(r1, "y")}, "y": {(r2, "z")}})
    with pytest.raises(DgaError):
        end_dga([N])


@pytest.mark.parametrize("text", [
    "gen x idem 0",                              # no pmc line
    "pmc 1\ngen x idem 0\nedge x y [(1,2)]",      # unknown generator
    "pmc 1\ngen x idem 0\nedge x x [(1,2)",       # bad chord list
    "pmc 1\nfoo",
])
def test_fixture_parse_errors(text):
    with pytest.raises(FixtureError):
        parse_fixture(text)


def test_unknown_fixture():
    with pytest.raises(KeyError):
        cfd_fixture("nope")
