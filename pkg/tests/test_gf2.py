import random

import pytest
from hypothesis import given, settings, strategies as st

from branchedarc.gf2 import (ChainComplex, ComplexError, Echelon, Retract, RetractError, homology,
                             homology_dims, kernel, rank, sdr_retract, vadd, verify_retract)


def scrambled(pairs, singles, seed):
    """Direct sum of x_i -> y_i and isolated generators, seen through a random unitriangular change
    of basis in each degree.  Homology is known: one class per isolated generator."""
    rng = random.Random(seed)
    gens = {}
    d = {}
    for i, deg in enumerate(pairs):
        x, y = f"x{i}", f"y{i}"
        gens[x], gens[y] = deg, deg - 1
        d[x] = {y}
    for i, deg in enumerate(singles):
        gens[f"s{i}"] = deg
    by_deg = {}
    for g, deg in sorted(gens.items()):
        by_deg.setdefault(deg, []).append(g)
    # new basis e_g = g + sum of later keys in the same degree
    change = {}
    for deg, gs in by_deg.items():
        for i, g in enumerate(gs):
            change[g] = {g} | {h for h in gs[i + 1:] if rng.random() < 0.5}

    def express(vec, deg):
        # solve in the triangular basis, smallest first
        gs = by_deg[deg]
        vec = set(vec)
        out = set()
        for g in gs:
            if g in vec:
                out.add(g)
                vec ^= change[g]
        assert not vec
        return frozenset(out)

    D = {}
    for g, deg in gens.items():
        img = set()
        for h in change[g]:
            img ^= d.get(h, set())
        D[g] = express(img, deg - 1) if img else frozenset()
    return ChainComplex(sorted(gens), D, gens), singles


complexes = st.tuples(st.lists(st.integers(-2, 2), max_size=6),
                      st.lists(st.integers(-2, 2), max_size=5),
                      st.integers(0, 10 ** 6))


@given(complexes)
@settings(max_examples=60, deadline=None)
def test_homology_of_scrambled_complex(data):
    pairs, singles, seed = data
    C, singles = scrambled(pairs, singles, seed)
    want = {}
    for deg in singles:
        want[deg] = want.get(deg, 0) + 1
    got = {g: n for g, n in homology_dims(C).items() if n}
    assert got == want
    assert homology(C).total == len(singles)


@given(complexes, st.randoms(use_true_random=False))
@settings(max_examples=40, deadline=None)
def test_homology_ignores_basis_order(data, rnd):
    C, _ = scrambled(*data)
    keys = list(C.basis)
    rnd.shuffle(keys)
    C2 = ChainComplex(keys, C.d, C.degree)
    assert homology_dims(C2) == homology_dims(C)


@given(complexes)
@settings(max_examples=40, deadline=None)
def test_machine_retract_round_trip(data):
    C, singles = scrambled(*data)
    R = sdr_retract(C)
    ok, name, wit = verify_retract(C, R)
    assert ok, (name, wit)
    assert len(R.classes) == len(singles)
    for c in R.classes:
        assert R.P(R.iota[c]) == {c}


def test_rank_and_kernel():
    rows = [0b011, 0b110, 0b101]
    assert rank(rows) == 2
    ker = kernel(rows)
    assert ker == [0b111]
    e = Echelon()
    assert e.add(0b1) and not e.add(0b1) and len(e) == 1


def test_vadd_cancels():
    assert vadd({"a", "b"}, {"b"}) == {"a"}
    assert vadd() == frozenset()


def test_d_squared_rejected():
    C = ChainComplex(["a", "b", "c"], {"a": {"b"}, "b": {"c"}}, {"a": 2, "b": 1, "c": 0})
    with pytest.raises(ComplexError):
        homology(C)


def test_wrong_degree_rejected():
    with pytest.raises(ComplexError):
        ChainComplex(["a", "b"], {"a": {"b"}}, {"a": 0, "b": 0})


def test_bad_pinned_retract():
    C = ChainComplex(["a", "b"], {"a": {"b"}}, {"a": 1, "b": 0})
    with pytest.raises(RetractError):
        sdr_retract(C, Retract(["b"], {"b": frozenset({"b"})}, {}, {}))
