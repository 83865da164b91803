import math

import pytest
from hypothesis import given, settings, strategies as st

from branchedarc import tables
from branchedarc.branched import build_hn
from branchedarc.dmod import dual_numbers
from branchedarc.gf2 import ChainComplex, sdr_retract
from branchedarc.transfer import (Transfer, TransferError, binary_trees, flip_entry, is_massey_admissible,
                                  massey_cycle, transferred_all, tree_leaves, verify_ainf)


@pytest.mark.parametrize("i", range(2, 8))
def test_tree_count_is_catalan(i):
    trees = binary_trees(i)
    assert len(trees) == math.comb(2 * i - 2, i - 1) // i
    assert all(tree_leaves(t) == i for t in trees)
    assert len(set(trees)) == len(trees)


def test_m3_table(h2):
    ops = transferred_all(h2.E, h2.retract, 3)
    assert {k: set(v) for k, v in ops.nonzero(3).items()} == {k: {v} for k, v in tables.M3.items()}


def test_m2_is_the_homology_table(h2):
    ops = transferred_all(h2.E, h2.retract, 2)
    want = {}
    for r, row in tables.HOMOLOGY_PRODUCT.items():
        for c, v in row.items():
            want[(r, c)] = {v}
    assert {k: set(v) for k, v in ops.nonzero(2).items()} == want


def test_massey_triple(h2):
    seq = ("f21_1", "f11_3", tables.A)
    assert is_massey_admissible(h2.E, h2.retract, seq)
    cyc = massey_cycle(h2.E, h2.retract, seq)
    assert h2.name_of(cyc) == "f22_3"


@pytest.mark.parametrize("k", range(1, 6))
def test_unbounded_family(h2, k):
    tr = Transfer(h2.E, h2.retract)
    args = ("f21_1",) + ("f11_3",) * k + (tables.A,)
    assert tr.m_vec(args) == {"f22_3"}
    assert h2.name_of(tr.q_vec(args[1:])) == "f12_3"


def test_ainf_relations_and_corruption(h2):
    ops = transferred_all(h2.E, h2.retract, 4)
    assert verify_ainf(ops, 4) == (True, None)
    bad = flip_entry(ops, ("f21_1", "f11_3", tables.A), "f22_3")
    ok, wit = verify_ainf(bad, 4)
    assert not ok and wit is not None


def test_arity_cap(h2):
    with pytest.raises(TransferError):
        transferred_all(h2.E, h2.retract, 9)


def test_broken_retract_rejected(h2):
    R = sdr_retract(h2.E.complex())
    R.h[h2.keys["f12_2"]] = frozenset()
    with pytest.raises(TransferError):
        Transfer(h2.E, R)


def test_formal_when_no_differential():
    # F[a]/a^2 with zero differential: every higher operation vanishes
    F = dual_numbers()
    F.complex = lambda: ChainComplex(F.order, {})
    F.mulv = lambda u, v: frozenset().union(*[F.mul(x, y) for x in u for y in v]) if u and v else frozenset()
    R = sdr_retract(F.complex())
    ops = transferred_all(F, R, 5)
    assert all(not ops.nonzero(n) for n in (3, 4, 5))
    assert verify_ainf(ops, 5)[0]


@given(st.lists(st.sampled_from(tables.CLASSES), min_size=3, max_size=4))
@settings(max_examples=200, deadline=None)
def test_m_vanishes_off_composable_tuples(seq):
    B = build_hn(2)
    tr = Transfer(B.E, B.retract)
    if tuple(seq) not in set(tr.composable(len(seq))):
        assert not tr.m_vec(seq)


def test_second_retract_moves_m3_inside_indeterminacy(h2):
    # the machine retract kills m3 on the distinguished triple; the difference
    # [f22_3] = [f21_1][f12_1+f12_3] lies in [f21_1] H + H [A], so both answers
    # represent the same Massey product
    R2 = sdr_retract(h2.E.complex())
    tr = Transfer(h2.E, R2)
    args = [R2.P(h2.retract.iota[c]) for c in ("f21_1", "f11_3", tables.A)]
    assert not tr.m_vec(args)
    R = h2.retract
    prod = R.P(h2.E.mulv(R.iota["f21_1"], R.iota[tables.A]))
    assert prod == {"f22_3"}
