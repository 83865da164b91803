import pytest

from branchedarc import tables
from branchedarc.branched import (Embedding, Ln_embed, build_hn, build_lambda, cfd_fixture,
                                  cfd_plus_plus, check_iso_H2, homology_table, lambda_embed, lambda_report,
                                  lambda_retract, point_map, validate_appendix)
from branchedarc.arc import arc_algebra
from branchedarc.dmod import TypeD, check_typed
from branchedarc.transfer import Transfer


def test_h2_dims(h2):
    assert len(h2.E.basis) == 16
    assert len(h2.retract.classes) == 12
    assert h2.homology_dims == (4, 2, 2, 4)


def test_named_product(h2):
    assert h2.E.mulv(h2.vec("f21_1"), h2.vec("f12_3")) == h2.vec("f22_3")


def test_validate_appendix_ok(h2):
    assert validate_appendix(h2) == (True, None)


def test_validate_reports_cell(h2, monkeypatch):
    bad = {r: dict(row) for r, row in tables.PRODUCT.items()}
    bad["f21_1"]["f12_3"] = "f22_4"
    monkeypatch.setattr(tables, "PRODUCT", bad)
    ok, cell = validate_appendix(h2)
    assert not ok and cell["row"] == "f21_1" and cell["col"] == "f12_3"


def test_h1_matches_arc_algebra():
    B = build_hn(1)
    H = arc_algebra(1)
    assert sum(B.homology_dims) == len(H.basis) == 2
    tab = homology_table(B)
    # one unit and one square-zero class, as in H_1 = F[x]/x^2
    units = [c for c in B.retract.classes if all(tab[c].get(d) == (d,) for d in B.retract.classes)]
    assert len(units) == 1
    (x,) = [c for c in B.retract.classes if c not in units]
    assert x not in tab[x]


def test_iso_with_H2(h2):
    rep = check_iso_H2(h2)
    assert rep == {"ok": True, "cells": 144}


def test_iso_cell_bb(h2):
    tab = homology_table(h2)
    assert tab["f22_2"]["f22_3"] == ("f22_4",)
    H = arc_algebra(2)
    assert H.mulv(H.parse("bb-x1"), H.parse("bb-1x+bb-x1")) == H.parse("bb-xx")


def test_corrupted_psi_fails(h2):
    psi = dict(tables.PSI)
    psi["f11_2"], psi["f11_4"] = psi["f11_4"], psi["f11_2"]
    rep = check_iso_H2(h2, psi)
    assert not rep["ok"] and "row" in rep


def test_point_map():
    assert [point_map(i) for i in range(1, 9)] == [4, 6, 7, 8, 9, 10, 11, 12]


def test_L_on_rho13():
    emb = Embedding(2)
    v = emb.A.chord_elem([(1, 3)])
    img = Ln_embed(v)
    assert {k[1] for k in img} == {((4, 7),)}
    assert len(img) == len(v)


def test_cfd_plus_plus_a1():
    N = cfd_plus_plus(cfd_fixture("a1"))
    chords = sorted(k[1] for k, _ in N.delta["t"])
    assert chords == [((1, 3),), ((4, 7),), ((8, 11),)]
    assert check_typed(N)[0]


def test_cfd_plus_plus_zero_delta():
    A = cfd_fixture("a1").alg
    N = TypeD(A, ["t"], {"t": 1}, {})
    out = cfd_plus_plus(N)
    assert [k[1] for k, _ in out.delta["t"]] == [((1, 3),)]


@pytest.fixture(scope="module")
def lam(h2):
    return build_lambda(h2)


def test_lambda_report(lam):
    rep = lambda_report(lam)
    flags = {k: v for k, v in rep.items() if isinstance(v, bool)}
    assert all(flags.values()), flags
    assert rep["homology_rank"] == 12
    assert rep["dim_End3"] == rep["dim_sum"] == 32


def test_lambda_identity(lam, h2):
    assert lambda_embed(h2.E.unit(), lam) == lam.E3.unit()


def test_m3_survives_embedding(lam):
    R3 = lambda_retract(lam)
    tr = Transfer(lam.E3, R3)
    assert tr.m_vec((("L", "f21_1"), ("L", "f11_3"), ("L", tables.A))) == {("L", "f22_3")}
