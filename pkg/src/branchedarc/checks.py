"""The acceptance checks, shared by ``check-all`` and the test suite.

Each check returns a Result; ``detail`` holds what was compared so a failure
can be read without rerunning anything.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field

from . import tables
from .arc import arc_algebra, identity_word, kh_brute, kh_link, parse_word, qpoly
from .branched import build_hn, build_lambda, check_iso_H2, cfd_fixture, homology_table, lambda_report
from .dmod import MorSpace
from .gf2 import sdr_retract
from .hh import compare_twist, rozansky, ss_check
from .strands import linear_pmc, strands_algebra, torus, weight0_basis
from .transfer import Transfer, transferred_all, verify_ainf


@dataclass
class Result:
    name: str
    ok: bool
    detail: dict = field(default_factory=dict)
    seconds: float = 0.0

    def line(self):
        return f"{'PASS' if self.ok else 'FAIL'}  {self.name}  ({self.seconds:.1f}s)"


_h2 = None


def h2():
    global _h2
    if _h2 is None:
        _h2 = build_hn(2)
    return _h2


def c1_census():
    A = strands_algebra(2)
    gens = weight0_basis(linear_pmc(2))
    counts = [sum(1 for g in gens if len(g.chords) == r) for r in range(3)]
    return counts == [6, 28, 179] and len(A.idems) == 6, {"counts": counts}


def c2_structure():
    from .branched import validate_appendix
    ok, cell = validate_appendix(h2())
    return ok, {"first_failure": cell}


def c3_homology():
    B = h2()
    R = B.retract
    mor12 = [c for c in R.classes if all(B.names[k].startswith("f12") for k in R.iota[c])]
    ok = B.homology_dims == (4, 2, 2, 4) and sorted(mor12) == sorted([tables.A, tables.B])
    return ok, {"dims": list(B.homology_dims), "mor12": mor12}


def c4_iso():
    B = h2()
    hom = homology_table(B)
    bad = None
    for r in tables.CLASSES:
        for c in tables.CLASSES:
            got = hom[r].get(c)
            exp = tables.HOMOLOGY_PRODUCT.get(r, {}).get(c)
            got_s = None if got is None else sorted(got)
            exp_s = None if exp is None else [exp]
            if got_s != exp_s:
                bad = {"row": r, "col": c, "got": got_s, "want": exp_s}
                break
        if bad:
            break
    iso = check_iso_H2(B)
    return bad is None and iso["ok"], {"table_mismatch": bad, "iso": iso}


def _m3_table(B, R):
    tr = Transfer(B.E, R)
    out = {}
    for t in tr.composable(3):
        v = tr.m(t)
        if v:
            out[t] = v
    return tr, out


def c5a_m3_table():
    B = h2()
    tr, got = _m3_table(B, B.retract)
    want = {k: frozenset([v]) for k, v in tables.M3.items()}
    return got == want, {"entries": len(got)}


def c5b_second_retract():
    B = h2()
    R, R2 = B.retract, sdr_retract(B.E.complex())
    tr = Transfer(B.E, R2)
    # same cycles fed in; the answer is read back in the pinned class basis
    args = [R2.P(R.iota[c]) for c in ("f21_1", "f11_3", tables.A)]
    out = tr.m_vec(args)
    acc = set()
    for c in out:
        acc ^= R.P(R2.iota[c])
    v = frozenset(acc)
    h = {B.names[k]: B.name_of(w) for k, w in R2.h.items() if w}
    return v == {"f22_3"}, {"retract_h": h, "m3": sorted(v)}


def c6_unbounded():
    B = h2()
    tr = Transfer(B.E, B.retract)
    rows = []
    ok = True
    for k in range(1, 6):
        args = ("f21_1",) + ("f11_3",) * k + (tables.A,)
        m = tr.m_vec(args)
        q = B.name_of(tr.q_vec(args[1:]))
        good = m == {"f22_3"} and q == "f12_3"
        ok &= good
        rows.append({"k": k, "m": sorted(m), "q": q})
    return ok, {"rows": rows}


def c7_ainf():
    B = h2()
    ops = transferred_all(B.E, B.retract, 5)
    ok, wit = verify_ainf(ops, 5)
    return ok, {"witness": wit}


def c8_torus():
    N = cfd_fixture("torus-example")
    A = N.alg
    S = MorSpace(N, N)
    (r12,) = torus("rho12")
    (r123,) = torus("rho123")
    f = ("z", r12, "y")
    got = S.d_basic(f)
    want = {("y", r12, "y"), ("z", r123, "x"), ("z", r12, "z")}
    # the x -rho2-> z -rho12-> y path would need rho2 rho12, which vanishes
    (r2,) = torus("rho2")
    return got == want and not A.mul(r2, r12), {"terms": len(got)}


def c9_embeddings():
    rep = lambda_report(build_lambda(h2()))
    flags = [k for k, v in rep.items() if isinstance(v, bool)]
    ok = all(rep[k] for k in flags) and rep["homology_rank"] == 12
    return ok, rep


def c10_khovanov():
    unknot = kh_link("cup(1) cap(1)")
    chi = qpoly(unknot)
    hopf_word = parse_word("x(1) x(1)")
    hopf = kh_link(hopf_word)
    brute = kh_brute(hopf_word)
    H = arc_algebra(2)
    ok = (unknot == {(0, -1): 1, (0, 1): 1} and chi == {-1: 1, 1: 1}
          and hopf == brute and len(H.basis) == 12 and H.check() is None)
    return ok, {"unknot": str(unknot), "hopf": str(hopf), "dim_H2": len(H.basis)}


def c11_spectral():
    r = ss_check("x(1)", (-6, 6))
    return r.ok, {"E2": str(r.E2), "pages": len(r.pages)}


def c12_rozansky():
    rows, ok = [], True
    for w in ("", "x(1)"):
        T = parse_word(w, width=2) if w else identity_word(1)
        for k in (2, 3):
            r = compare_twist(T, k, -8, 2)
            good = r["comparable"] and r["agree"]
            ok &= good
            rows.append({"tangle": w or "id", "k": k, "a": r["a"], "agree": good})
    return ok, {"rows": rows}


def c13_hh_h1():
    dims = rozansky(identity_word(1), -8, 8)
    per_t = {}
    for (t, q), n in dims.items():
        per_t[t] = per_t.get(t, 0) + n
    # Hochschild words have length >= 0 over a complex in degree 0, so t <= 0
    ok = all(per_t.get(t, 0) > 0 for t in range(-8, 1))
    return ok, {"dims": per_t}


CRITERIA = [
    ("1 strands census", c1_census),
    ("2 h2 structure", c2_structure),
    ("3 h2 homology", c3_homology),
    ("4 H_* h2 table and H2 iso", c4_iso),
    ("5a m3 table", c5a_m3_table),
    ("5b m3 under a second retract", c5b_second_retract),
    ("6 unbounded operations", c6_unbounded),
    ("7 A-infinity relations n<=5", c7_ainf),
    ("8 torus morphism example", c8_torus),
    ("9 embeddings", c9_embeddings),
    ("10 Khovanov side", c10_khovanov),
    ("11 spectral sequence", c11_spectral),
    ("12 Rozansky vs full twist", c12_rozansky),
    ("13 HH(H1) nonvanishing", c13_hh_h1),
]


def run(name, fn):
    t = time.perf_counter()
    ok, detail = fn()
    return Result(name, bool(ok), detail, time.perf_counter() - t)


def run_all():
    return [run(name, fn) for name, fn in CRITERIA]
