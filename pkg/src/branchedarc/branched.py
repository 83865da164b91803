"""Branched arc algebras h_1, h_2, the embeddings L, lambda, Lambda, and H_* h_2 vs H_2.

h_n is End over the weight-0 strands algebra of the bundled type-D fixtures.
For n = 2 every basic morphism gets the name ``fij_k`` (k-th element of
Mor(i, j) in basis order), which is how the reference tables are written.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources

from . import tables
from .dmod import TypeD, check_typed, end_dga, parse_fixture, EndDga
from .gf2 import ChainComplex, Echelon, Retract, ZERO, bits, homology, sdr_retract, vadd
from .strands import strands_algebra

FIXTURES = {"a1": "a1.txt", "a2": "a2.txt", "solid-torus": "solid_torus.txt",
            "torus-example": "torus_example.txt"}


class ValidationError(ValueError):
    def __init__(self, msg, cell=None):
        super().__init__(msg)
        self.cell = cell


def fixture_text(name):
    if name not in FIXTURES:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(FIXTURES)}")
    return resources.files("branchedarc").joinpath("fixtures", FIXTURES[name]).read_text()


def cfd_fixture(name) -> TypeD:
    N = parse_fixture(fixture_text(name), name)
    ok, x, _ = check_typed(N)
    if not ok:
        raise ValidationError(f"fixture {name} fails the type-D relation at {x}", cell=x)
    return N


@dataclass
class BranchedAlgebra:
    n: int
    E: EndDga
    names: dict                # basis key -> name
    keys: dict                 # name -> basis key
    retract: Retract
    homology_dims: tuple
    report: dict = field(default_factory=dict)

    def vec(self, expr):
        """'f12_1+f12_3' -> vector of basis keys."""
        return frozenset(self.keys[t] for t in expr.split("+")) if expr else ZERO

    def name_of(self, v):
        return "+".join(sorted(self.names[k] for k in v))


def _name_basis(E):
    names = {}
    for (i, j), fs in sorted(E.blocks().items()):
        for k, f in enumerate(fs, 1):
            names[f] = f"f{i + 1}{j + 1}_{k}"
    return names


def pinned_retract(B_or_E, names=None):
    """The pinned h_2 retract: iota = named cycles, h(f12_2)=f12_3, h(f12_5)=f12_6."""
    if isinstance(B_or_E, BranchedAlgebra):
        E, keys = B_or_E.E, B_or_E.keys
    else:
        E, keys = B_or_E, {v: k for k, v in names.items()}
    vec = lambda s: frozenset(keys[t] for t in s.split("+"))
    iota = {c: vec(c) for c in tables.CLASSES}
    h = {keys[a]: vec(b) for a, b in tables.RETRACT_H.items()}
    return sdr_retract(E.complex(), Retract(list(tables.CLASSES), iota, {}, h))


def validate_appendix(B: BranchedAlgebra):
    """Compare h_2 against the reference tables; returns (ok, first failing cell)."""
    E, names, vec = B.E, B.names, B.vec
    blocks = E.blocks()
    dims = tuple(len(blocks.get(b, [])) for b in [(0, 0), (0, 1), (1, 0), (1, 1)])
    if dims != tables.H2_BLOCK_DIMS:
        return False, {"table": "block dims", "got": list(dims)}
    for f in tables.BASIS:
        want = vec(tables.DIFFERENTIAL.get(f, ""))
        if E.d(B.keys[f]) != want:
            return False, {"table": "differential", "cell": f, "got": B.name_of(E.d(B.keys[f]))}
    for r in tables.BASIS:
        for c in tables.BASIS:
            got = E.mul(B.keys[r], B.keys[c])
            want = vec(tables.PRODUCT[r].get(c, ""))
            if got != want:
                return False, {"table": "product", "row": r, "col": c,
                               "got": B.name_of(got), "want": tables.PRODUCT[r].get(c, "")}
    if B.homology_dims != tables.H2_HOMOLOGY_DIMS:
        return False, {"table": "homology dims", "got": list(B.homology_dims)}
    return True, None


def _block_homology(E):
    out = []
    for b, fs in sorted(E.blocks().items()):
        sub = {f: E.d(f) for f in fs}
        out.append(homology(ChainComplex(fs, sub)).total)
    return tuple(out)


def build_hn(n, validate=True) -> BranchedAlgebra:
    if n == 1:
        Ns = [cfd_fixture("solid-torus")]
    elif n == 2:
        Ns = [cfd_fixture("a1"), cfd_fixture("a2")]
    else:
        raise ValueError("only n = 1, 2 are built in full")
    E = end_dga(Ns)
    names = _name_basis(E)
    keys = {v: k for k, v in names.items()}
    hd = _block_homology(E)
    if n == 2:
        R = pinned_retract(E, names)
    else:
        R = sdr_retract(E.complex())
    B = BranchedAlgebra(n, E, names, keys, R, hd)
    if n == 1 and validate and sum(hd) != 2:
        raise ValidationError(f"solid-torus fixture gives dim H = {sum(hd)}, expected 2")
    if n == 2 and validate:
        ok, cell = validate_appendix(B)
        if not ok:
            raise ValidationError(f"h_2 differs from the reference at {cell}", cell=cell)
    return B


def homology_table(B: BranchedAlgebra, R=None):
    """m_2 on the homology basis: row -> {col: tuple of classes}, in class order."""
    R = R or B.retract
    pos = {c: i for i, c in enumerate(R.classes)}
    out = {}
    for a in R.classes:
        row = {}
        for b in R.classes:
            v = R.P(B.E.mulv(R.iota[a], R.iota[b]))
            if v:
                row[b] = tuple(sorted(v, key=pos.__getitem__))
        out[a] = row
    return out


# -- the arc-algebra comparison ------------------------------------------

def check_iso_H2(B: BranchedAlgebra | None = None, psi=None):
    """Transport the H_* h_2 table through psi and compare with H_2 computed from scratch.

    Returns a report dict with ``ok`` and, on failure, the first differing cell.
    """
    from .arc import arc_algebra
    B = B or build_hn(2)
    psi = dict(psi or tables.PSI)
    H = arc_algebra(2)
    hom = homology_table(B)
    # the H_2 side in the nonstandard basis, computed by the arc module
    H2 = {}
    for r in tables.H2_BASIS:
        H2[r] = {}
        for c in tables.H2_BASIS:
            v = H.mulv(H.parse(r), H.parse(c))
            if v:
                H2[r][c] = H.express(v, tables.H2_BASIS)
    cells = 0
    for r in tables.CLASSES:
        for c in tables.CLASSES:
            cells += 1
            got = hom[r].get(c)
            want = H2[psi[r]].get(psi[c])
            mapped = None if got is None else sorted(psi[t] for t in got)
            want_s = None if want is None else sorted(want)
            if mapped != want_s:
                return {"ok": False, "cells": cells, "row": r, "col": c,
                        "transported": mapped, "H2": want_s}
    return {"ok": True, "cells": cells}


# -- embeddings into genus n+1 --------------------------------------------

def point_map(i):
    """1 -> 4, i -> i + 4 otherwise."""
    return 4 if i == 1 else i + 4


class Embedding:
    """L_n on basis keys of A_n, lambda on type-D structures, Lambda on morphisms."""

    def __init__(self, n):
        self.n = n
        self.A = strands_algebra(n)
        self.B = strands_algebra(n + 1)
        Z, Z1 = self.A.Z, self.B.Z
        self.pair_map = {m: Z1.M(point_map(lo)) for m, (lo, hi) in enumerate(Z.pairs, 1)}
        for m, (lo, hi) in enumerate(Z.pairs, 1):
            if Z1.M(point_map(hi)) != self.pair_map[m]:
                raise ValueError("point map does not respect the matchings")
        self._rho13 = self.B.chord_elem([(1, 3)])

    def L_key(self, key):
        _, chords, li = key
        new = tuple(sorted((point_map(s), point_map(t)) for s, t in chords))
        occ = tuple(sorted({1} | {self.pair_map[m] for m in self.A.idems[li]}))
        k = (len(new), new, self.B.idem_index[occ])
        if not self.B.valid_key(new, k[2]):
            raise ValueError(f"L of {key} is not a basis element")
        return k

    def L(self, v):
        return frozenset(self.L_key(k) for k in v)

    def L_idem(self, li):
        return self.L_key(self.A.idem_key(li))[2]

    def rho13(self, li=None):
        """rho_{1,3} in genus n+1, cut down to left idempotent li if given."""
        return frozenset(k for k in self._rho13 if li is None or k[2] == li)

    def commutator(self, key):
        x = self.L_key(key)
        return vadd(self.B.mulv(self._rho13, [x]), self.B.mulv([x], self._rho13))


def Ln_embed(v, n=2):
    return Embedding(n).L(v)


def cfd_plus_plus(N: TypeD, emb: Embedding | None = None) -> TypeD:
    emb = emb or Embedding(N.alg.Z.k)
    idem = {x: emb.L_idem(N.idem[x]) for x in N.gens}
    delta = {x: set() for x in N.gens}
    for x in N.gens:
        for a, y in N.delta[x]:
            delta[x] ^= {(emb.L_key(a), y)}
        for r in emb.rho13(idem[x]):
            if emb.B.right(r) == idem[x]:
                delta[x] ^= {(r, x)}
    out = TypeD(emb.B, list(N.gens), idem, delta, name=(N.name + "++") if N.name else "")
    ok, x, terms = check_typed(out)
    if not ok:
        raise ValidationError(f"{out.name} fails the type-D relation at {x}", cell=x)
    return out


@dataclass
class LambdaData:
    emb: Embedding
    h2: BranchedAlgebra
    E3: EndDga
    Lam: dict          # h_2 basis key -> E3 basis key
    rhoLam: dict       # h_2 basis key -> E3 vector (rho_{1,3} . Lambda f)


def lambda_embed(f, data: LambdaData):
    return frozenset(data.Lam[k] for k in f)


def build_lambda(B: BranchedAlgebra | None = None) -> LambdaData:
    B = B or build_hn(2)
    emb = Embedding(2)
    Ns = [cfd_plus_plus(N, emb) for N in B.E.Ns]
    E3 = end_dga(Ns, check=False)
    Lam, rhoLam = {}, {}
    for f in B.E.basis:
        (i, x), a, (j, y) = f
        g = ((i, x), emb.L_key(a), (j, y))
        if g not in E3.index:
            raise ValidationError(f"Lambda of {B.names[f]} leaves the morphism basis")
        Lam[f] = g
        lx = E3.total.idem[(i, x)]
        rho = [((i, x), r, (i, x)) for r in emb.rho13(lx) if emb.B.right(r) == lx]
        rhoLam[f] = E3.mulv(frozenset(rho), [g])
    return LambdaData(emb, B, E3, Lam, rhoLam)


def lambda_report(data: LambdaData):
    """All the embedding checks; returns a dict of named booleans plus counts."""
    B, E3 = data.h2, data.E3
    emb = data.emb
    out = {}
    # L_2 on the whole refined basis of A_2
    keys = emb.A.keys()
    imgs = [emb.L_key(k) for k in keys]
    out["L_injective"] = len(set(imgs)) == len(keys)
    out["L_chain"] = all(emb.L(emb.A.d(k)) == emb.B.d(emb.L_key(k)) for k in keys)
    ok = True
    for k1 in keys:
        for k2 in keys:
            if emb.A.right(k1) != emb.A.left(k2):
                continue
            if emb.L(emb.A.mul(k1, k2)) != emb.B.mul(emb.L_key(k1), emb.L_key(k2)):
                ok = False
                break
        if not ok:
            break
    out["L_multiplicative"] = ok
    out["rho13_commutes"] = all(not emb.commutator(k) for k in keys)
    # Lambda: chain map and algebra map
    Lam = data.Lam
    out["Lambda_chain"] = all(E3.d(Lam[f]) == lambda_embed(B.E.d(f), data) for f in B.E.basis)
    out["Lambda_multiplicative"] = all(
        E3.mul(Lam[f], Lam[g]) == lambda_embed(B.E.mul(f, g), data)
        for f in B.E.basis for g in B.E.basis)
    out["Lambda_unit"] = lambda_embed(B.E.unit(), data) == E3.unit()
    # decomposition End = im Lambda + rho13 im Lambda
    e = Echelon()
    C3 = E3.complex()
    for f in B.E.basis:
        e.add(C3.pack([Lam[f]]))
    for f in B.E.basis:
        e.add(C3.pack(data.rhoLam[f]))
    out["dim_End3"] = len(E3.basis)
    out["dim_sum"] = len(e)
    out["direct_sum"] = len(e) == 2 * len(B.E.basis) == len(E3.basis)
    out["block_diagonal"] = all(
        E3.dv(data.rhoLam[f]) == vadd(*[data.rhoLam[g] for g in B.E.d(f)])
        for f in B.E.basis)
    # homological injectivity: images of the homology basis stay independent mod boundaries
    bd = Echelon()
    for g in E3.basis:
        bd.add(C3.pack(E3.d(g)))
    rank = 0
    for c in B.retract.classes:
        if bd.add(C3.pack(lambda_embed(B.retract.iota[c], data))):
            rank += 1
    out["homology_rank"] = rank
    return out


def lambda_retract(data: LambdaData):
    """Retract of End over genus 3 made of two copies of the pinned h_2 retract."""
    B, E3 = data.h2, data.E3
    R = B.retract
    C3 = E3.complex()
    rhoL = lambda v: vadd(*[data.rhoLam[k] for k in v]) if v else ZERO
    # change of basis: E3 keys in terms of Lambda f and rho13 Lambda f
    cols = [("L", f) for f in B.E.basis] + [("rL", f) for f in B.E.basis]
    rows = [C3.pack([data.Lam[f]]) for f in B.E.basis] + [C3.pack(data.rhoLam[f]) for f in B.E.basis]
    piv = {}
    for idx, r in enumerate(rows):
        comb = 1 << idx
        while r:
            low = r & -r
            if low not in piv:
                piv[low] = (r, comb)
                break
            r ^= piv[low][0]
            comb ^= piv[low][1]
    h = {}
    for g in E3.basis:
        t, comb = C3.pack([g]), 0
        while t:
            pr, pc = piv[t & -t]
            t ^= pr
            comb ^= pc
        acc = set()
        for i in bits(comb):
            kind, f = cols[i]
            acc ^= lambda_embed(R.h[f], data) if kind == "L" else rhoL(R.h[f])
        h[g] = frozenset(acc)
    iota = {}
    for c in R.classes:
        iota[("L", c)] = lambda_embed(R.iota[c], data)
        iota[("rL", c)] = rhoL(R.iota[c])
    classes = [("L", c) for c in R.classes] + [("rL", c) for c in R.classes]
    return sdr_retract(C3, Retract(classes, iota, {}, h))
