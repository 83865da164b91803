"""Exact linear algebra over F2.

Vectors are frozensets of basis keys (a key is present iff its coefficient
is 1).  For rank and kernel computations the keys are indexed and rows are
packed into Python ints, which act as bitsets.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable

ZERO = frozenset()


def vadd(*vs):
    out = set()
    for v in vs:
        out ^= set(v)
    return frozenset(out)


def vapply(f, v):
    """Apply a linear map given on basis keys (callable or dict) to a vector."""
    get = f.get if isinstance(f, dict) else f
    out = set()
    for k in v:
        img = get(k)
        if img:
            out ^= set(img)
    return frozenset(out)


class Echelon:
    """Incrementally built subspace of F2^N, rows stored as ints keyed by their lowest bit."""

    def __init__(self):
        self.piv = {}

    def reduce(self, r):
        piv = self.piv
        while r:
            low = r & -r
            p = piv.get(low)
            if p is None:
                return r
            r ^= p
        return 0

    def add(self, r):
        r = self.reduce(r)
        if r:
            self.piv[r & -r] = r
            return True
        return False

    def __len__(self):
        return len(self.piv)


def rank(rows):
    e = Echelon()
    for r in rows:
        e.add(r)
    return len(e)


def kernel(rows):
    """Kernel of the map e_i -> rows[i]; returned as ints over the source index."""
    piv = {}
    out = []
    for i, r in enumerate(rows):
        c = 1 << i
        while r:
            low = r & -r
            p = piv.get(low)
            if p is None:
                piv[low] = (r, c)
                break
            r ^= p[0]
            c ^= p[1]
        if not r:
            out.append(c)
    return out


def bits(n):
    """Indices of the set bits of n, ascending."""
    out = []
    while n:
        low = n & -n
        out.append(low.bit_length() - 1)
        n ^= low
    return out


class ComplexError(ValueError):
    pass


@dataclass
class ChainComplex:
    """Finite complex over F2.

    ``degree`` may be None (ungraded: d is just a square-zero map).  Otherwise
    d shifts degree by ``step`` (−1 homological, +1 cohomological).
    """
    basis: list
    d: dict
    degree: dict | None = None
    step: int = -1
    index: dict = field(init=False, repr=False)

    def __post_init__(self):
        self.basis = list(self.basis)
        self.index = {k: i for i, k in enumerate(self.basis)}
        if len(self.index) != len(self.basis):
            raise ComplexError("duplicate basis keys")
        self.d = {k: frozenset(self.d.get(k, ())) for k in self.basis}
        for k, img in self.d.items():
            for t in img:
                if t not in self.index:
                    raise ComplexError(f"d({k!r}) leaves the basis: {t!r}")
                if self.degree is not None and self.degree[t] != self.degree[k] + self.step:
                    raise ComplexError(f"d({k!r}) has a term of the wrong degree: {t!r}")

    def deg(self, k):
        return 0 if self.degree is None else self.degree[k]

    def degrees(self):
        return sorted({self.deg(k) for k in self.basis})

    def in_degree(self, g):
        return [k for k in self.basis if self.deg(k) == g]

    def dvec(self, v):
        return vapply(self.d, v)

    def pack(self, v):
        ix = self.index
        n = 0
        for k in v:
            n ^= 1 << ix[k]
        return n

    def unpack(self, n):
        return frozenset(self.basis[i] for i in bits(n))

    def d_squared_witness(self):
        for k in self.basis:
            if self.dvec(self.d[k]):
                return k
        return None


@dataclass
class Homology:
    dims: dict
    reps: dict

    @property
    def total(self):
        return sum(self.dims.values())


def homology(C: ChainComplex) -> Homology:
    bad = C.d_squared_witness()
    if bad is not None:
        raise ComplexError(f"d∘d ≠ 0 on {bad!r}")
    dims, reps = {}, {}
    for g in C.degrees():
        here = C.in_degree(g)
        before = C.in_degree(g - C.step) if C.degree is not None else here
        bd = Echelon()
        for k in before:
            bd.add(C.pack(C.d[k]))
        cyc = kernel([C.pack(C.d[k]) for k in here])
        loc = {i: C.index[k] for i, k in enumerate(here)}
        chosen = []
        for c in cyc:
            v = 0
            for i in bits(c):
                v ^= 1 << loc[i]
            if bd.add(v):
                chosen.append(C.unpack(v))
        dims[g] = len(chosen)
        reps[g] = chosen
    return Homology(dims, reps)


def homology_dims(C: ChainComplex) -> dict:
    """dim H per degree from ranks only (no representatives)."""
    ranks = {}
    for g in C.degrees():
        ranks[g] = rank(C.pack(C.d[k]) for k in C.in_degree(g))
    out = {}
    for g in C.degrees():
        n = len(C.in_degree(g))
        src = g - C.step if C.degree is not None else g
        out[g] = n - ranks[g] - ranks.get(src, 0)
    return out


# -- strong deformation retracts ---------------------------------------------

@dataclass
class Retract:
    """SDR of a complex onto its homology (zero differential).

    classes: names of the homology basis; iota: class -> cycle;
    p: basis key -> vector of classes; h: basis key -> vector of basis keys.
    """
    classes: list
    iota: dict
    p: dict
    h: dict
    class_degree: dict = field(default_factory=dict)

    def P(self, v):
        return vapply(self.p, v)

    def I(self, v):
        return vapply(self.iota, v)

    def H(self, v):
        return vapply(self.h, v)


class RetractError(ValueError):
    pass


def verify_retract(C: ChainComplex, R: Retract):
    """Check the five SDR identities; returns (ok, identity name or None, witness)."""
    for k in C.basis:
        if k not in R.p or k not in R.h:
            return False, "p and h defined on every basis element", k
    for c in R.classes:
        if R.P(R.iota[c]) != frozenset([c]):
            return False, "p∘ι = id", c
        if C.dvec(R.iota[c]):
            return False, "ι chain map", c
        if R.H(R.iota[c]):
            return False, "h∘ι = 0", c
    for k in C.basis:
        if R.P(C.d[k]):
            return False, "p chain map", k
        lhs = R.I(R.p[k])
        rhs = vadd([k], C.dvec(R.h[k]), R.H(C.d[k]))
        if lhs != rhs:
            return False, "ι∘p = id + dh + hd", k
        if R.H(R.h[k]):
            return False, "h∘h = 0", k
        if R.P(R.h[k]):
            return False, "p∘h = 0", k
    return True, None, None


def _p_from_iota_h(C, classes, iota, h):
    # ι∘p = id + dh + hd and ι injective determine p.
    owner = {}
    for c in classes:
        r = C.pack(iota[c])
        comb = 1 << len(owner)
        red, cm = r, comb
        # track combinations explicitly
        while red:
            low = red & -red
            if low in owner:
                pr, pc = owner[low]
                red ^= pr
                cm ^= pc
            else:
                owner[low] = (red, cm)
                break
        if not red:
            raise RetractError("pinned ι is not injective")
    names = list(classes)
    p = {}
    for k in C.basis:
        target = C.pack(vadd([k], C.dvec(h.get(k, ZERO)), vapply(h, C.d[k])))
        cm = 0
        while target:
            low = target & -target
            if low not in owner:
                raise RetractError(f"id + dh + hd leaves im ι at {k!r}")
            pr, pc = owner[low]
            target ^= pr
            cm ^= pc
        p[k] = frozenset(names[i] for i in bits(cm))
    return p


def sdr_retract(C: ChainComplex, pinned: Retract | None = None) -> Retract:
    """Strong deformation retract onto homology.

    Without ``pinned`` this runs sequential Gaussian elimination: basis keys are
    visited in order and each surviving key with nonzero differential is paired
    with the smallest key in its current differential.  ``pinned`` may give
    (classes, iota, h) with p omitted (p is then solved for) or all of p, ι, h.
    """
    bad = C.d_squared_witness()
    if bad is not None:
        raise ComplexError(f"d∘d ≠ 0 on {bad!r}")
    if pinned is not None:
        R = pinned
        h = {k: frozenset(R.h.get(k, ZERO)) for k in C.basis}
        if not R.p:
            p = _p_from_iota_h(C, R.classes, R.iota, h)
        else:
            p = {k: frozenset(R.p.get(k, ZERO)) for k in C.basis}
        cdeg = dict(R.class_degree)
        for c in R.classes:
            if c not in cdeg and R.iota[c]:
                cdeg[c] = C.deg(next(iter(R.iota[c])))
        R = Retract(list(R.classes), dict(R.iota), p, h, cdeg)
        ok, name, wit = verify_retract(C, R)
        if not ok:
            raise RetractError(f"pinned retract fails {name} at {wit!r}")
        return R

    order = {k: i for i, k in enumerate(C.basis)}
    alive = set(C.basis)
    d = {k: set(C.d[k]) for k in C.basis}
    # reverse incidence of the current differential
    rev = {k: set() for k in C.basis}
    for k, img in d.items():
        for t in img:
            rev[t].add(k)
    iota = {k: {k} for k in C.basis}
    p = {k: {k} for k in C.basis}
    prev = {k: {k} for k in C.basis}   # which original keys have k in p(.)
    h = {k: set() for k in C.basis}

    for b in C.basis:
        if b not in alive or not d[b]:
            continue
        a = min(d[b], key=order.__getitem__)
        beta = d[b] - {a}
        # new differential: x with a in d(x) gets beta added
        for x in list(rev[a]):
            if x == b:
                continue
            for t in beta:
                if t in d[x]:
                    d[x].discard(t)
                    rev[t].discard(x)
                else:
                    d[x].add(t)
                    rev[t].add(x)
            d[x].discard(a)
            # ι(x) += ι(b)
            iota[x] ^= iota[b]
        # drop b and a from every differential
        for x in list(rev[b]):
            d[x].discard(b)
        for t in d[b]:
            rev[t].discard(b)
        for t in d[a]:
            rev[t].discard(a)
        # p: originals with a in p get beta, originals with b lose b;
        # h: originals with a in p gain ι(b)
        ib = frozenset(iota[b])
        for y in list(prev[a]):
            p[y].discard(a)
            h[y] ^= ib
            for t in beta:
                if t in p[y]:
                    p[y].discard(t)
                    prev[t].discard(y)
                else:
                    p[y].add(t)
                    prev[t].add(y)
        for y in list(prev[b]):
            p[y].discard(b)
        alive.discard(a)
        alive.discard(b)
        d[a] = set()
        d[b] = set()
        rev[a] = set()
        rev[b] = set()
        prev[a] = set()
        prev[b] = set()

    classes = [k for k in C.basis if k in alive]
    R = Retract(classes,
                {c: frozenset(iota[c]) for c in classes},
                {k: frozenset(p[k]) for k in C.basis},
                {k: frozenset(h[k]) for k in C.basis},
                {c: C.deg(c) for c in classes})
    return R
