"""Hochschild complexes, spectral sequences of filtered complexes, Rozansky's invariant.

A Hochschild word is (g, (a_1, ..., a_k)) with g in the bimodule M and a_i in
the algebra, idempotents matching cyclically.  With d_M raising the cube
degree h by one,

    D(g|a_1..a_k) = d_M g|a.. + (g a_1)|a_2.. + sum_i g|..|a_i a_{i+1}|.. + (a_k g)|a_1..a_{k-1}

and the total degree t = h(g) - k goes up by one under D.  Since h is bounded
on M, a fixed t only allows k <= h_max - t, so every degree is finite and is
computed exactly; no truncation of word length is involved.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from .arc import CubeComplex, TangleWord, arc_algebra, identity_word, kh_link, parse_word
from .gf2 import ChainComplex, Echelon, homology_dims, kernel


# -- bimodules ------------------------------------------------------------------

class TangleBimodule:
    """C_Kh(T) as a complex of (H_m, H_n)-bimodules."""

    def __init__(self, T: TangleWord, graded_only=False):
        self.C = CubeComplex(T)
        self.T = T
        self.HL = arc_algebra(T.m)
        self.HR = arc_algebra(T.n)
        self.basis = self.C.basis
        self.graded_only = graded_only
        self._l, self._r = {}, {}

    def d(self, g):
        return frozenset() if self.graded_only else self.C.d(g)

    def h(self, g):
        return self.C.hdeg[g]

    def q(self, g):
        return self.C.qdeg[g]

    def cube(self, g):
        return sum(g[0])

    def left(self, g):
        return g[1]

    def right(self, g):
        return g[2]

    def act_left(self, a, g):
        kk = (a, g)
        r = self._l.get(kk)
        if r is None:
            r = self._l[kk] = self.C.act_left(self.HL, a, g)
        return r

    def act_right(self, g, a):
        kk = (g, a)
        r = self._r.get(kk)
        if r is None:
            r = self._r[kk] = self.C.act_right(self.HR, g, a)
        return r


def gr(M: TangleBimodule):
    """The associated graded of the cube filtration: same bimodule, zero differential."""
    G = TangleBimodule.__new__(TangleBimodule)
    G.__dict__.update(M.__dict__)
    G.graded_only = True
    return G


class DgaBimodule:
    """A dg-algebra (e.g. an EndDga) as a bimodule over itself; h is None (ungraded)."""

    def __init__(self, E, grading=None):
        self.E = E
        self.basis = list(E.basis)
        self.grading = grading

    def d(self, g):
        return self.E.d(g)

    def h(self, g):
        return 0 if self.grading is None else self.grading[g]

    def q(self, g):
        return 0

    def cube(self, g):
        return 0

    def left(self, g):
        return self.E.left(g)

    def right(self, g):
        return self.E.right(g)

    def act_left(self, a, g):
        return self.E.mul(a, g)

    def act_right(self, g, a):
        return self.E.mul(g, a)


# -- the Hochschild complex ---------------------------------------------------------

def _paths(A, start, end, k, by_left):
    """Basis words a_1..a_k from idempotent ``start`` to ``end``."""
    if k == 0:
        if start == end:
            yield ()
        return
    for a in by_left.get(start, ()):
        for rest in _paths(A, A.right(a), end, k - 1, by_left):
            yield (a,) + rest


class GradingError(ValueError):
    pass


def check_positive(A):
    """Non-negative grading with degree 0 spanned by idempotents (arc algebras: deg = -q)."""
    unit = A.unit()
    for a in A.basis:
        deg = -A.q[a]
        if deg < 0 or (deg == 0 and a not in unit):
            raise GradingError(f"basis element {a!r} breaks the positivity assumption")


@dataclass
class HochschildComplex:
    words: list
    D: dict
    t: dict
    q: dict
    k: dict
    cube: dict
    window: tuple
    exact: bool = True
    meta: dict = field(default_factory=dict)

    def complex(self):
        return ChainComplex(self.words, self.D, self.t, step=1)

    def homology(self, interior=True):
        """{(t, q): dim} for t inside the window."""
        lo, hi = self.window
        byq = {}
        for w in self.words:
            byq.setdefault(self.q[w], []).append(w)
        out = {}
        for q, ws in sorted(byq.items()):
            C = ChainComplex(ws, {w: self.D[w] for w in ws}, {w: self.t[w] for w in ws}, step=1)
            for t, n in homology_dims(C).items():
                if n and (not interior or lo <= t <= hi):
                    out[(t, q)] = n
        return dict(sorted(out.items()))


def hochschild_complex(A, M, tmin, tmax, check=True) -> HochschildComplex:
    """Words of total degree tmin-1 .. tmax+1; homology is exact for tmin <= t <= tmax."""
    if check:
        check_positive(A)
    by_left = {}
    for a in A.basis:
        by_left.setdefault(A.left(a), []).append(a)
    hs = [M.h(g) for g in M.basis]
    hmax = max(hs)
    lo, hi = tmin - 1, tmax + 1
    words, t, q, kk, cube = [], {}, {}, {}, {}
    for g in M.basis:
        hg = M.h(g)
        for k in range(max(0, hg - hi), hg - lo + 1):
            for p in _paths(A, M.right(g), M.left(g), k, by_left):
                w = (g, p)
                words.append(w)
                t[w] = hg - k
                q[w] = M.q(g) + sum(A.q[a] for a in p)
                kk[w] = k
                cube[w] = M.cube(g)
    # completeness: a word of degree t has k = h(g) - t <= hmax - t
    assert all(kk[w] <= hmax - t[w] for w in words)
    index = set(words)
    D = {}
    for w in words:
        g, p = w
        acc = set()
        for g2 in M.d(g):
            acc ^= {(g2, p)}
        if p:
            for g2 in M.act_right(g, p[0]):
                acc ^= {(g2, p[1:])}
            for g2 in M.act_left(p[-1], g):
                acc ^= {(g2, p[:-1])}
            for i in range(len(p) - 1):
                for c in A.mul(p[i], p[i + 1]):
                    acc ^= {(g, p[:i] + (c,) + p[i + 2:])}
        # the top degree is a quotient: drop terms leaving the window
        D[w] = frozenset(x for x in acc if x in index)
    return HochschildComplex(words, D, t, q, kk, cube, (tmin, tmax),
                             meta={"hmax": hmax})


# -- filtered complexes and spectral sequences ------------------------------------------

class FiltrationError(ValueError):
    pass


@dataclass
class FilteredComplex:
    C: ChainComplex
    filt: dict               # basis key -> filtration index (ascending; d may only lower it)

    def __post_init__(self):
        for x in self.C.basis:
            for y in self.C.d[x]:
                if self.filt[y] > self.filt[x]:
                    raise FiltrationError(f"d raises the filtration: {x!r} -> {y!r}")


@dataclass
class SSPage:
    r: int
    dims: dict               # (p, t) -> dim E_r
    d_rank: int = 0

    def total(self):
        return sum(self.dims.values())


def _mask(idx, keys):
    m = 0
    for k in keys:
        m |= 1 << idx[k]
    return m


def _rank_masked(vecs, mask):
    e = Echelon()
    for v in vecs:
        e.add(v & mask)
    return len(e)


def _page(FC: FilteredComplex, r):
    C, filt = FC.C, FC.filt
    idx = C.index
    ps = sorted(set(filt.values()))
    dims = {}
    for t in C.degrees():
        here = C.in_degree(t)
        # ungraded: d maps the single degree to itself
        below = here if C.degree is None else C.in_degree(t - C.step)
        above = here if C.degree is None else C.in_degree(t + C.step)
        for p in ps:
            at_or_below = lambda s, bound: [x for x in s if filt[x] <= bound]
            Fp = at_or_below(here, p)
            if not Fp:
                continue
            keep = _mask(idx, [x for x in here if filt[x] >= p])    # kill F^{p-1}
            # Z_r^p: x in F^p with dx in F^{p-r}
            high = _mask(idx, [y for y in above if filt[y] > p - r])
            rows = [C.pack(C.d[x]) & high for x in Fp]
            Z = []
            for c in kernel(rows):
                v = 0
                for i, x in enumerate(Fp):
                    if c >> i & 1:
                        v ^= 1 << idx[x]
                Z.append(v)
            z = _rank_masked(Z, keep)
            # B_r^p: d(F^{p+r-1}) inside F^p
            src = at_or_below(below, p + r - 1)
            imgs = [C.pack(C.d[x]) for x in src]
            out_p = _mask(idx, [x for x in here if filt[x] > p])
            Bv = []
            for c in kernel([v & out_p for v in imgs]):
                v = 0
                for i in range(len(imgs)):
                    if c >> i & 1:
                        v ^= imgs[i]
                Bv.append(v)
            b = _rank_masked(Bv, keep)
            if z - b:
                dims[(p, t)] = z - b
    return dims


def ss_pages(FC: FilteredComplex, rmax=None):
    """E_0, E_1, ... until the page is certainly stable (r beyond the filtration spread)."""
    ps = sorted(set(FC.filt.values())) or [0]
    spread = ps[-1] - ps[0] + 1
    rmax = spread + 1 if rmax is None else rmax
    pages = []
    for r in range(0, rmax + 1):
        pages.append(SSPage(r, _page(FC, r)))
    for a, b in zip(pages, pages[1:]):
        a.d_rank = (a.total() - b.total()) // 2
    # trim trailing repeats
    while len(pages) > 1 and pages[-1].dims == pages[-2].dims:
        pages.pop()
    return pages


def gr_homology(FC: FilteredComplex):
    """dim of gr_p H^t, directly: (cycles in F^p + F^{p-1}) / (boundaries in F^p + F^{p-1})."""
    return _page(FC, 10 ** 6)


# -- filtrations on Hochschild complexes ------------------------------------------------

def total_filtration(HC: HochschildComplex, cube_max):
    """Word length plus twice the cube co-degree.

    d_M lowers the index by 2 and every multiplication by 1, so E_1 is the
    Hochschild chain group of gr M and E_2 = HH(H_*(gr M)).
    """
    return {w: HC.k[w] + 2 * (cube_max - HC.cube[w]) for w in HC.words}


def cube_filtration(HC: HochschildComplex, cube_max):
    return {w: cube_max - HC.cube[w] for w in HC.words}


def length_filtration(HC: HochschildComplex, cube_max=0):
    return {w: HC.k[w] for w in HC.words}


def reflected(filt):
    """The reflected (descending) word-length index, as an ascending one."""
    top = max(filt.values()) if filt else 0
    return {w: top - p for w, p in filt.items()}


@dataclass
class SSReport:
    E2: dict
    direct: dict
    Einf: dict
    gr_total: dict
    pages: list

    @property
    def ok(self):
        return self.E2 == self.direct and self.Einf == self.gr_total


def _collapse(dims, window):
    out = {}
    for (p, t), n in dims.items():
        if window[0] <= t <= window[1]:
            out[t] = out.get(t, 0) + n
    return out


def ss_check(T: TangleWord | str = "x(1)", window=(-6, 6)) -> SSReport:
    """E_2 vs HH(H_*(gr M)) and E_inf vs gr HH(M) for the cube-filtered complex of C_Kh(T)."""
    if isinstance(T, str):
        T = parse_word(T)
    A = arc_algebra(T.n)
    M = TangleBimodule(T)
    c = len(T.crossings())
    HC = hochschild_complex(A, M, *window)
    FC = FilteredComplex(HC.complex(), total_filtration(HC, c))
    pages = ss_pages(FC)
    E2 = pages[min(2, len(pages) - 1)].dims
    # HH of the associated graded, computed on its own (total-degree, filtration) split
    G = hochschild_complex(A, gr(M), *window)
    FG = FilteredComplex(G.complex(), total_filtration(G, c))
    direct = gr_homology(FG)
    window_only = lambda d: {k: v for k, v in d.items() if window[0] <= k[1] <= window[1]}
    return SSReport(window_only(E2), window_only(direct), window_only(pages[-1].dims),
                    window_only(gr_homology(FC)), pages)


# -- Rozansky's invariant and the full-twist oracle -----------------------------------------

def _check_n(T):
    if T.m != T.n or T.n not in (1, 2):
        raise ValueError("need an (n, n) tangle with n in {1, 2}")


def rozansky(T: TangleWord | str, tmin, tmax):
    """HH(C_Kh(T)) by (total degree t = h - k, q), exact for tmin <= t <= tmax."""
    if isinstance(T, str):
        T = parse_word(T) if T.strip() else identity_word(1)
    _check_n(T)
    A = arc_algebra(T.n)
    return hochschild_complex(A, TangleBimodule(T), tmin, tmax).homology()


def full_twist(n):
    """Full twist on 2n strands as a slice word of x-crossings."""
    gens = " ".join(f"x({i})" for i in range(1, 2 * n))
    return " ".join([gens] * (2 * n))


def twisted(T: TangleWord, k):
    word = " ".join([full_twist(T.n)] * k + ([str(T)] if T.slices else []))
    return parse_word(word, width=2 * T.n)


def twist_shift(T: TangleWord, k):
    """(h, q) shift from Kh of the closure of Phi^k T to the Hochschild grading.

    The closure is normalised with the braid orientation, where all twist
    crossings are positive.  The bimodule picture orients the 2n strands
    alternately; then the 2n^2 crossings per twist between strands of
    opposite parity are negative, and each such crossing moves (h, q) by (-1, -3).
    """
    flips = 2 * T.n * T.n * k
    return -flips, -3 * flips


def stable_bound(T: TangleWord, k):
    """a(k): the closure of Phi^k T agrees with HH in degrees >= a(k).

    2 - 2k was found by comparing both sides for n = 1 (identity and one
    crossing, k <= 4); for n = 2 only k = 1 is computable and gives 0 as well.
    """
    return 2 - 2 * k


def fulltwist_kh(T: TangleWord | str, k, tmin=None, tmax=None, max_crossings=14):
    """Kh of the closure of Phi^k T, shifted to the Hochschild normalisation.

    Returns {"dims": {(h, q): n}, "a": a(k), "comparable": bool}.
    """
    if isinstance(T, str):
        T = parse_word(T) if T.strip() else identity_word(1)
    _check_n(T)
    if k < 1:
        raise ValueError("k >= 1")
    W = twisted(T, k)
    if len(W.crossings()) > max_crossings:
        raise ValueError(f"{len(W.crossings())} crossings exceed the cap {max_crossings}")
    dh, dq = twist_shift(T, k)
    dims = {(h + dh, q + dq): n for (h, q), n in kh_link(W).items()}
    a = stable_bound(T, k)
    comparable = True
    if tmin is not None and tmax is not None:
        comparable = tmax >= a
        dims = {key: n for key, n in dims.items() if max(tmin, a) <= key[0] <= tmax}
    return {"dims": dict(sorted(dims.items())), "a": a, "comparable": comparable}


def compare_twist(T: TangleWord | str, k, tmin, tmax):
    """Rozansky vs the k-twist oracle in degrees max(a(k), tmin) .. tmax."""
    if isinstance(T, str):
        T = parse_word(T) if T.strip() else identity_word(1)
    ft = fulltwist_kh(T, k)
    a = ft["a"]
    lo = max(a, tmin)
    if lo > tmax:
        return {"comparable": False, "a": a}
    hh = rozansky(T, lo, tmax)
    kh = {key: n for key, n in ft["dims"].items() if lo <= key[0] <= tmax}
    return {"comparable": True, "a": a, "range": [lo, tmax], "agree": hh == kh,
            "rozansky": hh, "kh": kh}


# -- A-infinity cutoff mode ---------------------------------------------------------------

def solve_grading(E):
    """Integer grading with d of degree -1 and additive products, or None."""
    import sympy
    syms = {f: sympy.Symbol(f"g{i}") for i, f in enumerate(E.basis)}
    eqs = []
    for f in E.basis:
        for e in E.d(f):
            eqs.append(sympy.Eq(syms[e], syms[f] - 1))
    for f in E.basis:
        for g in E.basis:
            for e in E.mul(f, g):
                eqs.append(sympy.Eq(syms[e], syms[f] + syms[g]))
    sol = sympy.solve(eqs, list(syms.values()), dict=True)
    if not sol:
        return None
    sol = sol[0]
    out = {}
    for f, s in syms.items():
        val = sol.get(s, s).subs({v: 0 for v in syms.values()})
        if not val.is_integer:
            return None
        out[f] = int(val)
    return out


def ainf_cutoff_complex(E, L, grading=None):
    """Hochschild complex of a dg-algebra with itself, words of length <= L (a subcomplex)."""
    M = DgaBimodule(E, grading)
    by_left = {}
    for a in E.basis:
        by_left.setdefault(E.left(a), []).append(a)
    words, t, kk = [], {}, {}
    for g in E.basis:
        for k in range(0, L + 1):
            for p in _paths(E, E.right(g), E.left(g), k, by_left):
                w = (g, p)
                words.append(w)
                kk[w] = k
                if grading is not None:
                    t[w] = grading[g] + sum(grading[a] + 1 for a in p)
    index = set(words)
    D = {}
    for w in words:
        g, p = w
        acc = set()
        for g2 in E.d(g):
            acc ^= {(g2, p)}
        for i, a in enumerate(p):
            for a2 in E.d(a):
                acc ^= {(g, p[:i] + (a2,) + p[i + 1:])}
        if p:
            for g2 in E.mul(g, p[0]):
                acc ^= {(g2, p[1:])}
            for g2 in E.mul(p[-1], g):
                acc ^= {(g2, p[:-1])}
            for i in range(len(p) - 1):
                for c in E.mul(p[i], p[i + 1]):
                    acc ^= {(g, p[:i] + (c,) + p[i + 2:])}
        assert acc <= index
        D[w] = frozenset(acc)
    return words, D, t, kk


def ainf_hochschild_cutoff(E, L, window=None, grading="auto"):
    """Homology of the length-<= L truncation, compared against L+1.

    Returns {"degrees": [...], "exact": False, "cutoff": L, "graded": bool, "stable": [...]}.
    Without a grading only the total dimension is reported.
    """
    if grading == "auto":
        grading = solve_grading(E)
    res = {}
    for cut in (L, L + 1):
        words, D, t, kk = ainf_cutoff_complex(E, cut, grading)
        if grading is None:
            C = ChainComplex(words, D)
            from .gf2 import homology
            res[cut] = {None: homology(C).total}
        else:
            C = ChainComplex(words, D, t, step=-1)
            res[cut] = {g: n for g, n in homology_dims(C).items() if n}
    degs = sorted(set(res[L]) | set(res[L + 1]), key=lambda x: (x is None, x))
    if window is not None and grading is not None:
        degs = [g for g in degs if window[0] <= g <= window[1]]
    out = {"degrees": [{"t": g, "q": 0, "dim": res[L].get(g, 0)} for g in degs],
           "exact": False, "cutoff": L, "graded": grading is not None,
           "stable": [g for g in degs if res[L].get(g, 0) == res[L + 1].get(g, 0)]}
    return out


def e1_vs_homology_words(E, R, L):
    """dim E_1 of the length filtration vs the count of Hochschild words on H_*(E), per length."""
    words, D, t, kk = ainf_cutoff_complex(E, L)
    C = ChainComplex(words, D)
    FC = FilteredComplex(C, kk)
    e1 = _page(FC, 1)
    e1_by_k = {}
    for (p, _), n in e1.items():
        e1_by_k[p] = e1_by_k.get(p, 0) + n
    # words in the homology algebra
    ends = {}
    for c in R.classes:
        rep = R.iota[c]
        ends[c] = (E.left(next(iter(rep))), E.right(next(iter(rep))))
    by_left = {}
    for c in R.classes:
        by_left.setdefault(ends[c][0], []).append(c)
    count = {}
    for x in R.classes:
        for k in range(L + 1):
            n = 0
            stack = [(ends[x][1], 0)]
            while stack:
                at, depth = stack.pop()
                if depth == k:
                    n += at == ends[x][0]
                    continue
                for c in by_left.get(at, []):
                    stack.append((ends[c][1], depth + 1))
            count[k] = count.get(k, 0) + n
    return e1_by_k, count


# -- reports --------------------------------------------------------------------

def report(dims, exact=True, cutoff=None):
    """The JSON report shape: degrees as (t, q, dim) triples."""
    return {"degrees": [{"t": t, "q": q, "dim": n} for (t, q), n in sorted(dims.items())],
            "exact": exact, "cutoff": cutoff}


def report_json(dims, exact=True, cutoff=None):
    return json.dumps(report(dims, exact, cutoff), sort_keys=True)
