"""Khovanov side: crossingless matchings, arc algebras H_n, tangle cubes, Kh of links.

Every diagram (a closure a^! T_v b, or an arc-algebra element) is a graph
whose edges are named segments and whose vertices all have degree 2; its
circles are the connected components.  A circle is named by its smallest
segment, and a generator of V^{⊗circles} by the frozenset of circles
labelled x.  Saddles act on such states by the Frobenius algebra V.

Slice words are read left to right.  Column s has w_s points numbered from 1;
``cup(i)`` creates the pair (i, i+1) of the next column, ``cap(i)`` closes the
pair (i, i+1) of the previous one, and ``x(i)`` / ``X(i)`` cross strands i and
i+1.  Both resolutions of a crossing are either the identity (braid-like) or
the turnback; x(i) has the identity as its 0-resolution, X(i) the turnback.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from networkx.utils import UnionFind

from .gf2 import ChainComplex, Echelon, homology_dims


# -- matchings --------------------------------------------------------------

@dataclass(frozen=True)
class Matching:
    n: int
    pairs: tuple          # sorted (i, j), i < j, points 1..2n

    def a(self, i):
        for k, (p, q) in enumerate(self.pairs, 1):
            if i in (p, q):
                return k
        raise ValueError(i)

    def crossingless(self):
        return is_crossingless(self.pairs)


def is_crossingless(pairs):
    for (i, k) in pairs:
        for (j, l) in pairs:
            if i < j < k < l:
                return False
    return True


def _match(points):
    if not points:
        return [()]
    first, out = points[0], []
    for k in range(1, len(points), 2):
        inner, outer = points[1:k], points[k + 1:]
        for m1 in _match(inner):
            for m2 in _match(outer):
                out.append(((first, points[k]),) + m1 + m2)
    return out


@lru_cache(maxsize=None)
def enumerate_matchings(n):
    """Crossingless matchings of 2n points, plat closure {1,2},{3,4},... first."""
    if n < 0:
        raise ValueError("n >= 0")
    return [Matching(n, tuple(sorted(m))) for m in _match(tuple(range(1, 2 * n + 1)))]


def letter(i):
    return "abcdefghijklmnopqrstuvwxyz"[i]


# -- diagrams and saddles -----------------------------------------------------

class Diagram:
    """Segments name -> (u, v); circles are the connected components."""

    def __init__(self, edges):
        self.edges = dict(edges)
        uf = UnionFind()
        for u, v in self.edges.values():
            uf.union(u, v)
        comp = {}
        for name, (u, _) in self.edges.items():
            comp.setdefault(uf[u], []).append(name)
        self.rep = {}
        self.circles = []
        for names in comp.values():
            r = min(names)
            self.circles.append(r)
            for nm in names:
                self.rep[nm] = r
        self.circles.sort()
        self.members = {}
        for nm, r in self.rep.items():
            self.members.setdefault(r, []).append(nm)

    def states(self):
        cs = self.circles
        for bits_ in product((0, 1), repeat=len(cs)):
            yield frozenset(c for c, b in zip(cs, bits_) if b)


def saddle(D: Diagram, vec, remove, add):
    """Apply one saddle: drop segments ``remove``, insert ``add`` (name -> ends)."""
    e1, e2 = remove
    edges = {k: v for k, v in D.edges.items() if k not in remove}
    edges.update(add)
    D2 = Diagram(edges)
    n1, n2 = list(add)
    c1, c2 = D.rep[e1], D.rep[e2]
    out = set()
    for s in vec:
        rest = frozenset(D2.rep[r] for r in s if r not in (c1, c2))
        if c1 != c2:
            new = D2.rep[n1]
            xa, xb = c1 in s, c2 in s
            if xa and xb:
                continue
            out ^= {rest | {new}} if (xa or xb) else {rest}
        else:
            a, b = D2.rep[n1], D2.rep[n2]
            if a == b:
                raise ValueError("non-orientable saddle")
            if c1 in s:
                out ^= {rest | {a, b}}
            else:
                out ^= {rest | {a}}
                out ^= {rest | {b}}
    return D2, frozenset(out)


def _tag(tag, edges):
    return {(tag, k): ((tag, u), (tag, v)) for k, (u, v) in edges.items()}


def glue(D1, st1, D2, st2, mid, target: Diagram, rename):
    """Stack D1 (right closure arcs B) against D2 (left closure arcs A) along ``mid``.

    One saddle per arc of the middle matching, bottom to top.  ``rename`` maps
    tagged segment names of the glued diagram to segments of ``target``
    (None for segments that do not persist).  Returns a vector of target states.
    """
    edges = _tag("1", D1.edges)
    edges.update(_tag("2", D2.edges))
    D = Diagram(edges)
    vec = {frozenset({D.rep[("1", r)] for r in st1} | {D.rep[("2", r)] for r in st2})}
    for p, q in mid:
        remove = (("1", ("B", p, q)), ("2", ("A", p, q)))
        add = {("M", (p,)): (("1", ("R", p)), ("2", ("L", p))),
               ("M", (q,)): (("1", ("R", q)), ("2", ("L", q)))}
        D, vec = saddle(D, vec, remove, add)
    # each circle of D holds a persistent segment; read off its target circle
    tr = {}
    for r, names in D.members.items():
        for nm in names:
            t = rename(nm)
            if t is not None:
                tr[r] = target.rep[t]
                break
        else:
            raise ValueError("circle with no persistent segment")
    if len(set(tr.values())) != len(tr):
        raise ValueError("glued diagram does not match the target")
    return frozenset(frozenset(tr[r] for r in s) for s in vec)


# -- tangle words ---------------------------------------------------------------

class TangleParseError(ValueError):
    def __init__(self, msg, index=None):
        super().__init__(msg)
        self.index = index


_SLICE = re.compile(r"^(cap|cup|x|X)\((\d+)\)$")


@dataclass(frozen=True)
class TangleWord:
    slices: tuple          # (kind, i)
    widths: tuple          # w_0 .. w_S

    @property
    def m(self):
        return self.widths[0] // 2

    @property
    def n(self):
        return self.widths[-1] // 2

    def crossings(self):
        return [s for s, (k, _) in enumerate(self.slices, 1) if k in ("x", "X")]

    def __str__(self):
        return " ".join(f"{k}({i})" for k, i in self.slices)


def _widths(slices, w0):
    ws = [w0]
    for idx, (k, i) in enumerate(slices, 1):
        w = ws[-1]
        if k == "cup":
            if not 1 <= i <= w + 1:
                raise TangleParseError(f"slice {idx}: cup({i}) out of range for width {w}", idx)
            ws.append(w + 2)
        else:
            if not (1 <= i and i + 1 <= w):
                raise TangleParseError(f"slice {idx}: {k}({i}) out of range for width {w}", idx)
            ws.append(w - 2 if k == "cap" else w)
    return ws


def parse_word(text, width=None) -> TangleWord:
    """Parse a whitespace-separated slice word; the left width defaults to the least that works."""
    slices = []
    for idx, tok in enumerate(text.split(), 1):
        m = _SLICE.match(tok)
        if not m:
            raise TangleParseError(f"slice {idx}: cannot parse {tok!r}", idx)
        slices.append((m.group(1), int(m.group(2))))
    if width is not None:
        if width % 2:
            raise TangleParseError("width must be even")
        return TangleWord(tuple(slices), tuple(_widths(slices, width)))
    need = 0
    for k, i in slices:
        need = max(need, i + 1 if k != "cup" else 0)
    last = None
    for w0 in range(0, need + 3, 2):
        try:
            return TangleWord(tuple(slices), tuple(_widths(slices, w0)))
        except TangleParseError as e:
            last = e
    raise last


def identity_word(n):
    return TangleWord((), (2 * n,))


def tangle_edges(T: TangleWord, v):
    """Segments of the resolved tangle; v[j] is the resolution of the j-th crossing."""
    edges = {}
    cidx = 0
    for s, (k, i) in enumerate(T.slices, 1):
        w = T.widths[s - 1]
        L = lambda p: ("v", s - 1, p)
        R = lambda p: ("v", s, p)
        if k == "cup":
            edges[("u", s)] = (R(i), R(i + 1))
            for p in range(1, w + 1):
                edges[("s", s, p)] = (L(p), R(p if p < i else p + 2))
        elif k == "cap":
            edges[("k", s)] = (L(i), L(i + 1))
            for p in range(1, w + 1):
                if p not in (i, i + 1):
                    edges[("s", s, p)] = (L(p), R(p if p < i else p - 2))
        else:
            r = v[cidx]
            cidx += 1
            turn = (r == 1) if k == "x" else (r == 0)
            if turn:
                edges[("x", s, 0)] = (L(i), L(i + 1))
                edges[("x", s, 1)] = (R(i), R(i + 1))
            else:
                edges[("x", s, 0)] = (L(i), R(i))
                edges[("x", s, 1)] = (L(i + 1), R(i + 1))
            for p in range(1, w + 1):
                if p not in (i, i + 1):
                    edges[("s", s, p)] = (L(p), R(p))
    return edges


def closure_edges(T: TangleWord, a: Matching | None, b: Matching | None, trace=False):
    S = len(T.slices)
    edges = {}
    if trace:
        for p in range(1, T.widths[0] + 1):
            edges[("t", p)] = (("v", S, p), ("v", 0, p))
        return edges
    for p in range(1, T.widths[0] + 1):
        edges[("l", p)] = (("L", p), ("v", 0, p))
    for p in range(1, T.widths[-1] + 1):
        edges[("r", p)] = (("v", S, p), ("R", p))
    if a is not None:
        for p, q in a.pairs:
            edges[("A", p, q)] = (("L", p), ("L", q))
    if b is not None:
        for p, q in b.pairs:
            edges[("B", p, q)] = (("R", p), ("R", q))
    return edges


def crossing_signs(T: TangleWord):
    """+1/-1 per crossing, from an orientation of the closure (trace if m = n, else plats)."""
    S = len(T.slices)
    edges = {}
    # crossing strands as actual over/under strands: (s-1, i) -> (s, i+1) and (s-1, i+1) -> (s, i)
    cidx = []
    for s, (k, i) in enumerate(T.slices, 1):
        if k in ("x", "X"):
            cidx.append(s)
    base = tangle_edges(T, [0] * len(cidx))
    for s, (k, i) in enumerate(T.slices, 1):
        if k in ("x", "X"):
            base.pop(("x", s, 0))
            base.pop(("x", s, 1))
            base[("c", s, 0)] = (("v", s - 1, i), ("v", s, i + 1))
            base[("c", s, 1)] = (("v", s - 1, i + 1), ("v", s, i))
    edges.update(base)
    if T.m == T.n:
        edges.update(closure_edges(T, None, None, trace=True))
    else:
        plat = lambda n: enumerate_matchings(n)[0]
        edges.update(closure_edges(T, plat(T.m), plat(T.n)))
    # orient components: walk from the smallest left-to-right segment, forward
    adj = {}
    for nm, (u, w) in edges.items():
        adj.setdefault(u, []).append(nm)
        adj.setdefault(w, []).append(nm)
    direction = {}      # segment -> (from, to)
    spans = sorted(nm for nm in edges if nm[0] in ("s", "c"))
    for start in spans:
        if start in direction:
            continue
        u, w = edges[start]          # these run from column s-1 to s
        cur, at = start, w
        direction[cur] = (u, w)
        while True:
            nxt = [e for e in adj[at] if e != cur]
            if not nxt:
                break
            cur = nxt[0]
            if cur in direction:
                break
            a0, b0 = edges[cur]
            frm, to = (a0, b0) if a0 == at else (b0, a0)
            direction[cur] = (frm, to)
            at = to
    signs = []
    for s in cidx:
        k = T.slices[s - 1][0]
        d0 = direction.get(("c", s, 0))
        d1 = direction.get(("c", s, 1))
        fwd = lambda d: d[0][1] == s - 1
        same = fwd(d0) == fwd(d1)
        pos = same if k == "x" else not same
        signs.append(1 if pos else -1)
    return signs


# -- the cube --------------------------------------------------------------------

def _label_circles(D: Diagram, key_points):
    """Circles ordered by their smallest boundary point (for H_n names)."""
    first = {}
    for r, names in D.members.items():
        pts = [nm[1] for nm in names if nm[0] == "l"]
        first[r] = min(pts) if pts else float("inf")
    return sorted(D.circles, key=lambda r: (first[r], r))


class CubeComplex:
    """C_Kh of a slice word.

    closure: "bimodule" (all pairs of crossingless matchings on both ends),
    "trace" (closure of an (n, n) word into a link) or "none" (closed word).
    Generators are (v, ai, bi, state).  d raises h by one.
    """

    def __init__(self, T: TangleWord, closure="bimodule"):
        self.T = T
        self.closure = closure
        self.c = len(T.crossings())
        self.signs = crossing_signs(T) if self.c else []
        self.npos = sum(1 for s in self.signs if s > 0)
        self.nneg = self.c - self.npos
        if closure == "bimodule":
            self.left = enumerate_matchings(T.m)
            self.right = enumerate_matchings(T.n)
            self.qshift = -T.n
        elif closure == "trace":
            if T.m != T.n:
                raise ValueError("trace closure needs an (n, n) word")
            self.left = self.right = [None]
            self.qshift = 0
        else:
            if T.m or T.n:
                raise ValueError("word is not closed")
            self.left = self.right = [None]
            self.qshift = 0
        self._diag = {}
        self.basis = []
        self.hdeg, self.qdeg = {}, {}
        for v in product((0, 1), repeat=self.c):
            for ai in range(len(self.left)):
                for bi in range(len(self.right)):
                    D = self.diagram(v, ai, bi)
                    for st in D.states():
                        g = (v, ai, bi, st)
                        self.basis.append(g)
                        nv = sum(v)
                        self.hdeg[g] = nv - self.nneg
                        ncirc = len(D.circles)
                        self.qdeg[g] = (self.qshift + ncirc - 2 * len(st) + nv
                                        + self.npos - 2 * self.nneg)
        self._d = {}

    def diagram(self, v, ai, bi):
        key = (v, ai, bi)
        D = self._diag.get(key)
        if D is None:
            e = tangle_edges(self.T, v)
            if self.closure == "bimodule":
                e.update(closure_edges(self.T, self.left[ai], self.right[bi]))
            elif self.closure == "trace":
                e.update(closure_edges(self.T, None, None, trace=True))
            D = Diagram(e)
            self._diag[key] = D
        return D

    def crossing_edges(self, j, r):
        s = self.T.crossings()[j]
        k, i = self.T.slices[s - 1]
        turn = (r == 1) if k == "x" else (r == 0)
        L = lambda p: ("v", s - 1, p)
        R = lambda p: ("v", s, p)
        if turn:
            return {("x", s, 0): (L(i), L(i + 1)), ("x", s, 1): (R(i), R(i + 1))}
        return {("x", s, 0): (L(i), R(i)), ("x", s, 1): (L(i + 1), R(i + 1))}

    def d(self, g):
        r = self._d.get(g)
        if r is not None:
            return r
        v, ai, bi, st = g
        out = set()
        for j in range(self.c):
            if v[j]:
                continue
            D = self.diagram(v, ai, bi)
            new = self.crossing_edges(j, 1)
            D2, vec = saddle(D, [st], tuple(new), new)
            v2 = v[:j] + (1,) + v[j + 1:]
            tgt = self.diagram(v2, ai, bi)
            assert set(D2.edges) == set(tgt.edges)
            for s2 in vec:
                out ^= {(v2, ai, bi, s2)}
        r = frozenset(out)
        self._d[g] = r
        return r

    def complex(self):
        return ChainComplex(self.basis, {g: self.d(g) for g in self.basis}, self.hdeg, step=1)

    def homology(self):
        return bigraded_homology(self.basis, self.d, self.hdeg, self.qdeg)

    # actions of the arc algebras on the two ends
    def act_left(self, H: "ArcAlgebra", x, g):
        """x = (ci, ai, state) in H_m acting on g = (v, ai, bi, st)."""
        ci, ai2, sx = x
        v, ai, bi, st = g
        if ai2 != ai:
            return frozenset()
        D1 = H.diagram(ci, ai)
        D2 = self.diagram(v, ai, bi)
        tgt = self.diagram(v, ci, bi)

        def rename(nm):
            tag, name = nm
            if tag == "1" and name[0] == "l":
                return name
            if tag == "2" and name[0] not in ("A", "l"):
                return name
            return None
        vec = glue(D1, sx, D2, st, self.left[ai].pairs, tgt, rename)
        return frozenset((v, ci, bi, s) for s in vec)

    def act_right(self, H: "ArcAlgebra", g, y):
        """g = (v, ai, bi, st) times y = (bi, di, state) in H_n."""
        bi2, di, sy = y
        v, ai, bi, st = g
        if bi2 != bi:
            return frozenset()
        D1 = self.diagram(v, ai, bi)
        D2 = H.diagram(bi, di)
        tgt = self.diagram(v, ai, di)

        def rename(nm):
            tag, name = nm
            if tag == "1" and name[0] not in ("B", "r"):
                return name
            if tag == "2" and name[0] == "r":
                return name
            return None
        vec = glue(D1, st, D2, sy, self.right[bi].pairs, tgt, rename)
        return frozenset((v, ai, di, s) for s in vec)


def bigraded_homology(basis, d, hdeg, qdeg):
    """{(h, q): dim} for a complex with d raising h and preserving q."""
    byq = {}
    for g in basis:
        byq.setdefault(qdeg[g], []).append(g)
    out = {}
    for q, gs in sorted(byq.items()):
        C = ChainComplex(gs, {g: d(g) for g in gs}, {g: hdeg[g] for g in gs}, step=1)
        for h, n in homology_dims(C).items():
            if n:
                out[(h, q)] = n
    return out


# -- arc algebras ------------------------------------------------------------------

class ArcAlgebra:
    """H_n.  Basis keys (ai, bi, state); q-degree in Khovanov's convention (shift -n)."""

    def __init__(self, n):
        if n < 0:
            raise ValueError("n >= 0")
        self.n = n
        self.cube = CubeComplex(identity_word(n))
        self.match = self.cube.left
        self.basis = [(ai, bi, st) for (_, ai, bi, st) in self.cube.basis]
        self.q = {(ai, bi, st): self.cube.qdeg[((), ai, bi, st)] for (ai, bi, st) in self.basis}
        self._mul = {}
        self._names = {}
        for k in self.basis:
            self._names[k] = self._name(k)
        self._by_name = {v: k for k, v in self._names.items()}

    def diagram(self, ai, bi):
        return self.cube.diagram((), ai, bi)

    def left(self, k):
        return k[0]

    def right(self, k):
        return k[1]

    def mul(self, x, y):
        kk = (x, y)
        r = self._mul.get(kk)
        if r is None:
            if x[1] != y[0]:
                r = frozenset()
            else:
                g = ((), x[0], x[1], x[2])
                r = frozenset((a, b, s) for (_, a, b, s) in self.cube.act_right(self, g, y))
            self._mul[kk] = r
        return r

    def mulv(self, u, v):
        out = set()
        for a in u:
            for b in v:
                out ^= self.mul(a, b)
        return frozenset(out)

    def unit(self):
        return frozenset((ai, ai, frozenset()) for ai in range(len(self.match)))

    def idem(self, ai):
        return (ai, ai, frozenset())

    def d(self, k):
        return frozenset()

    def block(self, li, ri):
        return [k for k in self.basis if k[0] == li and k[1] == ri]

    # names like "ab-1x": matchings by letter, then circle labels by smallest point
    def _name(self, k):
        ai, bi, st = k
        D = self.diagram(ai, bi)
        order = _label_circles(D, None)
        return f"{letter(ai)}{letter(bi)}-" + "".join("x" if c in st else "1" for c in order)

    def name(self, k):
        return self._names[k]

    def parse(self, expr):
        out = set()
        for t in expr.split("+"):
            out ^= {self._by_name[t.strip()]}
        return frozenset(out)

    def express(self, v, names):
        """Write v in the basis given by ``names`` (each a '+'-sum); returns the list used."""
        idx = {k: i for i, k in enumerate(self.basis)}
        pack = lambda w: sum(1 << idx[k] for k in w)
        piv = {}
        for j, nm in enumerate(names):
            r, comb = pack(self.parse(nm)), 1 << j
            while r:
                low = r & -r
                if low not in piv:
                    piv[low] = (r, comb)
                    break
                r ^= piv[low][0]
                comb ^= piv[low][1]
        t, comb = pack(v), 0
        while t:
            low = t & -t
            if low not in piv:
                raise ValueError("not in the span")
            t ^= piv[low][0]
            comb ^= piv[low][1]
        return [names[j] for j in range(len(names)) if comb >> j & 1]

    def check(self):
        """Associativity and unit over all basis triples; returns a failure or None."""
        u = self.unit()
        for x in self.basis:
            if self.mulv(u, [x]) != {x} or self.mulv([x], u) != {x}:
                return ("unit", x)
        for x in self.basis:
            for y in self.basis:
                if x[1] != y[0]:
                    continue
                xy = self.mul(x, y)
                for z in self.basis:
                    if y[1] != z[0]:
                        continue
                    if self.mulv(xy, [z]) != self.mulv([x], self.mul(y, z)):
                        return ("assoc", x, y, z)
                    if any(self.q[w] != self.q[x] + self.q[y] + self.q[z] for w in self.mulv(xy, [z])):
                        return ("grading", x, y, z)
        return None


@lru_cache(maxsize=None)
def arc_algebra(n) -> ArcAlgebra:
    return ArcAlgebra(n)


def close_config(a: Matching, b: Matching):
    """Circles of a^! b, each as its sorted list of boundary points."""
    if a.n != b.n:
        raise ValueError("matchings on different point counts")
    uf = UnionFind()
    for p in range(1, 2 * a.n + 1):
        uf[p]
    for p, q in a.pairs + b.pairs:
        uf.union(p, q)
    return sorted(sorted(s) for s in uf.to_sets())


# -- Frobenius algebra ------------------------------------------------------------

class FrobeniusV:
    """V = F[x]/(x^2), basis '1', 'x'; q(1) = 1, q(x) = -1."""
    basis = ("1", "x")
    q = {"1": 1, "x": -1}

    @staticmethod
    def mul(a, b):
        if a == "1":
            return {b}
        if b == "1":
            return {a}
        return set()

    @staticmethod
    def comul(a):
        if a == "1":
            return {("1", "x"), ("x", "1")}
        return {("x", "x")}

    @staticmethod
    def unit():
        return "1"

    @staticmethod
    def counit(a):
        return 1 if a == "x" else 0


# -- link homology ------------------------------------------------------------------

def kh_link(T: TangleWord | str):
    """Bigraded Kh of a closed word, or of the trace closure of an (n, n) word."""
    if isinstance(T, str):
        T = parse_word(T)
    if T.m == 0 and T.n == 0:
        C = CubeComplex(T, closure="none")
    elif T.m == T.n:
        C = CubeComplex(T, closure="trace")
    else:
        raise ValueError("open tangle: needs m = n (trace closure) or m = n = 0")
    return C.homology()


def qpoly(dims):
    """Graded Euler characteristic as {q: coefficient}."""
    out = {}
    for (h, q), n in dims.items():
        out[q] = out.get(q, 0) + (-1) ** h * n
    return {q: c for q, c in sorted(out.items()) if c}


def kh_brute(T: TangleWord):
    """Independent Kh by direct state sums over the closed diagram (dense, small only).

    Circles are counted with union-find on the resolved segments and each edge
    map is the merge/split rule on explicit labellings.
    """
    signs = crossing_signs(T) if T.crossings() else []
    c = len(signs)
    npos = sum(1 for s in signs if s > 0)
    nneg = c - npos
    trace = T.m > 0

    def circles(v):
        e = tangle_edges(T, v)
        if trace:
            e.update(closure_edges(T, None, None, trace=True))
        uf = UnionFind()
        for u, w in e.values():
            uf.union(u, w)
        comps = {}
        for nm, (u, _) in e.items():
            comps.setdefault(uf[u], set()).add(nm)
        return [frozenset(s) for s in comps.values()]

    gens, hd, qd = [], {}, {}
    circ = {}
    for v in product((0, 1), repeat=c):
        cs = circles(v)
        circ[v] = cs
        for lab in product("1x", repeat=len(cs)):
            g = (v, tuple(zip(cs, lab)))
            gens.append(g)
            hd[g] = sum(v) - nneg
            qd[g] = lab.count("1") - lab.count("x") + sum(v) + npos - 2 * nneg
    index = set(gens)
    d = {}
    for g in gens:
        v, lab = g
        out = set()
        lab = dict(lab)
        for j in range(c):
            if v[j]:
                continue
            v2 = v[:j] + (1,) + v[j + 1:]
            old, new = circ[v], circ[v2]
            s = T.crossings()[j]
            keep = [C for C in old if C & {("x", s, 0), ("x", s, 1)} == set()]
            gone = [C for C in old if C not in keep]
            born = [C for C in new if C not in keep]
            base = {C: lab[C] for C in keep}
            if len(gone) == 2 and len(born) == 1:
                a, b = lab[gone[0]], lab[gone[1]]
                for r in FrobeniusV.mul(a, b):
                    t = dict(base)
                    t[born[0]] = r
                    out ^= {(v2, tuple((C, t[C]) for C in new))}
            elif len(gone) == 1 and len(born) == 2:
                for r1, r2 in FrobeniusV.comul(lab[gone[0]]):
                    t = dict(base)
                    t[born[0]], t[born[1]] = r1, r2
                    out ^= {(v2, tuple((C, t[C]) for C in new))}
            else:
                raise ValueError("saddle neither merges nor splits")
        assert out <= index
        d[g] = out
    return bigraded_homology(gens, d.__getitem__, hd, qd)
