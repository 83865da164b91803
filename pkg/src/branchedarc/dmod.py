"""Type-D structures, morphism complexes and endomorphism dg-algebras.

An algebra here is anything with ``left(k)``, ``right(k)``, ``mul(k1, k2)``,
``d(k)`` and ``block(li, ri)`` on hashable, sortable basis keys; both
``StrandsAlgebra`` and the small ``TableAlgebra`` below qualify.

A basic morphism [x -> a y] is stored as the triple (x, a, y).  Only mu_1 and
mu_2 of the algebra ever enter; the algebras used here have no higher
products.
"""
from __future__ import annotations

import ast
from dataclasses import dataclass, field

import networkx as nx

from .gf2 import ZERO, ChainComplex, vadd
from .strands import strands_algebra


class TableAlgebra:
    """Finite dg-algebra given by tables.  Keys are strings; one block per idempotent pair."""

    def __init__(self, keys, idems, ends, table, diff=None):
        self.order = list(keys)
        self.idems = list(idems)
        self._ends = dict(ends)          # key -> (left, right)
        self.table = {kk: frozenset(v) for kk, v in table.items()}
        self.diff = {k: frozenset(v) for k, v in (diff or {}).items()}

    def keys(self):
        return self.order

    def left(self, k):
        return self._ends[k][0]

    def right(self, k):
        return self._ends[k][1]

    def mul(self, a, b):
        return self.table.get((a, b), ZERO)

    def d(self, k):
        return self.diff.get(k, ZERO)

    def block(self, li, ri):
        return [k for k in self.order if self._ends[k] == (li, ri)]

    def idem_key(self, i):
        return self.idems[i]


def dual_numbers():
    """F[a]/(a^2) with zero differential."""
    return TableAlgebra(["1", "a"], ["1"], {"1": (0, 0), "a": (0, 0)},
                        {("1", "1"): {"1"}, ("1", "a"): {"a"}, ("a", "1"): {"a"}})


@dataclass
class TypeD:
    alg: object
    gens: list                      # generator names, ordered
    idem: dict                      # name -> idempotent index
    delta: dict = field(default_factory=dict)   # name -> frozenset of (key, name)
    name: str = ""

    def __post_init__(self):
        self.delta = {x: frozenset(self.delta.get(x, ())) for x in self.gens}

    def edges(self):
        """Edges of the structure graph: (src, dst) -> set of keys."""
        out = {}
        for x in self.gens:
            for a, y in self.delta[x]:
                out.setdefault((x, y), set()).symmetric_difference_update({a})
        return out

    def incoming(self, y):
        return [(a, x) for x in self.gens for a, z in self.delta[x] if z == y]


def _tensor_add(acc, a, y):
    acc.symmetric_difference_update({(a, y)})


def check_typed(N: TypeD):
    """(mu_1 ⊗ id) δ¹ + (mu_2 ⊗ id)(id ⊗ δ¹) δ¹ = 0, generator by generator.

    Returns (ok, witness generator, offending terms).
    """
    A = N.alg
    for x in N.gens:
        for a, y in N.delta[x]:
            if A.left(a) != N.idem[x] or A.right(a) != N.idem[y]:
                return False, x, {(a, y)}
    for x in N.gens:
        acc = set()
        for a, y in N.delta[x]:
            for c in A.d(a):
                _tensor_add(acc, c, y)
            for b, z in N.delta[y]:
                for c in A.mul(a, b):
                    _tensor_add(acc, c, z)
        if acc:
            return False, x, acc
    return True, None, set()


def delta_k(N: TypeD, k: int):
    """δ^k as a dict gen -> set of (tuple of keys, gen)."""
    if k < 1:
        raise ValueError("k >= 1")
    cur = {x: {((a,), y) for a, y in N.delta[x]} for x in N.gens}
    for _ in range(k - 1):
        nxt = {}
        for x, terms in cur.items():
            acc = set()
            for word, y in terms:
                for b, z in N.delta[y]:
                    acc ^= {(word + (b,), z)}
            nxt[x] = acc
        cur = nxt
    return cur


def is_bounded(N: TypeD):
    """(bounded?, cycle witness).  A directed cycle of nonzero labels means unbounded."""
    G = nx.DiGraph()
    G.add_nodes_from(N.gens)
    for (x, y), labels in N.edges().items():
        if labels:
            G.add_edge(x, y)
    try:
        cyc = nx.find_cycle(G)
    except nx.NetworkXNoCycle:
        return True, None
    return False, [e[0] for e in cyc]


# -- morphisms ------------------------------------------------------------

def _key_order(A):
    if hasattr(A, "order"):
        pos = {k: i for i, k in enumerate(A.order)}
        return pos.__getitem__
    return lambda k: k


class MorSpace:
    """Mor(N1, N2) with the basic-morphism basis."""

    def __init__(self, N1: TypeD, N2: TypeD, tag1=None, tag2=None):
        if N1.alg is not N2.alg:
            raise ValueError("type-D structures over different algebras")
        self.N1, self.N2 = N1, N2
        A = N1.alg
        ko = _key_order(A)
        basis = []
        for x in N1.gens:
            for y in N2.gens:
                for a in sorted(A.block(N1.idem[x], N2.idem[y]), key=ko):
                    basis.append((x, a, y))
        self.basis = basis

    def d_basic(self, f):
        """∂[x -> a y]: incoming edge then f, f then outgoing edge, plus [x -> ∂a y]."""
        A = self.N1.alg
        x, a, y = f
        acc = set()
        for c, w in self.N1.incoming(x):
            for e in A.mul(c, a):
                acc ^= {(w, e, y)}
        for c, u in self.N2.delta[y]:
            for e in A.mul(a, c):
                acc ^= {(x, e, u)}
        for e in A.d(a):
            acc ^= {(x, e, y)}
        return frozenset(acc)

    def complex(self):
        return ChainComplex(self.basis, {f: self.d_basic(f) for f in self.basis})


def mor_complex(N1: TypeD, N2: TypeD) -> ChainComplex:
    return MorSpace(N1, N2).complex()


def compose2(A, f, g):
    """∘₂(f, g): f first, then g.  Vectors of basic morphisms."""
    acc = set()
    for x, a, y in f:
        for y2, b, z in g:
            if y == y2:
                for e in A.mul(a, b):
                    acc ^= {(x, e, z)}
    return frozenset(acc)


def identity(N: TypeD):
    A = N.alg
    return frozenset((x, A.idem_key(N.idem[x]), x) for x in N.gens)


class DgaError(ValueError):
    pass


class EndDga:
    """End of a direct sum of type-D structures.

    Basis elements are (x, a, y) with x, y tagged generator names (i, name).
    ``mul(f, g)`` is ∘₂(f, g).  Blocks are indexed by summand: Mor(i, j).
    """

    def __init__(self, Ns, check=True):
        A = Ns[0].alg
        for N in Ns:
            if N.alg is not A:
                raise ValueError("summands over different algebras")
            if check:
                ok, x, _ = check_typed(N)
                if not ok:
                    raise DgaError(f"{N.name or 'summand'} fails the type-D relation at {x}")
        self.alg = A
        self.Ns = Ns
        gens, idem, delta = [], {}, {}
        for i, N in enumerate(Ns):
            for x in N.gens:
                gens.append((i, x))
                idem[(i, x)] = N.idem[x]
                delta[(i, x)] = {(a, (i, y)) for a, y in N.delta[x]}
        self.total = TypeD(A, gens, idem, delta)
        self.space = MorSpace(self.total, self.total)
        self.basis = self.space.basis
        self.index = {f: n for n, f in enumerate(self.basis)}
        self._d = {f: self.space.d_basic(f) for f in self.basis}
        self._mul = {}

    def block_of(self, f):
        return (f[0][0], f[2][0])

    def left(self, f):
        return f[0][0]

    def right(self, f):
        return f[2][0]

    def blocks(self):
        out = {}
        for f in self.basis:
            out.setdefault(self.block_of(f), []).append(f)
        return out

    def d(self, f):
        return self._d[f]

    def dv(self, v):
        return vadd(*(self._d[f] for f in v)) if v else ZERO

    def mul(self, f, g):
        kk = (f, g)
        r = self._mul.get(kk)
        if r is None:
            r = compose2(self.alg, [f], [g])
            self._mul[kk] = r
        return r

    def mulv(self, u, v):
        acc = set()
        for f in u:
            for g in v:
                acc ^= self.mul(f, g)
        return frozenset(acc)

    def unit(self):
        return identity(self.total)

    def complex(self):
        return ChainComplex(self.basis, self._d)

    def check(self, assoc=True):
        """∂² = 0, Leibniz, associativity, unit; returns first failure or None."""
        for f in self.basis:
            if self.dv(self._d[f]):
                return ("d^2", f)
        for f in self.basis:
            for g in self.basis:
                lhs = self.dv(self.mul(f, g))
                rhs = vadd(self.mulv(self._d[f], [g]), self.mulv([f], self._d[g]))
                if lhs != rhs:
                    return ("Leibniz", f, g)
        u = self.unit()
        for f in self.basis:
            if self.mulv(u, [f]) != {f} or self.mulv([f], u) != {f}:
                return ("unit", f)
        if assoc:
            for f in self.basis:
                for g in self.basis:
                    fg = self.mul(f, g)
                    if not fg and self.right(f) != self.left(g):
                        continue
                    for h in self.basis:
                        if self.mulv(fg, [h]) != self.mulv([f], self.mul(g, h)):
                            return ("assoc", f, g, h)
        return None


def end_dga(Ns, check=True) -> EndDga:
    E = EndDga(Ns, check=check)
    if check:
        bad = E.check(assoc=False)
        if bad:
            raise DgaError(f"End fails {bad[0]} at {bad[1:]}")
    return E


# -- fixture files --------------------------------------------------------

class FixtureError(ValueError):
    pass


def parse_fixture(text: str, name: str = "") -> TypeD:
    """Lines: ``pmc K``, ``gen NAME idem I``, ``edge SRC DST [(i,j),...]``; '#' comments."""
    k = None
    gens, idem, edges = [], {}, []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split(None, 3)
        if parts[0] == "pmc":
            k = int(parts[1])
        elif parts[0] == "gen" and len(parts) == 4 and parts[2] == "idem":
            gens.append(parts[1])
            idem[parts[1]] = int(parts[3])
        elif parts[0] == "edge" and len(parts) == 4:
            try:
                chords = ast.literal_eval(parts[3])
            except (ValueError, SyntaxError) as e:
                raise FixtureError(f"line {lineno}: bad chord list") from e
            edges.append((lineno, parts[1], parts[2], [tuple(c) for c in chords]))
        else:
            raise FixtureError(f"line {lineno}: cannot parse {raw!r}")
    if k is None:
        raise FixtureError("missing pmc line")
    A = strands_algebra(k)
    delta = {x: set() for x in gens}
    for lineno, x, y, chords in edges:
        if x not in idem or y not in idem:
            raise FixtureError(f"line {lineno}: unknown generator")
        lab = A.chord_elem(chords, left=idem[x], right=idem[y])
        if not lab:
            raise FixtureError(f"line {lineno}: label is zero between these idempotents")
        for a in lab:
            delta[x] ^= {(a, y)}
    return TypeD(A, gens, idem, delta, name=name)
