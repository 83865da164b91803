"""Linear pointed matched circles and the weight-0 strands algebras.

A primitive strand diagram is a sorted tuple of (start, end) pairs with
end >= start.  An algebra element is a frozenset of primitives.  The exported
generators are the symmetrized sums a(rho): one term for every way of adding
horizontal strands on the unoccupied matched pairs.

Internally the algebra is split further by idempotent: a *basis key* is
``(nchords, chords, left_idem)``, which fixes the moving strands and the set
of matched pairs carrying horizontal strands.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .gf2 import ZERO


@dataclass(frozen=True)
class Pmc:
    k: int
    match: tuple          # match[i-1] = pair index (1-based) of point i
    pairs: tuple          # pairs[m-1] = (lo, hi)

    @property
    def npoints(self):
        return 4 * self.k

    def M(self, i):
        return self.match[i - 1]


def linear_pmc(k: int) -> Pmc:
    if k < 1:
        raise ValueError("genus must be at least 1")
    n = 4 * k
    raw = [(1, 3), (n - 2, n)] + [(2 * m, 2 * m + 3) for m in range(1, 2 * k - 1)]
    if k == 1:
        raw = [(1, 3), (2, 4)]
    raw = sorted(raw)
    match = [0] * n
    for idx, (a, b) in enumerate(raw, 1):
        match[a - 1] = idx
        match[b - 1] = idx
    assert all(match)
    return Pmc(k, tuple(match), tuple(raw))


def inversions(prim):
    n = 0
    for (s1, t1), (s2, t2) in itertools.combinations(prim, 2):
        if (s1 - s2) * (t1 - t2) < 0:
            n += 1
    return n


def prim_mul(a, b):
    """Product of primitives (a then b), or None."""
    if {t for _, t in a} != {s for s, _ in b}:
        return None
    fb = dict(b)
    c = tuple(sorted((s, fb[t]) for s, t in a))
    if inversions(c) != inversions(a) + inversions(b):
        return None
    return c


def prim_d(a):
    out = set()
    inv = inversions(a)
    lst = list(a)
    for i, j in itertools.combinations(range(len(lst)), 2):
        (s1, t1), (s2, t2) = lst[i], lst[j]
        if (s1 - s2) * (t1 - t2) < 0:
            new = lst[:]
            new[i] = (s1, t2)
            new[j] = (s2, t1)
            c = tuple(sorted(new))
            if inversions(c) == inv - 1:
                out ^= {c}
    return out


class StrandsAlgebra:
    """A(Z, 0) with basis keys refined by idempotent."""

    def __init__(self, Z: Pmc):
        self.Z = Z
        self.idems = list(itertools.combinations(range(1, 2 * Z.k + 1), Z.k))
        self.idem_index = {s: i for i, s in enumerate(self.idems)}
        self._keys = None
        self._mul = {}
        self._d = {}
        self._block = {}

    # -- keys and primitives
    def key_of(self, prim):
        M = self.Z.M
        chords = tuple((s, t) for s, t in prim if t != s)
        left = tuple(sorted(M(s) for s, _ in prim))
        return (len(chords), chords, self.idem_index[left])

    def left(self, key):
        return key[2]

    def right(self, key):
        M = self.Z.M
        occ = set(self.idems[key[2]]) - {M(s) for s, _ in key[1]}
        occ |= {M(t) for _, t in key[1]}
        return self.idem_index[tuple(sorted(occ))]

    @lru_cache(maxsize=None)
    def prims(self, key):
        """Primitive diagrams summed in a basis key."""
        M = self.Z.M
        _, chords, li = key
        moving = {M(s) for s, _ in chords}
        hpairs = [m for m in self.idems[li] if m not in moving]
        out = []
        for pts in itertools.product(*(self.Z.pairs[m - 1] for m in hpairs)):
            out.append(tuple(sorted(list(chords) + [(p, p) for p in pts])))
        return frozenset(out)

    def valid_key(self, chords, li):
        """Whether (chords, left idempotent) is a basis element."""
        M = self.Z.M
        occ = set(self.idems[li])
        starts = [M(s) for s, _ in chords]
        ends = [M(t) for _, t in chords]
        if len(set(starts)) != len(starts) or len(set(ends)) != len(ends):
            return False
        if not set(starts) <= occ:
            return False
        if any(t <= s for s, t in chords):
            return False
        if len({s for s, _ in chords}) != len(chords) or len({t for _, t in chords}) != len(chords):
            return False
        h = occ - set(starts)
        return not (h & set(ends))

    def keys(self):
        """All basis keys, ordered by (#chords, chord list, left idempotent)."""
        if self._keys is None:
            n = self.Z.npoints
            out = []
            for li, occ in enumerate(self.idems):
                for r in range(0, self.Z.k + 1):
                    for S in itertools.combinations(range(1, n + 1), r):
                        if {self.Z.M(s) for s in S} - set(occ) or len({self.Z.M(s) for s in S}) < r:
                            continue
                        for T in itertools.permutations(range(1, n + 1), r):
                            chords = tuple(zip(S, T))
                            if self.valid_key(chords, li):
                                out.append((r, chords, li))
            self._keys = sorted(set(out))
        return self._keys

    def block(self, li, ri):
        """Keys with the given left and right idempotent (generated directly)."""
        kk = (li, ri)
        if kk not in self._block:
            M = self.Z.M
            A, B = self.idems[li], self.idems[ri]
            found = set()
            for spts in itertools.product(*(self.Z.pairs[m - 1] for m in A)):
                for tpts in itertools.product(*(self.Z.pairs[m - 1] for m in B)):
                    for perm in itertools.permutations(tpts):
                        prim = tuple(sorted(zip(spts, perm)))
                        if all(t >= s for s, t in prim):
                            found.add(self.key_of(prim))
            self._block[kk] = sorted(k for k in found if self.valid_key(k[1], k[2]))
        return self._block[kk]

    def idem_key(self, li):
        return (0, (), li)

    # -- elements
    def expand(self, keys):
        out = set()
        for k in keys:
            out ^= self.prims(k)
        return frozenset(out)

    def collect(self, prims):
        """Rewrite a set of primitives in basis keys; raises if not symmetric."""
        groups = {}
        for p in prims:
            groups.setdefault(self.key_of(p), set()).add(p)
        out = set()
        for k, ps in groups.items():
            if frozenset(ps) != self.prims(k):
                raise ValueError(f"element is not matching-symmetric at {k}")
            out.add(k)
        return frozenset(out)

    def mul(self, k1, k2):
        kk = (k1, k2)
        r = self._mul.get(kk)
        if r is None:
            if self.right(k1) != self.left(k2):
                r = ZERO
            else:
                acc = set()
                for a in self.prims(k1):
                    for b in self.prims(k2):
                        c = prim_mul(a, b)
                        if c is not None:
                            acc ^= {c}
                r = self.collect(acc)
            self._mul[kk] = r
        return r

    def d(self, k):
        r = self._d.get(k)
        if r is None:
            acc = set()
            for a in self.prims(k):
                acc ^= prim_d(a)
            r = self.collect(acc)
            self._d[k] = r
        return r

    def mulv(self, u, v):
        out = set()
        for a in u:
            for b in v:
                out ^= self.mul(a, b)
        return frozenset(out)

    def dv(self, u):
        out = set()
        for a in u:
            out ^= self.d(a)
        return frozenset(out)

    def unit(self):
        return frozenset(self.idem_key(i) for i in range(len(self.idems)))

    def chord_elem(self, chords, left=None, right=None):
        """a(rho) in basis keys, optionally cut down by idempotents (given as indices)."""
        chords = tuple(sorted(tuple(c) for c in chords))
        out = set()
        for li in range(len(self.idems)):
            if left is not None and li != left:
                continue
            if self.valid_key(chords, li):
                k = (len(chords), chords, li)
                if right is None or self.right(k) == right:
                    out.add(k)
        return frozenset(out)

    def fmt(self, key):
        _, chords, li = key
        if not chords:
            return "idem {" + ",".join(map(str, self.idems[li])) + "}"
        return (f"chords [{', '.join(f'({s},{t})' for s, t in chords)}] "
                f"left ι{li} right ι{self.right(key)}")


@lru_cache(maxsize=None)
def strands_algebra(k: int) -> StrandsAlgebra:
    return StrandsAlgebra(linear_pmc(k))


@dataclass(frozen=True)
class Generator:
    """An exported generator: idempotent, or a(rho) summed over idempotents."""
    chords: tuple
    keys: frozenset


def weight0_basis(Z: Pmc):
    """Idempotents, then one a(rho) per chord set, by number of chords.

    This is the census of generators; the refined basis by idempotent is
    ``StrandsAlgebra.keys``.
    """
    A = StrandsAlgebra(Z)
    out = [Generator((), frozenset([A.idem_key(i)])) for i in range(len(A.idems))]
    by_chords = {}
    for key in A.keys():
        if key[0]:
            by_chords.setdefault(key[1], set()).add(key)
    for chords in sorted(by_chords, key=lambda c: (len(c), c)):
        out.append(Generator(chords, frozenset(by_chords[chords])))
    return out


# genus-1 aliases
TORUS = {
    "rho1": ((1, 2),), "rho2": ((2, 3),), "rho3": ((3, 4),),
    "rho12": ((1, 3),), "rho23": ((2, 4),), "rho123": ((1, 4),),
}


def torus(name):
    return strands_algebra(1).chord_elem(TORUS[name])


def dump(A: StrandsAlgebra):
    return [A.fmt(k) for k in A.keys()]
