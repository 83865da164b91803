"""Transferred A-infinity operations along a strong deformation retract.

For a dg-algebra A with retract (p, iota, h) onto H = H_*(A) the operations are
sums over planar binary trees: leaves carry iota, internal edges h, every
vertex mu_2 and the root p (for m_n) or h (for q_n).  Summing over trees is the
same as the recursion

    T_1 = iota,   T_n = sum_i mu_2(Q_i, Q_{n-i}),   Q_1 = iota,  Q_k = h T_k,

with m_n = p T_n and q_n = Q_n.  T is memoised on tuples of homology basis
classes, so m_6 on a 12-dimensional homology is cheap.

The algebra needs ``complex()`` and ``mulv(u, v)``; if it also has
``left``/``right`` on basis keys, only composable tuples are enumerated.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .gf2 import ZERO, verify_retract, vadd

ARITY_CAP = 8


class TransferError(ValueError):
    pass


def binary_trees(i):
    """Planar binary trees with i leaves.  A leaf is ``0``; a node is (left, right)."""
    if i < 2:
        raise ValueError("need at least two leaves")
    return _trees(i)


def _trees(i):
    if i == 1:
        return [0]
    out = []
    for j in range(1, i):
        for left in _trees(j):
            for right in _trees(i - j):
                out.append((left, right))
    return out


def tree_leaves(t):
    return 1 if t == 0 else tree_leaves(t[0]) + tree_leaves(t[1])


def _as_vec(x):
    if isinstance(x, (set, frozenset)):
        return frozenset(x)
    return frozenset([x])


class Transfer:
    """Memoised tree sums for one algebra and one retract."""

    def __init__(self, A, R, check=True):
        self.A = A
        self.R = R
        if check:
            ok, name, wit = verify_retract(A.complex(), R)
            if not ok:
                raise TransferError(f"retract fails {name} at {wit!r}")
        self.classes = list(R.classes)
        self._T = {}
        self.ends = None
        if hasattr(A, "left") and hasattr(A, "right"):
            self.ends = {}
            for c in self.classes:
                rep = R.iota[c]
                ls = {A.left(k) for k in rep}
                rs = {A.right(k) for k in rep}
                if len(ls) == 1 and len(rs) == 1:
                    self.ends[c] = (ls.pop(), rs.pop())
                else:
                    self.ends = None
                    break

    # -- on basis tuples
    def T(self, args):
        args = tuple(args)
        r = self._T.get(args)
        if r is not None:
            return r
        n = len(args)
        if n == 1:
            r = self.R.iota[args[0]]
        else:
            acc = set()
            for i in range(1, n):
                acc ^= self.A.mulv(self.Q(args[:i]), self.Q(args[i:]))
            r = frozenset(acc)
        self._T[args] = r
        return r

    def Q(self, args):
        t = self.T(args)
        return t if len(args) == 1 else self.R.H(t)

    def m(self, args):
        if len(args) == 1:
            return ZERO
        return self.R.P(self.T(args))

    def q(self, args):
        return self.Q(args)

    # -- multilinear extensions
    def _multi(self, f, args):
        vecs = [_as_vec(a) for a in args]
        acc = set()
        for combo in product(*(sorted(v, key=repr) for v in vecs)):
            acc ^= f(combo)
        return frozenset(acc)

    def m_vec(self, args):
        return self._multi(self.m, args)

    def q_vec(self, args):
        return self._multi(self.q, args)

    def composable(self, n):
        """Basis n-tuples whose idempotents line up (all tuples if unknown)."""
        if self.ends is None:
            yield from product(self.classes, repeat=n)
            return
        by_left = {}
        for c in self.classes:
            by_left.setdefault(self.ends[c][0], []).append(c)

        def grow(prefix):
            if len(prefix) == n:
                yield tuple(prefix)
                return
            nxt = self.classes if not prefix else by_left.get(self.ends[prefix[-1]][1], [])
            for c in nxt:
                prefix.append(c)
                yield from grow(prefix)
                prefix.pop()
        yield from grow([])


def transferred_m(A, R, i, args, tr=None):
    if len(args) != i:
        raise ValueError(f"m_{i} needs {i} arguments")
    tr = tr or Transfer(A, R)
    return tr.m_vec(args)


def q_map(A, R, i, args, tr=None):
    if len(args) != i:
        raise ValueError(f"q_{i} needs {i} arguments")
    tr = tr or Transfer(A, R)
    return tr.q_vec(args)


@dataclass
class TransferredOps:
    classes: list
    tables: dict                 # arity -> {basis tuple: nonzero vector}
    ends: dict | None = None
    meta: dict = field(default_factory=dict)

    def m(self, args):
        if len(args) == 1:
            return self.tables.get(1, {}).get(tuple(args), ZERO)
        return self.tables.get(len(args), {}).get(tuple(args), ZERO)

    def m_vec(self, args):
        acc = set()
        for combo in product(*(sorted(_as_vec(a), key=repr) for a in args)):
            acc ^= self.m(combo)
        return frozenset(acc)

    def nonzero(self, arity):
        return dict(self.tables.get(arity, {}))


def transferred_all(A, R, N, cap=ARITY_CAP, tr=None) -> TransferredOps:
    """Tabulate m_2..m_N on all (composable) basis tuples; only nonzero entries are kept."""
    if N > cap:
        raise TransferError(f"arity {N} exceeds the cap {cap}; the tree sum grows like Catalan(N)")
    tr = tr or Transfer(A, R)
    tables = {}
    for n in range(2, N + 1):
        tab = {}
        for t in tr.composable(n):
            v = tr.m(t)
            if v:
                tab[t] = v
        tables[n] = tab
    return TransferredOps(list(tr.classes), tables, tr.ends)


def is_massey_admissible(A, R, seq, tr=None):
    """Every m_j on a proper consecutive subsequence of length >= 2 vanishes."""
    tr = tr or Transfer(A, R)
    n = len(seq)
    for length in range(2, n):
        for s in range(0, n - length + 1):
            if tr.m_vec(seq[s:s + length]):
                return False
    return True


def massey_cycle(A, R, seq, tr=None):
    """sum over 0<k<n of xi_{0,k} xi_{k,n}, with xi_{i,j} = q_{j-i}(seq[i:j])."""
    tr = tr or Transfer(A, R)
    n = len(seq)
    acc = set()
    for k in range(1, n):
        acc ^= A.mulv(tr.q_vec(seq[:k]), tr.q_vec(seq[k:]))
    return frozenset(acc)


def _tuples(ops, n):
    if ops.ends is None:
        yield from product(ops.classes, repeat=n)
        return
    fake = Transfer.__new__(Transfer)
    fake.classes, fake.ends = ops.classes, ops.ends
    yield from Transfer.composable(fake, n)


def verify_ainf(ops: TransferredOps, N):
    """sum m_{r+1+t}(1^r ⊗ m_s ⊗ 1^t) = 0 for every arity n <= N.

    Returns (ok, witness tuple or None).
    """
    for n in range(1, N + 1):
        for t in _tuples(ops, n):
            acc = set()
            for s in range(1, n + 1):
                for r in range(0, n - s + 1):
                    inner = ops.m(t[r:r + s])
                    if not inner:
                        continue
                    outer = t[:r] + (inner,) + t[r + s:]
                    acc ^= ops.m_vec(outer)
            if acc:
                return False, t
    return True, None


def flip_entry(ops: TransferredOps, args, cls):
    """Copy of ops with cls toggled in m(args); used to corrupt tables in tests."""
    tables = {k: dict(v) for k, v in ops.tables.items()}
    n = len(args)
    cur = tables.setdefault(n, {}).get(tuple(args), ZERO)
    new = vadd(cur, [cls])
    if new:
        tables[n][tuple(args)] = new
    else:
        tables[n].pop(tuple(args), None)
    return TransferredOps(ops.classes, tables, ops.ends)
