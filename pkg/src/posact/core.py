"""Finite posets, pomonoids, S-posets, biposets and S-poset maps.

Elements are dense indices ``0..n-1``.  Every object is an immutable frozen
dataclass holding tuples; use the ``validate_*`` functions (or the
``make_*`` helpers) to obtain checked values.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Sequence

import numpy as np


class PosactError(Exception):
    """Base class; ``str(err)`` renders as ``Name(arg,arg,...)``."""

    def __str__(self) -> str:
        return "%s(%s)" % (type(self).__name__, ",".join(str(a) for a in self.args))


class ValidationError(PosactError):
    pass


class ClosureNotAntisymmetric(ValidationError):
    pass


class NotReflexive(ValidationError):
    pass


class NotAntisymmetric(ValidationError):
    pass


class NotTransitive(ValidationError):
    pass


class BadShape(ValidationError):
    pass


class NotAssociative(ValidationError):
    pass


class NotUnit(ValidationError):
    pass


class NotCompatible(ValidationError):
    pass


class ActionNotUnital(ValidationError):
    pass


class ActionNotAssociative(ValidationError):
    pass


class ActionNotMonotone(ValidationError):
    pass


class NotMonotone(ValidationError):
    pass


class NotEquivariant(ValidationError):
    pass


class NotActClosed(ValidationError):
    pass


class DomainMismatch(PosactError):
    pass


class BudgetExceeded(PosactError):
    pass


# ---------------------------------------------------------------------------
# data types


@dataclass(frozen=True)
class Poset:
    size: int
    leq: tuple  # leq[i][j] is True iff i <= j
    labels: Optional[tuple] = field(default=None, compare=False)

    @cached_property
    def up(self):
        """up[i] = elements j with i <= j (i excluded)."""
        n = self.size
        return tuple(tuple(j for j in range(n) if j != i and self.leq[i][j]) for i in range(n))

    @cached_property
    def down(self):
        n = self.size
        return tuple(tuple(j for j in range(n) if j != i and self.leq[j][i]) for i in range(n))

    @cached_property
    def matrix(self) -> np.ndarray:
        return np.array(self.leq, dtype=bool).reshape(self.size, self.size)

    def label(self, i: int) -> str:
        if self.labels is not None:
            return str(self.labels[i])
        return str(i)

    def covers(self):
        """Transitive reduction as a sorted list of pairs ``(i, j)`` with i < j covered."""
        return list(self._covers)

    @cached_property
    def _covers(self) -> tuple:
        out = []
        for i in range(self.size):
            for j in self.up[i]:
                if not any(self.leq[k][j] for k in self.up[i] if k != j):
                    out.append((i, j))
        return tuple(sorted(out))

    def __repr__(self) -> str:
        return "Poset(size=%d, covers=%s)" % (self.size, self.covers())


@dataclass(frozen=True)
class Pomonoid:
    poset: Poset
    mult: tuple  # mult[s][t] = st
    identity: int = 0
    name: Optional[str] = field(default=None, compare=False)

    @property
    def size(self) -> int:
        return self.poset.size

    @property
    def leq(self):
        return self.poset.leq

    def label(self, i: int) -> str:
        return self.poset.label(i)

    @cached_property
    def is_commutative(self) -> bool:
        n = self.size
        return all(self.mult[s][t] == self.mult[t][s] for s in range(n) for t in range(n))

    @cached_property
    def one_is_top(self) -> bool:
        return all(self.poset.leq[s][self.identity] for s in range(self.size))

    def __repr__(self) -> str:
        tag = self.name or "Pomonoid"
        return "%s(mult=%s, covers=%s)" % (tag, self.mult, self.poset.covers())


@dataclass(frozen=True)
class SPoset:
    poset: Poset
    over: Pomonoid
    act: tuple  # act[a][s] = a.s
    name: Optional[str] = field(default=None, compare=False)

    @property
    def size(self) -> int:
        return self.poset.size

    @property
    def leq(self):
        return self.poset.leq

    def label(self, i: int) -> str:
        return self.poset.label(i)

    @cached_property
    def orbits(self):
        """orbits[a] = sorted tuple of a.S."""
        return tuple(tuple(sorted(set(row))) for row in self.act)

    def __repr__(self) -> str:
        tag = self.name or "SPoset"
        return "%s(size=%d, act=%s, covers=%s)" % (tag, self.size, self.act, self.poset.covers())


@dataclass(frozen=True)
class Biposet:
    """Left T-action and right S-action on one poset, ``(ta)s = t(as)``."""

    base: SPoset
    left_over: Pomonoid
    lact: tuple  # lact[t][a] = t.a

    def left_view(self) -> SPoset:
        """The left T-poset as a right S-poset over ``opposite(T)``."""
        n = self.base.size
        T = opposite(self.left_over)
        act = tuple(tuple(self.lact[t][a] for t in range(T.size)) for a in range(n))
        return SPoset(self.base.poset, T, act)


@dataclass(frozen=True)
class SPosetMap:
    dom: SPoset
    cod: SPoset
    table: tuple

    def __call__(self, a: int) -> int:
        return self.table[a]

    def __repr__(self) -> str:
        return "SPosetMap(%s)" % (self.table,)


# ---------------------------------------------------------------------------
# posets


def _as_leq(n: int, leq) -> tuple:
    if isinstance(leq, np.ndarray):
        leq = leq.tolist()
    if len(leq) != n or any(len(row) != n for row in leq):
        raise BadShape("leq", n)
    return tuple(tuple(bool(x) for x in row) for row in leq)


def order_closure(pairs: Sequence, size: int, labels=None) -> Poset:
    """Reflexive-transitive closure of the generating pairs ``i <= j``."""
    for i, j in pairs:
        if not (0 <= i < size and 0 <= j < size):
            raise BadShape("pair", i, j)
    m = np.eye(size, dtype=bool)
    for i, j in pairs:
        m[i, j] = True
    # Warshall
    for k in range(size):
        m |= m[:, k:k + 1] & m[k:k + 1, :]
    for i in range(size):
        for j in range(i + 1, size):
            if m[i, j] and m[j, i]:
                raise ClosureNotAntisymmetric(i, j)
    return Poset(size, _as_leq(size, m), labels)


def discrete_poset(n: int, labels=None) -> Poset:
    return order_closure([], n, labels)


def chain(n: int, labels=None) -> Poset:
    return order_closure([(i, i + 1) for i in range(n - 1)], n, labels)


def _first(mask):
    """Index tuple of the first true entry, or None."""
    if not mask.any():
        return None
    return tuple(int(x) for x in np.argwhere(mask)[0])


def validate_poset(size: int, leq, labels=None) -> Poset:
    leq = _as_leq(size, leq)
    for i in range(size):
        if not leq[i][i]:
            raise NotReflexive(i)
    for i in range(size):
        for j in range(i + 1, size):
            if leq[i][j] and leq[j][i]:
                raise NotAntisymmetric(i, j)
    m = np.array(leq, dtype=bool).reshape(size, size)
    comp = (m.astype(np.int32) @ m.astype(np.int32)) > 0
    bad = _first(comp & ~m)
    if bad:
        i, k = bad
        j = next(j for j in range(size) if leq[i][j] and leq[j][k])
        raise NotTransitive(i, j, k)
    return Poset(size, leq, labels)


# ---------------------------------------------------------------------------
# pomonoids


def validate_pomonoid(poset: Poset, mult, identity: int = 0, name=None) -> Pomonoid:
    """Check unit, associativity and order compatibility; return the pomonoid."""
    n = poset.size
    M = np.asarray(mult, dtype=np.int16)
    if M.shape != (n, n) or (n and (M.min() < 0 or M.max() >= n)):
        raise BadShape("mult", n)
    if not 0 <= identity < n:
        raise BadShape("identity", identity)
    poset = validate_poset(n, poset.leq, poset.labels)
    for s in range(n):
        if M[identity, s] != s or M[s, identity] != s:
            raise NotUnit(s)
    # M[M[s,t],u] == M[s,M[t,u]]
    lhs = M[M, :]  # lhs[s,t,u] = (st)u
    rhs = M[:, M]  # rhs[s,t,u] = s(tu)
    bad = _first(lhs != rhs)
    if bad:
        raise NotAssociative(*bad)
    L = poset.matrix
    # compatibility reduces to monotonicity in each argument separately
    # left: s<=t => s u <= t u ; right: s<=t => u s <= u t
    left = L[M[:, None, :], M[None, :, :]]  # [s,t,u] : su <= tu
    bad_l = _first(L[:, :, None] & ~left)
    right = L[M.T[:, None, :], M.T[None, :, :]]  # [s,t,u] : us <= ut
    bad_r = _first(L[:, :, None] & ~right)
    cands = []
    if bad_l:
        s, t, u = bad_l
        cands.append((s, t, u, u))
    if bad_r:
        s, t, u = bad_r
        cands.append((u, u, s, t))
    if cands:
        raise NotCompatible(*min(cands))
    mult = tuple(tuple(int(x) for x in row) for row in M.tolist())
    return Pomonoid(poset, mult, identity, name)


def make_pomonoid(mult, pairs=(), identity: int = 0, labels=None, name=None) -> Pomonoid:
    n = len(mult)
    return validate_pomonoid(order_closure(pairs, n, labels), mult, identity, name)


def opposite(S: Pomonoid) -> Pomonoid:
    n = S.size
    mult = tuple(tuple(S.mult[t][s] for t in range(n)) for s in range(n))
    name = None if S.name is None else S.name + "^op"
    return Pomonoid(S.poset, mult, S.identity, name)


def trivial_pomonoid() -> Pomonoid:
    return make_pomonoid(((0,),), labels=("1",), name="S1")


# ---------------------------------------------------------------------------
# S-posets


def validate_sposet(poset: Poset, over: Pomonoid, act, name=None) -> SPoset:
    n, m = poset.size, over.size
    A = np.asarray(act, dtype=np.int16).reshape(n, m) if n else np.zeros((0, m), dtype=np.int16)
    if n and (A.min() < 0 or A.max() >= n):
        raise BadShape("act", n, m)
    poset = validate_poset(n, poset.leq, poset.labels)
    one = over.identity
    for a in range(n):
        if A[a, one] != a:
            raise ActionNotUnital(a)
    if n:
        M = np.asarray(over.mult, dtype=np.int16)
        lhs = A[:, M]  # a(st)
        rhs = A[A, :]  # (as)t
        bad = _first(lhs != rhs)
        if bad:
            raise ActionNotAssociative(*bad)
        L = poset.matrix
        Ls = over.poset.matrix
        # a<=b => as<=bs
        el = L[A[:, None, :], A[None, :, :]]
        bad = _first(L[:, :, None] & ~el)
        if bad:
            a, b, s = bad
            raise ActionNotMonotone("element", a, b, s)
        # s<=t => as<=at
        sc = L[A[:, :, None], A[:, None, :]]
        bad = _first(Ls[None, :, :] & ~sc)
        if bad:
            a, s, t = bad
            raise ActionNotMonotone("scalar", a, s, t)
    act = tuple(tuple(int(x) for x in row) for row in A.tolist())
    return SPoset(poset, over, act, name)


def make_sposet(over: Pomonoid, act, pairs=(), labels=None, name=None) -> SPoset:
    n = len(act)
    return validate_sposet(order_closure(pairs, n, labels), over, act, name)


def validate_biposet(base: SPoset, left_over: Pomonoid, lact) -> Biposet:
    n = base.size
    T = left_over
    L = np.asarray(lact, dtype=np.int16).reshape(T.size, n)
    view = validate_sposet(base.poset, opposite(T), L.T.tolist())
    A = np.asarray(base.act, dtype=np.int16).reshape(n, base.over.size)
    # (ta)s = t(as)
    lhs = A[L, :]  # [t,a,s] (ta)s
    rhs = L[:, A]  # [t,a,s] t(as)
    bad = _first(lhs != rhs)
    if bad:
        raise ActionNotAssociative("bi", *bad)
    del view
    return Biposet(base, T, tuple(tuple(int(x) for x in row) for row in L.tolist()))


# ---------------------------------------------------------------------------
# maps


def validate_map(dom: SPoset, cod: SPoset, table) -> SPosetMap:
    if dom.over is not cod.over and dom.over != cod.over:
        raise DomainMismatch("over")
    table = tuple(int(x) for x in table)
    if len(table) != dom.size or any(not 0 <= y < cod.size for y in table):
        raise BadShape("table", dom.size)
    for a in range(dom.size):
        for b in dom.poset.up[a]:
            if not cod.leq[table[a]][table[b]]:
                raise NotMonotone(a, b)
    for a in range(dom.size):
        for s in range(dom.over.size):
            if table[dom.act[a][s]] != cod.act[table[a]][s]:
                raise NotEquivariant(a, s)
    return SPosetMap(dom, cod, table)


def is_map_table(dom: SPoset, cod: SPoset, table) -> bool:
    """Vectorised test that ``table`` is an S-poset map dom -> cod."""
    if dom.size == 0:
        return True
    t = np.asarray(table, dtype=np.intp)
    if t.shape != (dom.size,) or t.min() < 0 or t.max() >= cod.size:
        return False
    Ad = np.asarray(dom.act, dtype=np.intp)
    Ac = np.asarray(cod.act, dtype=np.intp)
    if not (t[Ad] == Ac[t]).all():
        return False
    Lc = cod.poset.matrix
    return not (dom.poset.matrix & ~Lc[t[:, None], t[None, :]]).any()


def identity_map(A: SPoset) -> SPosetMap:
    return SPosetMap(A, A, tuple(range(A.size)))


def compose(f: SPosetMap, g: SPosetMap) -> SPosetMap:
    """``g o f`` (apply ``f`` first)."""
    if f.cod != g.dom:
        raise DomainMismatch("compose")
    return validate_map(f.dom, g.cod, [g.table[y] for y in f.table])


def is_order_embedding(f: SPosetMap) -> bool:
    A, B, t = f.dom, f.cod, f.table
    return all(A.leq[a][b] == B.leq[t[a]][t[b]] for a in range(A.size) for b in range(A.size))


def is_epimorphism(f: SPosetMap) -> bool:
    return len(set(f.table)) == f.cod.size


def is_isomorphism(f: SPosetMap) -> bool:
    return f.dom.size == f.cod.size and is_epimorphism(f) and is_order_embedding(f)


def inverse(f: SPosetMap) -> SPosetMap:
    inv = [0] * f.cod.size
    for a, b in enumerate(f.table):
        inv[b] = a
    return validate_map(f.cod, f.dom, inv)


def find_isomorphism(A: SPoset, B: SPoset) -> Optional[SPosetMap]:
    """Some S-poset isomorphism A -> B, or None."""
    from .search import first_isomorphism

    if A.over is not B.over and A.over != B.over:
        raise DomainMismatch("over")
    return first_isomorphism(A, B)


def poset_as_sposet(P: Poset) -> SPoset:
    """A poset seen as a (trivial) S-poset over the trivial monoid."""
    S1 = trivial_pomonoid()
    return SPoset(P, S1, tuple((a,) for a in range(P.size)))


def find_poset_isomorphism(P: Poset, Q: Poset) -> Optional[tuple]:
    f = find_isomorphism(poset_as_sposet(P), poset_as_sposet(Q))
    return None if f is None else f.table


def sub_poset(P: Poset, elements: Sequence[int]) -> Poset:
    els = list(elements)
    leq = tuple(tuple(P.leq[a][b] for b in els) for a in els)
    labels = None if P.labels is None else tuple(P.labels[a] for a in els)
    return Poset(len(els), leq, labels)
