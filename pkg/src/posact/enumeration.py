"""Isomorphism-reduced enumeration of monoids, pomonoids, posets and S-posets.

Canonical form of a structure is the lexicographically least table over all
relabellings (fixing the identity for monoids), which is exact and cheap at
the sizes used here.
"""
from __future__ import annotations

import hashlib
from functools import lru_cache
from itertools import permutations, product
from pathlib import Path
from typing import Optional

from .core import BudgetExceeded, Pomonoid, Poset, SPoset, validate_pomonoid, validate_sposet

MAX_MONOID_ORDER = 5
GENERATOR_VERSION = "1"


# ---------------------------------------------------------------------------
# monoids


def _is_associative(t, n) -> bool:
    r = range(n)
    return all(t[t[a][b]][c] == t[a][t[b][c]] for a in r for b in r for c in r)


def _permute_table(t, p, n):
    # p[old] = new
    inv = [0] * n
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(tuple(p[t[inv[i]][inv[j]]] for j in range(n)) for i in range(n))


def _identity_fixing_perms(n):
    return [(0,) + q for q in permutations(range(1, n))]


def canonical_monoid(t) -> tuple:
    n = len(t)
    return min(_permute_table(t, p, n) for p in _identity_fixing_perms(n))


def brute_force_monoids(n: int) -> list:
    """Oracle: filter every unital table on n elements, dedupe by relabelling."""
    found = set()
    cells = [(i, j) for i in range(1, n) for j in range(1, n)]
    for vals in product(range(n), repeat=len(cells)):
        t = [[j if i == 0 else (i if j == 0 else 0) for j in range(n)] for i in range(n)]
        for (i, j), v in zip(cells, vals):
            t[i][j] = v
        t = tuple(tuple(r) for r in t)
        if _is_associative(t, n):
            found.add(canonical_monoid(t))
    return sorted(found)


def enumerate_monoids(n: int) -> list:
    """All monoid tables of order n (identity 0) up to isomorphism, sorted."""
    if not 1 <= n <= MAX_MONOID_ORDER:
        raise BudgetExceeded("monoid order", n)
    t = [[j if i == 0 else (i if j == 0 else -1) for j in range(n)] for i in range(n)]
    cells = [(i, j) for i in range(1, n) for j in range(1, n)]
    perms = _identity_fixing_perms(n)
    found = set()

    def consistent() -> bool:
        r = range(n)
        for a in r:
            for b in r:
                ab = t[a][b]
                if ab < 0:
                    continue
                for c in r:
                    bc = t[b][c]
                    if bc < 0:
                        continue
                    x, y = t[ab][c], t[a][bc]
                    if x >= 0 and y >= 0 and x != y:
                        return False
        return True

    def rec(k: int):
        if k == len(cells):
            tt = tuple(tuple(r) for r in t)
            if all(_permute_table(tt, p, n) >= tt for p in perms):
                found.add(tt)
            return
        i, j = cells[k]
        for v in range(n):
            t[i][j] = v
            if consistent():
                rec(k + 1)
        t[i][j] = -1

    rec(0)
    return sorted(found)


# ---------------------------------------------------------------------------
# posets


def _relabel_leq(leq, p, n):
    inv = [0] * n
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(tuple(leq[inv[i]][inv[j]] for j in range(n)) for i in range(n))


@lru_cache(maxsize=None)
def labeled_posets(n: int) -> tuple:
    """Every partial order on {0..n-1}, built by adding one element at a time."""
    if n == 0:
        return ((),)
    out = []
    for leq in labeled_posets(n - 1):
        m = n - 1
        for downs in product((False, True), repeat=m):
            D = [i for i in range(m) if downs[i]]
            if any(leq[j][i] and not downs[j] for i in D for j in range(m)):
                continue
            for ups in product((False, True), repeat=m):
                if any(ups[i] and downs[i] for i in range(m)):
                    continue
                U = [i for i in range(m) if ups[i]]
                if any(leq[i][j] and not ups[j] for i in U for j in range(m)):
                    continue
                if any(not leq[d][u] for d in D for u in U):
                    continue
                rows = [tuple(leq[i]) + (downs[i],) for i in range(m)]
                rows.append(tuple(ups) + (True,))
                out.append(tuple(rows))
    return tuple(out)


def canonical_poset(leq) -> tuple:
    n = len(leq)
    return min(_relabel_leq(leq, p, n) for p in permutations(range(n)))


@lru_cache(maxsize=None)
def enumerate_posets(n: int) -> tuple:
    """Posets on n elements up to isomorphism, as Poset objects."""
    reps = sorted({canonical_poset(leq) for leq in labeled_posets(n)}, reverse=True)
    return tuple(Poset(n, leq) for leq in reps)


def poset_automorphisms(P: Poset) -> list:
    n = P.size
    return [p for p in permutations(range(n)) if _relabel_leq(P.leq, p, n) == P.leq]


# ---------------------------------------------------------------------------
# pomonoids


def monoid_automorphisms(t) -> list:
    n = len(t)
    return [p for p in _identity_fixing_perms(n) if _permute_table(t, p, n) == t]


def _compatible(t, leq) -> bool:
    n = len(t)
    r = range(n)
    for s in r:
        for u in r:
            if not leq[s][u]:
                continue
            for x in r:
                if not leq[t[s][x]][t[u][x]] or not leq[t[x][s]][t[x][u]]:
                    return False
    return True


def enumerate_compatible_orders(t) -> list:
    """Compatible partial orders on the monoid ``t`` up to its automorphisms."""
    t = tuple(tuple(r) for r in t)
    n = len(t)
    auts = monoid_automorphisms(t)
    reps = set()
    for leq in labeled_posets(n):
        if _compatible(t, leq):
            reps.add(min(_relabel_leq(leq, p, n) for p in auts))
    discrete = tuple(tuple(i == j for j in range(n)) for i in range(n))
    return [Poset(n, leq) for leq in sorted(reps, key=lambda q: (q != discrete, q))]


def _enumerate_pomonoids(n: int) -> list:
    out = []
    for t in enumerate_monoids(n):
        for P in enumerate_compatible_orders(t):
            out.append(validate_pomonoid(P, t, 0))
    return out


def pomonoid_key(S: Pomonoid) -> str:
    text = repr((S.size, S.identity, S.mult, S.leq))
    return hashlib.sha256(text.encode()).hexdigest()[:16]


# ---------------------------------------------------------------------------
# S-posets


def monotone_selfmaps(P: Poset) -> list:
    n = P.size
    pairs = [(a, b) for a in range(n) for b in P.up[a]]
    return [f for f in product(range(n), repeat=n) if all(P.leq[f[a]][f[b]] for a, b in pairs)]


def _actions(S: Pomonoid, P: Poset):
    """All valid action tables of S on the poset P (not reduced)."""
    n, m = P.size, S.size
    one = S.identity
    maps = monotone_selfmaps(P)
    phi: list = [None] * m
    phi[one] = tuple(range(n))
    order = [s for s in range(m) if s != one]
    mult = S.mult
    Sleq = S.leq
    Pleq = P.leq

    def ok(s) -> bool:
        fs = phi[s]
        for t in range(m):
            ft = phi[t]
            if ft is None:
                continue
            if Sleq[s][t] and not all(Pleq[fs[a]][ft[a]] for a in range(n)):
                return False
            if Sleq[t][s] and not all(Pleq[ft[a]][fs[a]] for a in range(n)):
                return False
            # a(st) = (as)t and a(ts) = (at)s
            for u, first, second in ((mult[s][t], fs, ft), (mult[t][s], ft, fs)):
                fu = phi[u]
                if fu is not None and any(fu[a] != second[first[a]] for a in range(n)):
                    return False
        return True

    def forced(s):
        for t in range(m):
            if phi[t] is None:
                continue
            for u in range(m):
                if phi[u] is not None and mult[t][u] == s:
                    ft, fu = phi[t], phi[u]
                    return tuple(fu[ft[a]] for a in range(n))
        return None

    def rec(k):
        if k == len(order):
            yield tuple(tuple(phi[s][a] for s in range(m)) for a in range(n))
            return
        s = order[k]
        f = forced(s)
        for cand in ([f] if f is not None else maps):
            phi[s] = cand
            if ok(s):
                yield from rec(k + 1)
        phi[s] = None

    yield from rec(0)


def _permute_act(act, p, n):
    inv = [0] * n
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(tuple(p[y] for y in act[inv[a]]) for a in range(n))


def canonical_sposet_key(A: SPoset) -> tuple:
    """Isomorphism invariant key: least (order, action) over all relabellings."""
    n = A.size
    best = None
    for p in permutations(range(n)):
        key = (_relabel_leq(A.leq, p, n), _permute_act(A.act, p, n))
        if best is None or key < best:
            best = key
    return best


def _enumerate_sposets(S: Pomonoid, k: int) -> list:
    out = []
    for P in enumerate_posets(k):
        auts = poset_automorphisms(P)
        reps = set()
        for act in _actions(S, P):
            if all(_permute_act(act, p, k) >= act for p in auts):
                reps.add(act)
        for act in sorted(reps):
            out.append(validate_sposet(P, S, act))
    return out


# ---------------------------------------------------------------------------
# cache and public entry points


class Cache:
    """Disk cache: ``<root>/<kind>/<size>/<canonical-hash>.pos`` plus an index."""

    def __init__(self, root):
        self.root = Path(root)

    def _dir(self, kind: str, size: int) -> Path:
        return self.root / kind / str(size)

    def load(self, kind: str, size: int, resolve) -> Optional[list]:
        from .textio import loads

        d = self._dir(kind, size)
        idx = d / "index"
        if not idx.exists():
            return None
        lines = idx.read_text(encoding="utf-8").splitlines()
        if not lines or lines[0] != "version: %s" % GENERATOR_VERSION:
            return None
        out = []
        for h in lines[1:]:
            p = d / (h + ".pos")
            if not p.exists():
                return None
            out.append(loads(p.read_text(encoding="utf-8"), resolve))
        return out

    def store(self, kind: str, size: int, objs, refs=None) -> None:
        from .textio import serialize

        d = self._dir(kind, size)
        d.mkdir(parents=True, exist_ok=True)
        hashes = []
        for obj in objs:
            text = serialize(obj, refs=refs)
            h = hashlib.sha256(text.encode()).hexdigest()[:16]
            (d / (h + ".pos")).write_text(text, encoding="utf-8")
            hashes.append(h)
        lines = ["version: %s" % GENERATOR_VERSION] + hashes
        (d / "index").write_text("\n".join(lines) + "\n", encoding="utf-8")


def _cache(cache):
    if cache is None or isinstance(cache, Cache):
        return cache
    return Cache(cache)


_memo: dict = {}


def enumerate_pomonoids(n: int, cache=None) -> list:
    key = ("pomonoid", n)
    if key in _memo:
        return _memo[key]
    c = _cache(cache)
    out = c.load("pomonoid", n, None) if c else None
    if out is None:
        out = _enumerate_pomonoids(n)
        if c:
            c.store("pomonoid", n, out)
    _memo[key] = out
    return out


def enumerate_sposets(S: Pomonoid, k: int, cache=None) -> list:
    """S-posets of size exactly k over S, up to isomorphism."""
    key = ("sposet", pomonoid_key(S), k)
    if key in _memo:
        return _memo[key]
    c = _cache(cache)
    kind = "sposet-" + pomonoid_key(S)
    resolve = lambda name: S  # noqa: E731
    out = c.load(kind, k, resolve) if c else None
    if out is None:
        out = _enumerate_sposets(S, k)
        if c:
            c.store(kind, k, out, refs={id(S): "S"})
    else:
        out = [validate_sposet(A.poset, S, A.act) for A in out]
    _memo[key] = out
    return out


def pomonoid_universe(max_order: int, cache=None) -> list:
    out = []
    for n in range(1, max_order + 1):
        out.extend(enumerate_pomonoids(n, cache))
    return out


def sposet_universe(S: Pomonoid, max_size: int, cache=None) -> list:
    out = []
    for k in range(1, max_size + 1):
        out.extend(enumerate_sposets(S, k, cache))
    return out


def clear_memo() -> None:
    _memo.clear()
