"""Backtracking search for S-poset maps.

Constraints are binary: ``f(x.s) = f(x).s`` for every scalar ``s`` and
``f(x) <= f(w)`` whenever ``x <= w``.  Each element keeps a bitmask of
candidate images which is pruned to arc consistency after every choice (so
fixing ``f(x)`` settles the whole orbit of ``x`` at once).  Branching is on
the lowest open index with candidates in ascending order, so maps come out
in lexicographic order of their tables.  Once no constraint joins two
undecided elements the remaining maps are a plain product and are listed
without further search.
"""
from __future__ import annotations

from itertools import product
from typing import Iterator, Optional

from .core import BudgetExceeded, DomainMismatch, SPoset, SPosetMap


class Budget:
    """A shared counter of search nodes; ``None`` limit means unbounded."""

    def __init__(self, limit: Optional[int] = None):
        self.limit = limit
        self.used = 0

    def tick(self, n: int = 1) -> None:
        self.used += n
        if self.limit is not None and self.used > self.limit:
            raise BudgetExceeded(self.limit)


def _fingerprint(A: SPoset, x: int):
    fixed = sum(1 for y in A.act[x] if y == x)
    return (len(A.poset.up[x]), len(A.poset.down[x]), len(A.orbits[x]), fixed)


class _SingleIndex(dict):
    """1 << i -> i, filled on demand."""

    def __missing__(self, d):
        self[d] = d.bit_length() - 1
        return self[d]


_SINGLE = _SingleIndex()


def _bits(d: int):
    while d:
        low = d & -d
        yield low.bit_length() - 1
        d ^= low


def _cod_tables(B: SPoset) -> tuple:
    """Support tables of the codomain, kept on the object between searches."""
    c = B.__dict__.get("_search_cod")
    if c is None:
        k, m, actB = B.size, B.over.size, B.act
        # tab[y] = images allowed at the other end of a constraint given y here
        upB = [sum(1 << z for z in range(k) if B.leq[y][z]) for y in range(k)]
        downB = [sum(1 << z for z in range(k) if B.leq[z][y]) for y in range(k)]
        fwd = [[1 << actB[y][s] for y in range(k)] for s in range(m)]
        pre = [[0] * k for _ in range(m)]
        for s in range(m):
            for y in range(k):
                pre[s][actB[y][s]] |= 1 << y
        tabs = [upB, downB] + fwd + pre
        c = (upB, downB, tabs, [{} for _ in tabs])
        object.__setattr__(B, "_search_cod", c)
    return c


def _dom_edges(A: SPoset) -> tuple:
    """(edges, loops, nbr): edges[x] = [(v, tab index)] for the constraints
    leaving x, loops[x] = scalars fixing x, nbr[x] = bitmask of neighbours."""
    e = A.__dict__.get("_search_dom")
    if e is None:
        n, m, actA = A.size, A.over.size, A.act
        sets = [set() for _ in range(n)]
        loops = [[] for _ in range(n)]
        for x, v in A.poset.covers():
            # monotone along covers is monotone everywhere
            sets[x].add((v, 0))
            sets[v].add((x, 1))
        for x in range(n):
            for s in range(m):
                xs = actA[x][s]
                if xs == x:
                    loops[x].append(s)
                    continue
                sets[x].add((xs, 2 + s))
                sets[xs].add((x, 2 + m + s))
        edges = [sorted(c) for c in sets]
        nbr = [sum(1 << v for v in {v for v, _ in c}) for c in edges]
        e = (edges, loops, nbr)
        object.__setattr__(A, "_search_dom", e)
    return e


def _fixed_masks(B: SPoset) -> list:
    c = B.__dict__.get("_search_fix")
    if c is None:
        c = [sum(1 << y for y in range(B.size) if B.act[y][s] == y) for s in range(B.over.size)]
        object.__setattr__(B, "_search_fix", c)
    return c


def iter_tables(A: SPoset, B: SPoset, fixed=None, allowed=None, injective=False,
                reflect=False, budget: Optional[Budget] = None) -> Iterator[tuple]:
    """Yield every table of an S-poset map A -> B meeting the constraints.

    ``fixed`` maps some elements of A to required images; ``allowed[x]`` (if
    given) is a container of permitted images of ``x``.  Candidate sets are
    bitmasks kept arc consistent with the action and order constraints, so a
    value is only dropped when no map can use it; branching still runs over
    the lowest open index in ascending order.
    """
    return _search(A, B, fixed, allowed, injective, reflect, budget, False)


def count_tables(A: SPoset, B: SPoset, limit: Optional[int] = None, **kw) -> int:
    """Number of maps A -> B, or ``limit + 1`` once it is known to exceed ``limit``."""
    total = 0
    for c in _search(A, B, kw.get("fixed"), kw.get("allowed"), kw.get("injective", False),
                     kw.get("reflect", False), kw.get("budget"), True, limit):
        total += c
        if limit is not None and total > limit:
            return limit + 1
    return total


def _search(A, B, fixed, allowed, injective, reflect, budget, counting, limit=None):
    """Tables in lexicographic order, or (``counting``) partial solution counts."""
    if A.over is not B.over and A.over != B.over:
        raise DomainMismatch("over")
    n, m, k = A.size, A.over.size, B.size
    Aleq = A.leq
    upB, downB, tabs, memo = _cod_tables(B)
    edges, loops, nbr = _dom_edges(A)
    full = (1 << k) - 1
    dom = [full] * n
    # f(x).s = f(x) whenever x.s = x
    fixed_by = _fixed_masks(B)
    for x in range(n):
        for s in loops[x]:
            dom[x] &= fixed_by[s]
    trail: list = []  # (element, previous domain)

    if injective and reflect and n == k:
        fpB: dict = {}
        for y in range(k):
            fpB[_fingerprint(B, y)] = fpB.get(_fingerprint(B, y), 0) | (1 << y)
        dom = [fpB.get(_fingerprint(A, x), 0) for x in range(n)]
    if allowed is not None:
        for x in range(n):
            dom[x] &= sum(1 << y for y in allowed[x])
    if fixed:
        for x, y in fixed.items():
            dom[x] &= 1 << y

    # edges[x] = [(v, memo, tab)]: dom[v] must lie in the union of tab[y], y in dom[x]
    edges = [[(v, memo[t], tabs[t]) for v, t in e] for e in edges]
    global_check = injective or reflect

    def propagate(queue: list) -> bool:
        while queue:
            x = queue.pop()
            d = dom[x]
            if not d:
                return False
            for v, c, tab in edges[x]:
                r = c.get(d)
                if r is None:
                    r = 0
                    for y in _bits(d):
                        r |= tab[y]
                    c[d] = r
                old = dom[v]
                new = old & r
                if new != old:
                    if not new:
                        return False
                    trail.append((v, old))
                    dom[v] = new
                    queue.append(v)
            if global_check and not d & (d - 1):
                y = d.bit_length() - 1
                for w in range(n):
                    if w == x:
                        continue
                    mask = full
                    if injective:
                        mask &= ~d
                    if reflect:
                        if not Aleq[x][w]:
                            mask &= ~upB[y]
                        if not Aleq[w][x]:
                            mask &= ~downB[y]
                    old = dom[w]
                    new = old & mask
                    if new != old:
                        if not new:
                            return False
                        trail.append((w, old))
                        dom[w] = new
                        queue.append(w)
        return True

    def undo(mark: int) -> None:
        while len(trail) > mark:
            v, d = trail.pop()
            dom[v] = d

    if not propagate(list(range(n))):
        return

    single = _SINGLE

    def next_open(q: int) -> int:
        while q < n and not dom[q] & (dom[q] - 1):
            q += 1
        return q

    def free_block(q: int):
        """Open positions from q on when no constraint joins two of them.

        Every constraint touching a decided position then holds for all
        remaining values, so the solutions are the full product.
        """
        if global_check:
            return None
        opened, mask = [], 0
        for v in range(q, n):
            d = dom[v]
            if d & (d - 1):
                opened.append(v)
                mask |= 1 << v
        for v in opened:
            if nbr[v] & mask:
                return None
        return opened

    def product_tables(opened):
        base = [single[d] if not d & (d - 1) else 0 for d in dom]
        for combo in product(*[list(_bits(dom[v])) for v in opened]):
            if budget is not None:
                budget.tick()
            for v, y in zip(opened, combo):
                base[v] = y
            yield tuple(base)

    def solution():
        return 1 if counting else tuple(map(single.__getitem__, dom))

    if counting and not global_check:
        yield _Counter(n, dom, nbr, propagate, undo, trail, budget, limit).count((1 << n) - 1)
        return

    pos = next_open(0)
    if pos == n:
        yield solution()
        return
    block = free_block(pos)
    if block is not None:
        yield from product_tables(block)
        return
    # frames [pos, untried candidates, trail mark]; leaving a frame's choice
    # means undoing back to its mark
    stack = [[pos, dom[pos], len(trail)]]
    while stack:
        frame = stack[-1]
        pos, rest, mark = frame
        undo(mark)
        if not rest:
            stack.pop()
            continue
        low = rest & -rest
        frame[1] = rest ^ low
        if budget is not None:
            budget.tick()
        trail.append((pos, dom[pos]))
        dom[pos] = low
        if propagate([pos]):
            q = next_open(pos + 1)
            if q == n:
                yield solution()
                continue
            block = free_block(q)
            if block is not None:
                yield from product_tables(block)
            else:
                stack.append([q, dom[q], len(trail)])


class _Counter:
    """Counts solutions by splitting the open positions into components.

    Arc consistency against a decided position is exact, so once the
    positions joining two groups are all decided the groups are independent
    and their counts multiply.  Counts saturate at ``limit + 1``.
    """

    def __init__(self, n, dom, nbr, propagate, undo, trail, budget, limit):
        self.dom, self.nbr = dom, nbr
        self.propagate, self.undo, self.trail = propagate, undo, trail
        self.budget = budget
        self.cap = None if limit is None else limit + 1

    def sat(self, c: int) -> int:
        return c if self.cap is None or c < self.cap else self.cap

    def count(self, mask: int) -> int:
        dom, nbr = self.dom, self.nbr
        rest = 0
        for v in _bits(mask):
            if dom[v] & (dom[v] - 1):
                rest |= 1 << v
        total = 1
        while rest:
            comp = frontier = rest & -rest
            while frontier:
                low = frontier & -frontier
                frontier ^= low
                new = nbr[low.bit_length() - 1] & rest & ~comp
                comp |= new
                frontier |= new
            rest &= ~comp
            c = self.branch(comp)
            if not c:
                return 0
            total = self.sat(total * c)
        return total

    def branch(self, comp: int) -> int:
        dom = self.dom
        x = (comp & -comp).bit_length() - 1
        if comp == 1 << x:
            return bin(dom[x]).count("1")
        rest = comp ^ (1 << x)
        total, mark = 0, len(self.trail)
        for y in list(_bits(dom[x])):
            if self.budget is not None:
                self.budget.tick()
            self.trail.append((x, dom[x]))
            dom[x] = 1 << y
            if self.propagate([x]):
                total = self.sat(total + self.count(rest))
            self.undo(mark)
            if self.cap is not None and total >= self.cap:
                break
        return total


def iter_maps(A: SPoset, B: SPoset, **kw) -> Iterator[SPosetMap]:
    for t in iter_tables(A, B, **kw):
        yield SPosetMap(A, B, t)


def enumerate_maps(A: SPoset, B: SPoset, **kw) -> list:
    """All S-poset maps A -> B in lexicographic order of their tables."""
    return list(iter_maps(A, B, **kw))


def first_map(A: SPoset, B: SPoset, **kw) -> Optional[SPosetMap]:
    for t in iter_tables(A, B, **kw):
        return SPosetMap(A, B, t)
    return None


def first_isomorphism(A: SPoset, B: SPoset) -> Optional[SPosetMap]:
    if A.size != B.size:
        return None
    if sum(map(sum, A.leq)) != sum(map(sum, B.leq)):
        return None
    if sorted(_fingerprint(A, x) for x in range(A.size)) != sorted(_fingerprint(B, y) for y in range(B.size)):
        return None
    return first_map(A, B, injective=True, reflect=True)


def brute_force_tables(A: SPoset, B: SPoset) -> list:
    """Oracle: filter all |B|^|A| functions.  Only for tiny inputs."""
    from itertools import product

    out = []
    m = A.over.size
    for t in product(range(B.size), repeat=A.size):
        ok = all(B.leq[t[a]][t[b]] for a in range(A.size) for b in range(A.size) if A.leq[a][b])
        ok = ok and all(t[A.act[a][s]] == B.act[t[a]][s] for a in range(A.size) for s in range(m))
        if ok:
            out.append(t)
    return out
