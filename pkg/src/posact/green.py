"""Green's relations, idempotents, regularity and poideals of a pomonoid."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .core import Pomonoid

RELATIONS = ("R", "J", "D")


@dataclass(frozen=True)
class IdealSet:
    carrier: frozenset
    side: str  # "left" | "right"
    down_closed: bool = True

    def sorted(self) -> list:
        return sorted(self.carrier)


def idempotents(S: Pomonoid) -> list:
    return [e for e in range(S.size) if S.mult[e][e] == e]


def _closure(S: Pomonoid, seed, left: bool, right: bool) -> frozenset:
    out = set(seed)
    todo = list(out)
    while todo:
        x = todo.pop()
        new = []
        if right:
            new.extend(S.mult[x])
        if left:
            new.extend(S.mult[s][x] for s in range(S.size))
        for y in new:
            if y not in out:
                out.add(y)
                todo.append(y)
    return frozenset(out)


@lru_cache(maxsize=4096)
def _ideals(S: Pomonoid):
    n = S.size
    right = tuple(_closure(S, [s], False, True) for s in range(n))
    left = tuple(_closure(S, [s], True, False) for s in range(n))
    both = tuple(_closure(S, [s], True, True) for s in range(n))
    return right, left, both


def right_ideal(S: Pomonoid, s: int) -> frozenset:
    """sS"""
    return _ideals(S)[0][s]


def left_ideal(S: Pomonoid, s: int) -> frozenset:
    """Ss"""
    return _ideals(S)[1][s]


def two_sided_ideal(S: Pomonoid, s: int) -> frozenset:
    """SsS"""
    return _ideals(S)[2][s]


def green_related(S: Pomonoid, rel: str, s: int, t: int) -> bool:
    """R: sS = tS.  J: SsS = StS.  D: some u has sS = uS and St = Su."""
    right, left, both = _ideals(S)
    if rel == "R":
        return right[s] == right[t]
    if rel == "J":
        return both[s] == both[t]
    if rel == "D":
        return any(right[s] == right[u] and left[t] == left[u] for u in range(S.size))
    raise ValueError("unknown relation %r" % rel)


def relation_matrix(S: Pomonoid, rel: str) -> list:
    n = S.size
    return [[green_related(S, rel, s, t) for t in range(n)] for s in range(n)]


def is_equivalence(matrix) -> bool:
    n = len(matrix)
    r = range(n)
    return (all(matrix[i][i] for i in r)
            and all(matrix[i][j] == matrix[j][i] for i in r for j in r)
            and all(matrix[i][k] for i in r for j in r for k in r if matrix[i][j] and matrix[j][k]))


def green_classes(S: Pomonoid, rel: str) -> list:
    """Classes of the relation; only meaningful when it is an equivalence."""
    seen, out = set(), []
    for s in range(S.size):
        if s in seen:
            continue
        cls = [t for t in range(S.size) if green_related(S, rel, s, t)]
        seen.update(cls)
        out.append(cls)
    return out


def is_regular_element(S: Pomonoid, s: int) -> bool:
    m = S.mult
    return any(m[m[s][t]][s] == s for t in range(S.size))


def is_regular_pomonoid(S: Pomonoid) -> bool:
    return all(is_regular_element(S, s) for s in range(S.size))


def down_closure(S: Pomonoid, subset) -> frozenset:
    leq = S.leq
    return frozenset(t for t in range(S.size) if any(leq[t][x] for x in subset))


def principal_right_poideal(S: Pomonoid, s: int) -> IdealSet:
    """down(sS) = {t : t <= su for some u}."""
    I = IdealSet(down_closure(S, right_ideal(S, s)), "right")
    assert is_poideal(S, I.carrier, "right")
    return I


def principal_left_poideal(S: Pomonoid, s: int) -> IdealSet:
    I = IdealSet(down_closure(S, left_ideal(S, s)), "left")
    assert is_poideal(S, I.carrier, "left")
    return I


def is_poideal(S: Pomonoid, carrier, side: str) -> bool:
    c = set(carrier)
    m, leq = S.mult, S.leq
    for x in c:
        if any(leq[t][x] and t not in c for t in range(S.size)):
            return False
        for s in range(S.size):
            y = m[x][s] if side == "right" else m[s][x]
            if y not in c:
                return False
    return True


def _down_sets(S: Pomonoid) -> list:
    """All down-closed subsets, as frozensets (generated by antichains)."""
    n = S.size
    leq = S.leq
    out = {frozenset()}
    frontier = [frozenset()]
    # grow by adding an element whose strict down-set is already present
    while frontier:
        nxt = []
        for D in frontier:
            for x in range(n):
                if x in D:
                    continue
                if all(y in D for y in range(n) if y != x and leq[y][x]):
                    E = D | {x}
                    if E not in out:
                        out.add(E)
                        nxt.append(E)
        frontier = nxt
    return list(out)


def _canon_key(c: frozenset):
    return (len(c), sorted(c))


def enumerate_poideals(S: Pomonoid, side: str) -> list:
    """All left or right poideals (empty set included), sorted by (size, elements)."""
    found = [IdealSet(D, side) for D in _down_sets(S) if is_poideal(S, D, side)]
    return sorted(found, key=lambda I: _canon_key(I.carrier))


def is_left_simple(S: Pomonoid) -> bool:
    return len(enumerate_poideals(S, "left")) == 2 if S.size else True


def is_right_simple(S: Pomonoid) -> bool:
    return len(enumerate_poideals(S, "right")) == 2 if S.size else True
