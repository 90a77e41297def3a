"""The slice category Pos-S/B: morphisms, sections, fibers and bounded injectivity."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .core import Poset, SPosetMap, sub_poset
from .decide import PropertyVerdict, emb_test_family, is_complete_lattice
from .search import Budget, first_map, iter_tables
from .textio import SliceObject

__all__ = [
    "SliceObject",
    "is_slice_morphism",
    "find_section",
    "all_sections",
    "is_split_epi",
    "fibers",
    "fibers_complete",
    "is_slice_emb_injective_bounded",
]


def is_slice_morphism(h: SPosetMap, f: SPosetMap, g: SPosetMap) -> bool:
    """g o h == f."""
    if h.dom != f.dom or h.cod != g.dom or f.cod != g.cod:
        return False
    return all(g.table[h.table[x]] == f.table[x] for x in range(f.dom.size))


def find_section(f: SPosetMap) -> Optional[SPosetMap]:
    """First g with f o g = id (g(b) is searched inside the fiber over b)."""
    A, B = f.dom, f.cod
    fib = [[] for _ in range(B.size)]
    for a, b in enumerate(f.table):
        fib[b].append(a)
    if any(not c for c in fib):
        return None
    return first_map(B, A, allowed=[set(c) for c in fib])


def all_sections(f: SPosetMap) -> list:
    A, B = f.dom, f.cod
    fib = [set(a for a in range(A.size) if f.table[a] == b) for b in range(B.size)]
    if any(not c for c in fib):
        return []
    return [SPosetMap(B, A, t) for t in iter_tables(B, A, allowed=fib)]


def is_split_epi(f: SPosetMap) -> bool:
    return find_section(f) is not None


def fibers(f: SPosetMap) -> list:
    """(b, elements of f^-1(b), induced poset) for each b in the codomain."""
    out = []
    for b in range(f.cod.size):
        els = [a for a in range(f.dom.size) if f.table[a] == b]
        out.append((b, els, sub_poset(f.dom.poset, els)))
    return out


def fibers_complete(f: SPosetMap) -> bool:
    return incomplete_fiber(f) is None


def incomplete_fiber(f: SPosetMap) -> Optional[tuple]:
    """(b, elements) of the first fiber that is not a complete lattice."""
    for b, els, P in fibers(f):
        if not is_complete_lattice(P):
            return b, els
    return None


@dataclass(frozen=True)
class SquareFailure:
    V: object
    U: tuple
    u: tuple   # U -> dom f
    v: tuple   # V -> cod f
    reason: str = "no filler"


def is_slice_emb_injective_bounded(f: SPosetMap, k: int, refuters: bool = True,
                                   budget: Optional[Budget] = None, cache=None) -> PropertyVerdict:
    """Every square (u: U -> X, v: V -> B, f u = v h) with |V| <= k has a filler.

    With ``refuters`` the necessary conditions (every fiber a complete lattice,
    f split epi) are tried first and short-circuit the search.
    """
    mode = "bounded:%d" % k
    name = "slice_emb_injective"
    X, B = f.dom, f.cod
    if refuters:
        if not fibers_complete(f):
            bad = next(b for b, _, P in fibers(f) if not is_complete_lattice(P))
            return PropertyVerdict(name, False, ("fiber_not_complete", bad), mode)
        if not is_split_epi(f):
            return PropertyVerdict(name, False, ("not_split_epi",), mode)
    fib = [set(a for a in range(X.size) if f.table[a] == b) for b in range(B.size)]
    for V, U, sub in emb_test_family(X.over, k, cache):
        for v in iter_tables(V, B, budget=budget):
            allowed_u = [fib[v[x]] for x in U]
            us = iter_tables(sub, X, allowed=allowed_u, budget=budget) if U else iter([()])
            for u in us:
                if budget is not None:
                    budget.tick()
                fixed = {x: u[i] for i, x in enumerate(U)}
                allowed = [fib[v[x]] for x in range(V.size)]
                if first_map(V, X, fixed=fixed, allowed=allowed, budget=budget) is None:
                    return PropertyVerdict(name, False, SquareFailure(V, tuple(U), u, v), mode)
    return PropertyVerdict(name, True, None, mode)
