"""Decision procedures for S-poset properties.

Every procedure returns a :class:`PropertyVerdict`; a true exact verdict
carries a witness that can be replayed through the validators in
:mod:`posact.core`.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Any, Optional

import numpy as np

from .core import (
    Poset,
    SPoset,
    SPosetMap,
    compose,
    find_isomorphism,
    identity_map,
    validate_map,
)
from .constructions import (
    free_sposet,
    idempotent_sub,
    regular_representation,
    sub_inclusion,
    sub_sposet,
)
from .green import enumerate_poideals, green_related, idempotents, principal_right_poideal
from .search import Budget, enumerate_maps, first_map, iter_tables

__all__ = [
    "PropertyVerdict",
    "enumerate_maps",
    "is_generator",
    "is_cyclic_projective",
    "cyclic_retract_search",
    "decompose",
    "components",
    "is_projective",
    "is_projective_generator",
    "is_free",
    "is_complete_lattice",
    "is_d_injective",
    "is_emb_injective_bounded",
    "act_closed_subsets",
]


@dataclass(frozen=True)
class PropertyVerdict:
    name: str
    value: bool
    witness: Any = None
    mode: str = "exact"  # "exact" or "bounded:k"

    def __bool__(self) -> bool:
        return self.value

    def line(self, witness_file: str = "-") -> str:
        return "property=%s value=%s mode=%s witness=%s" % (
            self.name, str(self.value).lower(), self.mode, witness_file)


# ---------------------------------------------------------------------------
# generators and cyclic projectives


@dataclass(frozen=True)
class GeneratorWitness:
    epi: SPosetMap      # A -> S_S, onto
    section: SPosetMap  # S_S -> A, s |-> a0.s with epi(a0) = 1


def is_generator(A: SPoset, budget: Optional[Budget] = None) -> PropertyVerdict:
    """Generator iff some S-poset map A -> S_S is onto."""
    S = A.over
    R = regular_representation(S)
    one = S.identity
    if A.size < S.size:
        return PropertyVerdict("generator", False)
    LA, LS = A.poset.matrix, S.poset.matrix
    for a0 in range(A.size):
        orbit = A.act[a0]
        # f(a0.s) = s, so s |-> a0.s must be an order embedding
        if len(set(orbit)) != S.size:
            continue
        o = np.asarray(orbit, dtype=np.intp)
        if np.any(LA[o[:, None], o[None, :]] & ~LS):
            continue
        t = next(iter_tables(A, R, fixed={a0: one}, budget=budget), None)
        if t is None:
            continue
        epi = SPosetMap(A, R, t)
        a_min = min(x for x in range(A.size) if t[x] == one)
        section = validate_map(R, A, A.act[a_min])
        return PropertyVerdict("generator", True, GeneratorWitness(epi, section))
    return PropertyVerdict("generator", False)


@dataclass(frozen=True)
class RetractWitness:
    pi: SPosetMap     # S_S -> A
    gamma: SPosetMap  # A -> S_S, pi o gamma = id_A
    generator: int = -1
    idempotent: int = -1


def is_cyclic_projective(A: SPoset) -> PropertyVerdict:
    """Retract of S_S.

    With a = pi(1) and e = gamma(a): A = aS, e is idempotent with ae = a, and
    es |-> as is an order isomorphism eS -> A (its inverse is gamma).
    """
    S = A.over
    n, m = A.size, S.size
    no = PropertyVerdict("cyclic_projective", False)
    if n == 0 or n > m:
        return no
    mult = S.mult
    cands = []
    for e in range(m):
        if mult[e][e] == e:
            els = sorted(set(mult[e]))
            if len(els) == n:
                cands.append((e, els))
    if not cands:
        return no
    leqA, leqS = A.leq, S.leq
    for a in range(n):
        row = A.act[a]
        if len(set(row)) != n:
            continue
        for e, els in cands:
            if row[e] != a:
                continue
            imgs = [row[x] for x in els]
            if len(set(imgs)) != n:
                continue
            if any(leqA[imgs[i]][imgs[j]] and not leqS[els[i]][els[j]]
                   for i in range(n) for j in range(n)):
                continue
            gamma_t = [0] * n
            for x, y in zip(els, imgs):
                gamma_t[y] = x
            R = regular_representation(S)
            pi = validate_map(R, A, row)
            gamma = validate_map(A, R, gamma_t)
            return PropertyVerdict("cyclic_projective", True, RetractWitness(pi, gamma, a, e))
    return no


def cyclic_retract_search(A: SPoset) -> PropertyVerdict:
    """Independent check: exhaustive search over all pairs (pi, gamma)."""
    R = regular_representation(A.over)
    pis = enumerate_maps(R, A)
    for gt in iter_tables(A, R):
        for pi in pis:
            if all(pi.table[gt[x]] == x for x in range(A.size)):
                return PropertyVerdict("cyclic_projective", True,
                                       RetractWitness(pi, SPosetMap(A, R, gt)))
    return PropertyVerdict("cyclic_projective", False)


# ---------------------------------------------------------------------------
# projectives and free objects


def components(A: SPoset) -> list:
    """Element lists of the connected pieces of (order + action edges), by least element."""
    parent = list(range(A.size))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)

    for a in range(A.size):
        for b in A.poset.up[a]:
            union(a, b)
        for y in A.act[a]:
            union(a, y)
    groups: dict = {}
    for a in range(A.size):
        groups.setdefault(find(a), []).append(a)
    return sorted(groups.values())


def decompose(A: SPoset) -> list:
    """A as a coproduct: one sub-S-poset per component."""
    parts = components(A)
    where = {a: i for i, p in enumerate(parts) for a in p}
    for a in range(A.size):
        assert all(where[b] == where[a] for b in A.poset.up[a])
        assert all(where[y] == where[a] for y in A.act[a])
    return [sub_sposet(A, p) for p in parts]


def _idempotent_subs(S):
    return [(e, idempotent_sub(S, e)) for e in idempotents(S)]


def is_projective(A: SPoset) -> PropertyVerdict:
    """Every component is isomorphic to eS for an idempotent e."""
    subs = _idempotent_subs(A.over)
    witness = []
    for part in decompose(A):
        for e, eS in subs:
            iso = find_isomorphism(eS, part)
            if iso is not None:
                witness.append((e, iso))
                break
        else:
            return PropertyVerdict("projective", False, part)
    return PropertyVerdict("projective", True, tuple(witness))


def is_projective_generator(A: SPoset) -> PropertyVerdict:
    """Projective with a component isomorphic to eS for some e J 1."""
    S = A.over
    subs = _idempotent_subs(S)
    witness, good = [], None
    for part in decompose(A):
        matches = [(e, iso) for e, eS in subs for iso in [find_isomorphism(eS, part)] if iso is not None]
        if not matches:
            return PropertyVerdict("projective_generator", False, part)
        pick = next(((e, i) for e, i in matches if green_related(S, "J", e, S.identity)), None)
        if pick is not None and good is None:
            good = len(witness)
        witness.append(pick or matches[0])
    if good is None:
        return PropertyVerdict("projective_generator", False)
    return PropertyVerdict("projective_generator", True, (good, tuple(witness)))


def is_free(A: SPoset) -> PropertyVerdict:
    """A is isomorphic to P x S for some poset P."""
    from .enumeration import enumerate_posets

    m = A.over.size
    if A.size == 0 or A.size % m:
        return PropertyVerdict("free", False)
    for P in enumerate_posets(A.size // m):
        F = free_sposet(A.over, P)
        iso = find_isomorphism(F, A)
        if iso is not None:
            return PropertyVerdict("free", True, (P, iso))
    return PropertyVerdict("free", False)


# ---------------------------------------------------------------------------
# lattices


def _join(P: Poset, a: int, b: int) -> Optional[int]:
    ubs = [c for c in range(P.size) if P.leq[a][c] and P.leq[b][c]]
    least = [c for c in ubs if all(P.leq[c][d] for d in ubs)]
    return least[0] if least else None


def _meet(P: Poset, a: int, b: int) -> Optional[int]:
    lbs = [c for c in range(P.size) if P.leq[c][a] and P.leq[c][b]]
    great = [c for c in lbs if all(P.leq[d][c] for d in lbs)]
    return great[0] if great else None


def is_complete_lattice(P: Poset) -> bool:
    n = P.size
    if n == 0:
        return False
    if not any(all(P.leq[x][t] for x in range(n)) for t in range(n)):
        return False
    if not any(all(P.leq[b][x] for x in range(n)) for b in range(n)):
        return False
    return all(_join(P, a, b) is not None and _meet(P, a, b) is not None
               for a, b in combinations(range(n), 2))


# ---------------------------------------------------------------------------
# injectivity


def _poideal_objects(S, scope: str) -> list:
    """(carrier, inclusion into S_S or None for the empty poideal)."""
    R = regular_representation(S)
    if scope == "principal":
        carriers = []
        for s in range(S.size):
            c = sorted(principal_right_poideal(S, s).carrier)
            if c not in carriers:
                carriers.append(c)
    elif scope == "all":
        carriers = [I.sorted() for I in enumerate_poideals(S, "right")]
    else:
        raise ValueError(scope)
    return [(c, sub_inclusion(R, c) if c else None) for c in carriers]


def is_d_injective(A: SPoset, scope: str = "all") -> PropertyVerdict:
    """Injective w.r.t. inclusions of (principal) right poideals into S_S.

    An extension v: S_S -> A is fixed by v(1) = a, so the question for each
    u: I -> A is whether some a has a.s = u(s) on I.
    """
    S = A.over
    name = "d_injective" if scope == "all" else "principal_d_injective"
    extensions = []
    for carrier, incl in _poideal_objects(S, scope):
        if incl is None:
            if A.size == 0:
                return PropertyVerdict(name, False, (carrier, None))
            extensions.append((tuple(carrier), (), 0))
            continue
        for u in iter_tables(incl.dom, A):
            a = next((a for a in range(A.size)
                      if all(A.act[a][s] == u[i] for i, s in enumerate(carrier))), None)
            if a is None:
                return PropertyVerdict(name, False, (tuple(carrier), u))
            extensions.append((tuple(carrier), u, a))
    return PropertyVerdict(name, True, tuple(extensions))


def extension_map(A: SPoset, a: int) -> SPosetMap:
    """v: S_S -> A with v(1) = a."""
    return validate_map(regular_representation(A.over), A, A.act[a])


def act_closed_subsets(V: SPoset) -> list:
    """All act-closed subsets of V (empty included), by (size, elements)."""
    n = V.size
    out = []
    for r in range(n + 1):
        for c in combinations(range(n), r):
            cs = set(c)
            if all(y in cs for x in c for y in V.act[x]):
                out.append(c)
    return out


@dataclass(frozen=True)
class EmbeddingFailure:
    V: SPoset
    U: tuple   # act-closed subset of V, included with the induced structure
    u: tuple   # u[i] = image of U[i] in A


def emb_test_family(S, k: int, cache=None) -> list:
    """(V, U, sub) for bounded embedding checks: V up to iso, U a proper
    act-closed subset of V, sub the induced S-poset on U (None when empty).

    U = V is left out since the identity always extends.
    """
    from .enumeration import sposet_universe

    memo = S.__dict__.setdefault("_emb_family", {})
    if k not in memo:
        out = []
        for V in sposet_universe(S, k, cache):
            for U in act_closed_subsets(V):
                if len(U) < V.size:
                    out.append((V, U, sub_sposet(V, U) if U else None))
        memo[k] = out
    return memo[k]


def is_emb_injective_bounded(A: SPoset, k: int, budget: Optional[Budget] = None,
                             cache=None) -> PropertyVerdict:
    """Extends along every embedding U -> V with |V| <= k.

    Every embedding is isomorphic to the inclusion of its image, so it suffices
    to let V run over S-posets up to isomorphism and U over act-closed subsets.
    """
    mode = "bounded:%d" % k
    V_prev, restrictions = None, None
    for V, U, sub in emb_test_family(A.over, k, cache):
        if V is not V_prev:
            # every map V -> A, once per V; u extends iff it is a restriction
            V_prev, ext = V, list(iter_tables(V, A, budget=budget))
            restrictions = {}
        key = tuple(U)
        if key not in restrictions:
            restrictions[key] = {tuple(t[x] for x in U) for t in ext}
        ok = restrictions[key]
        us = iter_tables(sub, A, budget=budget) if U else iter([()])
        for u in us:
            if budget is not None:
                budget.tick()
            if u not in ok:
                return PropertyVerdict("emb_injective", False, EmbeddingFailure(V, tuple(U), u), mode)
    return PropertyVerdict("emb_injective", True, None, mode)


def replay_generator(w: GeneratorWitness) -> bool:
    R = w.epi.cod
    ok = validate_map(w.epi.dom, R, w.epi.table) is not None
    return ok and compose(w.section, w.epi).table == identity_map(R).table


def replay_retract(w: RetractWitness) -> bool:
    return compose(w.gamma, w.pi).table == tuple(range(w.gamma.dom.size))
