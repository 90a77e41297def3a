"""Theorem checks swept over enumerated universes of pomonoids and S-posets.

Each check yields *instances* (small dicts of objects) for a pomonoid and
decides each one as verified, inconclusive or violation.  Exact checks never
return inconclusive except when an instance is over the hom-set budget.
Bounded checks only ever upgrade to verified on an exact refutation of a
hypothesis or an exact conclusion.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Callable, Iterable, Optional

import numpy as np

from .core import Pomonoid, PosactError, SPoset, SPosetMap, find_isomorphism, is_map_table
from .constructions import (
    MapSet,
    canonical_homs,
    coproduct,
    cyclic_sub,
    end_pomonoid,
    endomorphism_retracts,
    hom_left_arrays,
    hom_left_sposet,
    hom_right_arrays,
    hom_right_sposet,
    hom_tables,
    idempotent_sub,
    is_pomonoid_iso,
    left_end_view,
    principal_poideal_sposet,
    product,
    regular_representation,
    tautological_biposet,
)
from .decide import (
    cyclic_retract_search,
    is_complete_lattice,
    is_cyclic_projective,
    is_d_injective,
    is_emb_injective_bounded,
    is_free,
    is_generator,
    is_projective,
    is_projective_generator,
    replay_generator,
    replay_retract,
)
from .enumeration import canonical_sposet_key, pomonoid_universe, sposet_universe
from .green import green_related, idempotents, is_left_simple, is_regular_pomonoid
from .search import Budget, _fingerprint, count_tables, iter_tables
from .slice import all_sections, fibers, fibers_complete, is_slice_emb_injective_bounded, is_split_epi

VERIFIED, INCONCLUSIVE, VIOLATION = "verified", "inconclusive", "violation"

SPLIT_EPI_NOTE = ("slice hypotheses are taken as 'f is a split epimorphism' "
                  "(the consequence every proof uses); split epis are enumerated "
                  "as idempotent endomaps, one per isomorphism class of retract")


class UnknownTheoremId(PosactError):
    pass


class UnknownClaimId(PosactError):
    pass


@dataclass(frozen=True)
class Universe:
    max_order: int = 4
    max_size: int = 4
    bound: int = 3
    cache: Optional[str] = None
    budget: Optional[int] = None
    max_hom: int = 256

    def pomonoids(self) -> list:
        return pomonoid_universe(self.max_order, self.cache)

    def sposets(self, S: Pomonoid, max_size: Optional[int] = None) -> list:
        return sposet_universe(S, self.max_size if max_size is None else max_size, self.cache)

    def new_budget(self) -> Optional[Budget]:
        return None if self.budget is None else Budget(self.budget)

    def describe(self) -> str:
        return "max_order=%d,max_size=%d,bound=%d,max_hom=%d" % (
            self.max_order, self.max_size, self.bound, self.max_hom)


@dataclass(frozen=True)
class TheoremCheck:
    id: str
    claim: str
    mode: str
    instances: Callable[[Pomonoid, Universe], Iterable[dict]]
    check: Callable[[dict, Universe], tuple]
    note: str = ""
    once: bool = False  # instances do not depend on the pomonoid universe


@dataclass
class VerificationReport:
    theorem: str
    mode: str
    universe: str
    notes: list = field(default_factory=list)
    instances: int = 0
    verified: int = 0
    inconclusive: int = 0
    violations: list = field(default_factory=list)  # (message, payload)
    witness_files: list = field(default_factory=list)
    messages: dict = field(default_factory=dict)  # inconclusive reasons -> count

    @property
    def status(self) -> str:
        if self.violations:
            return VIOLATION
        return INCONCLUSIVE if self.inconclusive else VERIFIED

    def text(self) -> str:
        lines = ["theorem=%s mode=%s universe=%s" % (self.theorem, self.mode, self.universe)]
        lines += ["# note: %s" % n for n in self.notes]
        lines.append("instances=%d verified=%d inconclusive=%d violations=%d" % (
            self.instances, self.verified, self.inconclusive, len(self.violations)))
        for reason in sorted(self.messages):
            lines.append("# inconclusive: %s (%d)" % (reason, self.messages[reason]))
        for msg, _ in self.violations:
            lines.append("# violation: %s" % msg)
        for w in self.witness_files:
            lines.append("witness=%s" % w)
        lines.append("status=%s" % self.status)
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# memoised properties (per process)


@lru_cache(maxsize=100000)
def _gen(A: SPoset) -> bool:
    v = is_generator(A)
    if v.value:
        assert replay_generator(v.witness)
    return v.value


@lru_cache(maxsize=100000)
def _cp(A: SPoset) -> bool:
    v = is_cyclic_projective(A)
    if v.value:
        assert replay_retract(v.witness)
    return v.value


@lru_cache(maxsize=100000)
def _proj(A: SPoset) -> bool:
    return is_projective(A).value


@lru_cache(maxsize=100000)
def _free(A: SPoset) -> bool:
    return is_free(A).value


@lru_cache(maxsize=20000)
def _emb(A: SPoset, k: int) -> bool:
    return is_emb_injective_bounded(A, k).value


@lru_cache(maxsize=100000)
def _end(A: SPoset):
    return end_pomonoid(A, validate=False)


@lru_cache(maxsize=1000)
def _idem_subs(S: Pomonoid) -> tuple:
    return tuple((e, idempotent_sub(S, e)) for e in idempotents(S))


def _iso(A: SPoset, B: SPoset) -> bool:
    return find_isomorphism(A, B) is not None


def _times_S(A: SPoset) -> SPoset:
    return product(A, regular_representation(A.over), validate=False).obj


def _J1(S, e) -> bool:
    return green_related(S, "J", e, S.identity)


def _D1(S, e) -> bool:
    return green_related(S, "D", e, S.identity)


@lru_cache(maxsize=100000)
def retract_classes(A: SPoset) -> tuple:
    """(f, g, B): one split epi A -> B with section g per iso class of B."""
    firsts, done = [], set()
    for f, g in endomorphism_retracts(A, _end(A), validate=False):
        if id(f.cod) not in done:
            done.add(id(f.cod))
            firsts.append((f, g, f.cod))
    # the canonical key is only needed where a cheap invariant collides
    groups: dict = {}
    for item in firsts:
        groups.setdefault(_invariant(item[2]), []).append(item)
    keep = set()
    for items in groups.values():
        seen = set()
        for item in items:
            key = canonical_sposet_key(item[2]) if len(items) > 1 else None
            if key not in seen:
                seen.add(key)
                keep.add(id(item[2]))
    return tuple(item for item in firsts if id(item[2]) in keep)


def _invariant(B: SPoset) -> tuple:
    return (B.size, sum(map(sum, B.leq)), tuple(sorted(_fingerprint(B, y) for y in range(B.size))))


def _ok(cond: bool, msg: str) -> tuple:
    return (VERIFIED, "") if cond else (VIOLATION, msg)


# ---------------------------------------------------------------------------
# instance generators


def _per_A(S, U):
    for A in U.sposets(S):
        yield {"S": S, "A": A}


def _per_S(S, U):
    yield {"S": S}


def _per_idempotent(S, U):
    for e in idempotents(S):
        yield {"S": S, "e": e}


def _per_element(S, U):
    for z in range(S.size):
        yield {"S": S, "z": z}


def _per_retract(S, U):
    for A in U.sposets(S):
        yield {"S": S, "A": A}
        for f, g, B in retract_classes(A):
            yield {"S": S, "A": A, "B": B, "f": f, "g": g}


# ---------------------------------------------------------------------------
# checks: generators, projectives, free objects


def _check_P21(p, U):
    A = p["A"]
    fast, slow = is_cyclic_projective(A), cyclic_retract_search(A)
    if slow.value:
        assert replay_retract(slow.witness)
    return _ok(fast.value == slow.value, "criterion=%s search=%s" % (fast.value, slow.value))


def _check_P22(p, U):
    S, A = p["S"], p["A"]
    lhs = _cp(A) and _gen(A)
    rhs = any(_J1(S, e) and _iso(eS, A) for e, eS in _idem_subs(S))
    return _ok(lhs == rhs, "cyclic projective generator=%s, iso to eS with eJ1=%s" % (lhs, rhs))


def _per_A_commutative(S, U):
    if S.is_commutative:
        yield from _per_A(S, U)


def _check_P23(p, U):
    S, A = p["S"], p["A"]
    if not (_cp(A) and _gen(A)):
        return VERIFIED, ""
    return _ok(_iso(regular_representation(S), A), "cyclic projective generator not iso to S_S")


def _per_cyclic(S, U):
    for A in U.sposets(S):
        seen = set()
        for a in range(A.size):
            orb = frozenset(A.act[a])
            if orb not in seen:
                seen.add(orb)
                yield {"S": S, "A": A, "a": a}


def _check_P24(p, U):
    S, A, a = p["S"], p["A"], p["a"]
    C = cyclic_sub(A, a)
    lhs = cyclic_retract_search(C).value
    rhs = any(_iso(eS, C) for _, eS in _idem_subs(S))
    return _ok(lhs == rhs, "aS projective=%s, iso to some eS=%s" % (lhs, rhs))


def _check_T25(p, U):
    A = p["A"]
    lhs = is_projective_generator(A).value
    rhs = _proj(A) and _gen(A)
    return _ok(lhs == rhs, "decomposition criterion=%s, projective and generator=%s" % (lhs, rhs))


def _extended_universe(S, U, with_coproducts=False) -> list:
    objs = list(U.sposets(S))
    R = regular_representation(S)
    for e, eS in _idem_subs(S):
        objs.append(eS)
        if with_coproducts:
            objs.append(coproduct(R, eS).obj)
    return objs


def _three_way(S, U):
    objs = _extended_universe(S, U)
    i = all(_gen(A) for A in objs if _proj(A))
    ii = all(_gen(A) for A in objs if _cp(A))
    iii = all(_J1(S, e) for e in idempotents(S))
    return i, ii, iii


def _check_T27(p, U):
    i, ii, iii = _three_way(p["S"], U)
    return _ok(i == ii == iii, "(i)=%s (ii)=%s (iii)=%s" % (i, ii, iii))


def _check_P26(p, U):
    S, e = p["S"], p["e"]
    if not _gen(idempotent_sub(S, e)):
        return VERIFIED, ""
    return _ok(_gen(principal_poideal_sposet(S, e)), "eS generator but down(eS) is not")


def lemma_pair(S: Pomonoid, z: int) -> Optional[tuple]:
    """(x, y) with 1 <= yx and za <= zb implying ya <= yb, or None."""
    m, leq, n = S.mult, S.leq, S.size
    for y in range(n):
        if not all(leq[m[y][a]][m[y][b]] for a in range(n) for b in range(n) if leq[m[z][a]][m[z][b]]):
            continue
        for x in range(n):
            if leq[S.identity][m[y][x]]:
                return (x, y)
    return None


def _check_L28(p, U):
    S, z = p["S"], p["z"]
    if not _gen(principal_poideal_sposet(S, z)):
        return VERIFIED, ""
    return _ok(lemma_pair(S, z) is not None, "down(zS) generator but no (x, y) exists")


def _per_S_top(S, U):
    if S.one_is_top:
        yield {"S": S}


def _check_T210(p, U):
    S = p["S"]
    i, ii, iii = _three_way(S, U)
    iv = all(_gen(principal_poideal_sposet(S, e)) for e in idempotents(S))
    return _ok(i == ii == iii == iv, "(i)=%s (ii)=%s (iii)=%s (iv)=%s" % (i, ii, iii, iv))


def _check_L212(p, U):
    S, e = p["S"], p["e"]
    lhs, rhs = _free(idempotent_sub(S, e)), _D1(S, e)
    return _ok(lhs == rhs, "eS free=%s, e D 1=%s" % (lhs, rhs))


def _check_T213(p, U):
    S = p["S"]
    objs = _extended_universe(S, U, with_coproducts=True)
    i = all(_free(A) for A in objs if _proj(A))
    ii = all(_free(A) for A in objs if _proj(A) and _gen(A))
    iii = all(_free(A) for A in objs if _cp(A))
    iv = all(_D1(S, e) for e in idempotents(S))
    return _ok(i == ii == iii == iv, "(i)=%s (ii)=%s (iii)=%s (iv)=%s" % (i, ii, iii, iv))


# ---------------------------------------------------------------------------
# checks: injectivity in Pos-S


def _check_T32(p, U):
    A = p["A"]
    k = U.bound
    if not is_emb_injective_bounded(_times_S(A), k, budget=U.new_budget()).value:
        return VERIFIED, ""
    if _emb(A, k):
        return INCONCLUSIVE, "both sides hold up to the bound"
    return INCONCLUSIVE, "A x S passes at the bound while A fails"


def _check_P34(p, U):
    A = p["A"]
    if not is_d_injective(_times_S(A), "all").value:
        return VERIFIED, ""
    return _ok(is_d_injective(A, "all").value, "A x S d-injective but A is not")


def _per_T35(S, U):
    if not S.one_is_top:
        return
    yield {"S": S}
    if is_regular_pomonoid(S):
        for A in U.sposets(S):
            yield {"S": S, "A": A}


def _check_T35(p, U):
    S = p["S"]
    if "A" in p:
        return _ok(is_d_injective(p["A"], "principal").value,
                   "regular S but A not principally d-injective")
    ii = all(is_d_injective(principal_poideal_sposet(S, s), "principal").value for s in range(S.size))
    iv = is_regular_pomonoid(S)
    return _ok(ii == iv, "(ii)=%s (iv)=%s" % (ii, iv))


def _check_C36(p, U):
    S = p["S"]
    if is_left_simple(S):
        return VERIFIED, ""
    for G in U.sposets(S):
        if _gen(G) and not _emb(G, U.bound):
            return VERIFIED, ""
    return INCONCLUSIVE, "no generator failing embedding injectivity within the bound"


def _check_P37(p, U):
    A = p["A"]
    if not is_complete_lattice(_times_S(A).poset):
        return VERIFIED, ""
    return _ok(is_complete_lattice(A.poset), "A x S complete but A is not")


# ---------------------------------------------------------------------------
# checks: slice category


def _per_P39(S, U):
    k = U.bound
    small = U.sposets(S, min(k, U.max_size))
    for A in small:
        for B in small:
            for t in iter_tables(A, B):
                yield {"S": S, "A": A, "B": B, "f": SPosetMap(A, B, t)}


def _check_P39(p, U):
    f = p["f"]
    if is_split_epi(f):
        return VERIFIED, ""
    raw = is_slice_emb_injective_bounded(f, U.bound, refuters=False, budget=U.new_budget())
    return _ok(not raw.value, "passes bounded slice injectivity but has no section")


def _diamond_instances(S, U):
    from . import fixtures

    yield {"S": fixtures.S2(), "A": fixtures.X(), "B": fixtures.B(), "f": fixtures.f()}


def _check_R311(p, U):
    f = p["f"]
    secs = [s.table for s in all_sections(f)]
    fib = [els for _, els, _ in fibers(f)]
    facts = {
        "split": is_split_epi(f),
        "unique_section": secs == [(1, 3)],
        "fiber_0": fib[0] == [0, 1, 2],
        "fibers_incomplete": not fibers_complete(f),
        "onto": len(set(f.table)) == f.cod.size,
        "raw_bounded_false": not is_slice_emb_injective_bounded(f, max(U.bound, 3), refuters=False).value,
        "refuted": not is_slice_emb_injective_bounded(f, max(U.bound, 3)).value,
    }
    bad = [k for k, v in facts.items() if not v]
    return _ok(not bad, "failed facts: %s" % ",".join(bad))


def _hom_or_none(B, A, U):
    return hom_tables(B, A, U.max_hom)


@lru_cache(maxsize=100000)
def _hom_count(B: SPoset, A: SPoset, limit: int) -> int:
    return count_tables(B, A, limit)


# Certificates: a candidate epi H -> T_T (generator) or retraction pair
# T_T -> H -> T_T (cyclic projective), checked as S-poset maps.  When the
# candidate fails the full decision procedure is run instead, so a
# certificate can only speed up a true verdict, never produce one.


class _Hom:
    """A hom-poset kept as arrays; the S-poset itself is only built on demand."""

    def __init__(self, side: str, B: SPoset, A: SPoset, end, maps: MapSet):
        self.side, self.B, self.A, self.end, self.maps = side, B, A, end, maps
        self.over = end.pomonoid if side == "right" else end.opposite
        self.size = len(maps)
        if self.size:
            build = hom_right_arrays if side == "right" else hom_left_arrays
            self.act, self.leq = build(B, A, end, maps)

    def sposet(self) -> SPoset:
        build = hom_right_sposet if self.side == "right" else hom_left_sposet
        return build(self.B, self.A, self.end, self.maps.maps, validate=False)


def _map_arrays(act_d, leq_d, act_c, leq_c, t) -> bool:
    if not (t[act_d] == act_c[t]).all():
        return False
    return not (leq_d & ~leq_c[t[:, None], t[None, :]]).any()


def _regular_arrays(T: Pomonoid):
    c = T.__dict__.get("_regular_arrays")
    if c is None:
        c = (np.asarray(T.mult, dtype=np.intp), T.poset.matrix)
        object.__setattr__(T, "_regular_arrays", c)
    return c


def _epi_certified(H: _Hom, table) -> bool:
    if not H.size:
        return False
    t = np.asarray(table, dtype=np.intp)
    M, L = _regular_arrays(H.over)
    return len(np.unique(t)) == H.over.size and _map_arrays(H.act, H.leq, M, L, t)


def _retract_certified(H: _Hom, gamma, pi) -> bool:
    if not H.size:
        return False
    gamma, pi = np.asarray(gamma, dtype=np.intp), np.asarray(pi, dtype=np.intp)
    M, L = _regular_arrays(H.over)
    return ((pi[gamma] == np.arange(H.size)).all()
            and _map_arrays(H.act, H.leq, M, L, gamma) and _map_arrays(M, L, H.act, H.leq, pi))


def _generator(H: _Hom, candidate) -> bool:
    return _epi_certified(H, candidate) or _gen(H.sposet())


def _cyclic_projective(H: _Hom, gamma, pi) -> bool:
    return _retract_certified(H, gamma, pi) or _cp(H.sposet())


def _check_T310(p, U):
    A = p["A"]
    if "f" not in p:
        if not _gen(A):
            return VERIFIED, ""
        return _ok(_cp(left_end_view(A, _end(A), validate=False)), "A generator but End(A)A not cyclic projective")
    if not _gen(p["B"]):
        return VERIFIED, ""
    return _ok(_gen(A), "split epi onto a generator from a non-generator")


def _check_T311(p, U):
    A = p["A"]
    if "f" not in p:
        if not _cp(A):
            return VERIFIED, ""
        return _ok(_gen(left_end_view(A, _end(A), validate=False)), "A cyclic projective but End(A)A not a generator")
    if not _cp(A):
        return VERIFIED, ""
    return _ok(_cp(p["B"]), "split epi from a cyclic projective onto a non-cyclic-projective")


@lru_cache(maxsize=100000)
def retract_homs(A: SPoset, f: SPosetMap, g: SPosetMap) -> tuple:
    """(Pos(B, A), Pos(A, B)) as MapSets for f: A -> B with section g, read off End(A).

    h = h o f o g for h: B -> A and h = f o (g o h) for h: A -> B, so both
    hom-sets are images of End(A).
    """
    TA = _end(A).mapset.array
    F, G = np.asarray(f.table, dtype=np.intp), np.asarray(g.table, dtype=np.intp)
    return MapSet.unique(TA[:, G], A.size), MapSet.unique(F[TA], f.cod.size)


def _check_T312(p, U):
    if "f" not in p:
        return VERIFIED, ""
    A, B, f, g = p["A"], p["B"], p["f"], p["g"]
    hBA, hAB = retract_homs(A, f, g)
    if len(hBA) > U.max_hom or len(hAB) > U.max_hom:
        return INCONCLUSIVE, "hom-set larger than max_hom"
    eA, eB = _end(A), _end(B)
    F, G = np.asarray(f.table, dtype=np.intp), np.asarray(g.table, dtype=np.intp)
    MBA, MAB, TA = hBA.array, hAB.array, eA.mapset.array
    pos_A, pos_B = eA.mapset.positions, eB.mapset.positions
    claims = {
        # h |-> f o h
        "(i)": _generator(_Hom("right", B, A, eB, hBA), pos_B(F[MBA])),
        # h |-> h o g
        "(ii)": _generator(_Hom("left", A, B, eB, hAB), pos_B(MAB[:, G])),
        # h |-> h o f, t |-> t o g
        "(iii)": _cyclic_projective(_Hom("left", B, A, eA, hBA), pos_A(MBA[:, F]), hBA.positions(TA[:, G])),
        # h |-> g o h, t |-> f o t
        "(iv)": _cyclic_projective(_Hom("right", A, B, eA, hAB), pos_A(G[MAB]), hAB.positions(F[TA])),
    }
    bad = [k for k, v in claims.items() if not v]
    return _ok(not bad, "failed %s" % ",".join(bad))


def _per_P313(S, U):
    for p in _per_retract(S, U):
        if "f" in p:
            yield p


def _per_P313i(S, U):
    k = U.bound
    for A in U.sposets(S):
        if _emb(A, k):
            for B in U.sposets(S, min(k, U.max_size)):
                yield {"S": S, "A": A, "B": B, "case": 1}


def _check_P313(p, U):
    if "B" not in p:
        return VERIFIED, ""
    A, B = p["A"], p["B"]
    eB = _end(B)
    # h |-> h o proj is injective, so these bound the hom-set from below
    n_AB = len(retract_homs(A, p["f"], p["g"])[1]) if "g" in p else _hom_count(A, B, U.max_hom)
    if len(eB.maps) > U.max_hom or n_AB > U.max_hom:
        return INCONCLUSIVE, "hom-set larger than max_hom"
    AB = product(A, B, validate=False).obj
    h = _hom_or_none(AB, B, U)
    if h is None:
        return INCONCLUSIVE, "hom-set larger than max_hom"
    h = MapSet(h, B.size)
    H = _Hom("left", AB, B, eB, h)
    x = p["g"].table if "g" in p else next(iter_tables(B, A), None)
    cand = None
    if x is not None:
        # h |-> h o (x, id)
        pair = np.asarray([x[b] * B.size + b for b in range(B.size)], dtype=np.intp)
        cand = eB.mapset.positions(h.array[:, pair])
    ok = (cand is not None and _epi_certified(H, cand)) or _gen(H.sposet())
    if p.get("case") == 1:
        return (VERIFIED, "") if ok else (INCONCLUSIVE, "case (i) fails with embedding injectivity only bounded")
    return _ok(ok, "Pos(A x B, B) not a generator over End(B)")


def _check_P314(p, U):
    if "f" not in p:
        return VERIFIED, ""
    A, B = p["A"], p["B"]
    if not _cp(product(A, B, validate=False).obj):
        return VERIFIED, ""
    E = _end(A)
    X = tautological_biposet(A, E)
    hom = canonical_homs(X)
    if not is_pomonoid_iso(X.left_over, hom.end_right.pomonoid, hom.lam):
        return VIOLATION, "tautological lambda is not an isomorphism"
    return _ok(_gen(X.left_view()), "A not a generator as a left End(A)-poset")


# ---------------------------------------------------------------------------
# registry


def _T(id, claim, mode, inst, check, note="", once=False):
    return TheoremCheck(id, claim, mode, inst, check, note, once)


REGISTRY = {c.id: c for c in [
    _T("P2.1", "cyclic projective iff retract of S_S", "exact", _per_A, _check_P21),
    _T("P2.2", "cyclic projective generator iff iso to eS with e J 1", "exact", _per_A, _check_P22),
    _T("P2.3", "commutative S: cyclic projective generators are iso to S_S", "exact",
       _per_A_commutative, _check_P23),
    _T("P2.4", "aS projective iff aS iso to eS for an idempotent e", "exact", _per_cyclic, _check_P24),
    _T("T2.5", "projective generator iff coproduct of eS's with some e J 1", "exact", _per_A, _check_T25),
    _T("P2.6", "eS generator implies down(eS) generator", "exact", _per_idempotent, _check_P26),
    _T("T2.7", "projectives generators <=> cyclic projectives generators <=> all e J 1", "exact",
       _per_S, _check_T27, "universe extended by eS for every idempotent e"),
    _T("L2.8", "down(zS) generator gives x, y with 1 <= yx and z-order reflected by y", "exact",
       _per_element, _check_L28),
    _T("T2.10", "1 top: (i)-(iii) of T2.7 <=> every down(eS) generator", "exact", _per_S_top, _check_T210,
       "universe extended by eS for every idempotent e"),
    _T("L2.12", "eS free iff e D 1", "exact", _per_idempotent, _check_L212),
    _T("T2.13", "projectives free <=> projective generators free <=> cyclic projectives free <=> all e D 1",
       "exact", _per_S, _check_T213, "universe extended by eS and S_S + eS for every idempotent e"),
    _T("T3.2", "per A: A x S embedding-injective implies A embedding-injective", "bounded", _per_A, _check_T32,
       "per-object bounded rendering of a statement about all generators"),
    _T("P3.4", "per A: A x S d-injective implies A d-injective", "exact", _per_A, _check_P34),
    _T("T3.5", "1 top: principal poideals principally d-injective <=> S regular; regular => all A", "exact",
       _per_T35, _check_T35),
    _T("C3.6", "S not left simple => some generator is not embedding-injective", "bounded", _per_S, _check_C36),
    _T("P3.7", "per A: A x S complete implies A complete", "exact", _per_A, _check_P37),
    _T("P3.9", "bounded slice embedding-injective implies split epi", "bounded", _per_P39, _check_P39,
       "objects of size <= bound; refuters disabled so the raw search is what is checked"),
    _T("R3.11", "the diamond-over-chain map is split epi but not slice injective", "exact",
       _diamond_instances, _check_R311, once=True),
    _T("T3.10", "split epi onto a generator; generator A makes End(A)A cyclic projective", "exact",
       _per_retract, _check_T310, SPLIT_EPI_NOTE),
    _T("T3.11", "split epi from a cyclic projective; cyclic projective B makes End(B)B a generator", "exact",
       _per_retract, _check_T311, SPLIT_EPI_NOTE),
    _T("T3.12", "split epi f: four hom-poset generator / cyclic projective claims", "exact",
       _per_retract, _check_T312, SPLIT_EPI_NOTE),
    _T("P3.13", "split epi A -> B: Pos(A x B, B) is a generator over End(B)", "exact",
       _per_P313, _check_P313, SPLIT_EPI_NOTE),
    _T("P3.13i", "A embedding-injective, |B| <= bound: Pos(A x B, B) is a generator over End(B)",
       "bounded", _per_P313i, _check_P313, "embedding injectivity of A is the bounded test"),
    _T("P3.14", "A x B cyclic projective, split epi, lambda iso => TA generator", "exact",
       _per_retract, _check_P314, SPLIT_EPI_NOTE + "; T is taken as End(A) with lambda the identity"),
]}

ALIASES = {"P2.9": "T2.10"}

EXACT_SUITE = ("P2.1", "P2.2", "P2.3", "P2.4", "T2.5", "P2.6", "T2.7", "L2.8", "T2.10", "L2.12",
               "T2.13", "T3.5", "T3.10", "T3.11", "T3.12", "P3.13", "P3.14")


def get_check(theorem_id: str) -> TheoremCheck:
    tid = ALIASES.get(theorem_id, theorem_id)
    if tid not in REGISTRY:
        raise UnknownTheoremId(theorem_id)
    return REGISTRY[tid]


# ---------------------------------------------------------------------------
# running


def _run_task(args) -> list:
    tid, idx, U = args
    c = REGISTRY[tid]
    S = None if idx is None else U.pomonoids()[idx]
    out = []
    for payload in c.instances(S, U):
        status, msg = c.check(payload, U)
        out.append((status, msg, payload if status == VIOLATION else None))
    return out


def verify(theorem_id: str, universe: Optional[Universe] = None, jobs: int = 1,
           witness_dir: Optional[str] = None) -> VerificationReport:
    U = universe or Universe()
    c = get_check(theorem_id)
    notes = ([c.note] if c.note else [])
    rep = VerificationReport(c.id, c.mode, "fixture" if c.once else U.describe(), notes)
    tasks = [(c.id, None, U)] if c.once else [(c.id, i, U) for i in range(len(U.pomonoids()))]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_run_task, tasks))
    else:
        results = [_run_task(t) for t in tasks]
    for res in results:
        for status, msg, payload in res:
            rep.instances += 1
            if status == VERIFIED:
                rep.verified += 1
            elif status == INCONCLUSIVE:
                rep.inconclusive += 1
                rep.messages[msg] = rep.messages.get(msg, 0) + 1
            else:
                rep.violations.append((msg, payload))
    if witness_dir is not None:
        for n, (msg, payload) in enumerate(rep.violations):
            d = Path(witness_dir) / ("%s-%d" % (c.id, n))
            write_witness(d, c.id, payload, msg)
            rep.witness_files.append(str(d))
    return rep


# ---------------------------------------------------------------------------
# witnesses


def write_witness(d, theorem_id: str, payload: dict, message: str = "") -> None:
    from .textio import serialize

    d = Path(d)
    d.mkdir(parents=True, exist_ok=True)
    refs = {id(v): k for k, v in payload.items() if not isinstance(v, int)}
    params = ["theorem: %s" % theorem_id]
    if message:
        params.append("# %s" % message)
    for key in sorted(payload, key=lambda k: (not isinstance(payload[k], Pomonoid), k)):
        v = payload[key]
        if isinstance(v, int):
            params.append("%s: %d" % (key, v))
            continue
        if isinstance(v, SPoset) and id(v.over) not in refs:
            # an equal pomonoid object may be named instead
            same = [k for k, w in payload.items() if isinstance(w, Pomonoid) and w == v.over]
            if not same:
                raise ValueError("witness S-poset over an unnamed pomonoid")
            refs[id(v.over)] = same[0]
        (d / (key + ".pos")).write_text(serialize(v, name=key, refs=refs), encoding="utf-8")
        params.append("object: %s" % key)
    (d / "params").write_text("\n".join(params) + "\n", encoding="utf-8")


def load_witness(d) -> tuple:
    from .textio import Workspace

    d = Path(d)
    ws = Workspace([d])
    tid, payload = None, {}
    for line in (d / "params").read_text(encoding="utf-8").splitlines():
        if not line or line.startswith("#"):
            continue
        key, _, value = line.partition(":")
        key, value = key.strip(), value.strip()
        if key == "theorem":
            tid = value
        elif key == "object":
            payload[value] = ws.get(value)
        else:
            payload[key] = int(value)
    return tid, payload


def replay(d, universe: Optional[Universe] = None) -> tuple:
    """Re-run the check on a serialized instance; returns (status, message)."""
    tid, payload = load_witness(d)
    return get_check(tid).check(payload, universe or Universe())


# ---------------------------------------------------------------------------
# counterexample search


def _cx_split_not_slice(S, U):
    k = U.bound
    for A in U.sposets(S):
        for f, g, B in retract_classes(A):
            v = is_slice_emb_injective_bounded(f, k, refuters=False, budget=U.new_budget())
            if not v.value:
                return {"S": S, "A": A, "B": B, "f": f}
    return None


def _cx_projective_not_generator(S, U):
    for A in _extended_universe(S, U):
        if _proj(A) and not _gen(A):
            return {"S": S, "A": A}
    return None


def _cx_generator_not_free(S, U):
    for A in _extended_universe(S, U, with_coproducts=True):
        if _proj(A) and _gen(A) and not _free(A):
            return {"S": S, "A": A}
    return None


def _cx_split_fiber_complete_not_slice(S, U):
    k = U.bound
    for A in U.sposets(S):
        for f, g, B in retract_classes(A):
            if not fibers_complete(f):
                continue
            if not is_slice_emb_injective_bounded(f, k, refuters=False, budget=U.new_budget()).value:
                return {"S": S, "A": A, "B": B, "f": f}
    return None


CLAIMS = {
    "split-epi-not-slice-injective": _cx_split_not_slice,
    "projective-not-generator": _cx_projective_not_generator,
    "generator-not-free": _cx_generator_not_free,
    "split-epi-fiber-complete-not-slice-injective": _cx_split_fiber_complete_not_slice,
}


def counterexample_search(claim_id: str, universe: Optional[Universe] = None,
                          pomonoids: Optional[list] = None) -> Optional[dict]:
    """First witness in canonical order, or None if absent within the bounds."""
    if claim_id not in CLAIMS:
        raise UnknownClaimId(claim_id)
    U = universe or Universe()
    for S in (pomonoids if pomonoids is not None else U.pomonoids()):
        w = CLAIMS[claim_id](S, U)
        if w is not None:
            return w
    return None


def write_counterexample(d, claim_id: str, payload: dict) -> None:
    write_witness(d, "search:" + claim_id, payload)


def default_jobs() -> int:
    return os.cpu_count() or 1
