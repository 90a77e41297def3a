"""Object-building constructions over a fixed pomonoid."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    Biposet,
    NotActClosed,
    Pomonoid,
    Poset,
    SPoset,
    SPosetMap,
    DomainMismatch,
    identity_map,
    sub_poset,
    validate_biposet,
    validate_map,
    validate_pomonoid,
    validate_sposet,
)
from .search import enumerate_maps, iter_tables


def regular_representation(S: Pomonoid) -> SPoset:
    """S acting on itself by right multiplication (built once per pomonoid).

    The S-poset axioms for S_S are the pomonoid axioms, so nothing is re-checked.
    """
    R = S.__dict__.get("_regular")
    if R is None:
        R = SPoset(S.poset, S, S.mult, name=None if S.name is None else S.name + "_S")
        object.__setattr__(S, "_regular", R)
    return R


def _sposet(P: Poset, S: Pomonoid, act, validate: bool) -> SPoset:
    if validate:
        return validate_sposet(P, S, act)
    return SPoset(P, S, tuple(tuple(r) for r in act))


def _restrict(A: SPoset, elements, name=None, validate: bool = True) -> tuple:
    els = sorted(elements)
    index = {a: i for i, a in enumerate(els)}
    for a in els:
        for y in A.act[a]:
            if y not in index:
                raise NotActClosed(sorted(elements))
    act = [[index[y] for y in A.act[a]] for a in els]
    if not validate:
        # an act-closed subset of an S-poset inherits every axiom
        B = SPoset(sub_poset(A.poset, els), A.over, tuple(map(tuple, act)), name)
        return B, SPosetMap(B, A, tuple(els))
    B = validate_sposet(sub_poset(A.poset, els), A.over, act, name)
    incl = validate_map(B, A, els)
    return B, incl


def sub_sposet(A: SPoset, elements, name=None) -> SPoset:
    return _restrict(A, elements, name)[0]


def sub_inclusion(A: SPoset, elements, name=None) -> SPosetMap:
    """Inclusion of an act-closed subset, with the induced order and action."""
    return _restrict(A, elements, name)[1]


def cyclic_sub(A: SPoset, a: int) -> SPoset:
    """aS with the restricted order and action."""
    return sub_sposet(A, set(A.act[a]))


def down_closed_sub(A: SPoset, subset) -> SPoset:
    """Sub-S-poset on the down-closure of an act-closed subset."""
    subset = set(subset)
    if any(y not in subset for a in subset for y in A.act[a]):
        raise NotActClosed(sorted(subset))
    down = {x for x in range(A.size) if any(A.leq[x][a] for a in subset)}
    # x <= a implies x.s <= a.s, so the down-closure stays act-closed
    return sub_sposet(A, down)


def idempotent_sub(S: Pomonoid, e: int) -> SPoset:
    """eS_S as a sub-S-poset of S_S."""
    return cyclic_sub(regular_representation(S), e)


def principal_poideal_sposet(S: Pomonoid, s: int) -> SPoset:
    """The principal right poideal down(sS) as a sub-S-poset of S_S."""
    R = regular_representation(S)
    return down_closed_sub(R, set(R.act[s]))


def free_sposet(S: Pomonoid, P: Poset) -> SPoset:
    """P x S with componentwise order; element (x, s) has index x*|S| + s."""
    m = S.size
    n = P.size * m
    leq = tuple(
        tuple(P.leq[i // m][j // m] and S.leq[i % m][j % m] for j in range(n)) for i in range(n)
    )
    act = [[(i // m) * m + S.mult[i % m][t] for t in range(m)] for i in range(n)]
    return validate_sposet(Poset(n, leq), S, act)


def free_unit(S: Pomonoid, P: Poset) -> tuple:
    """tau: P -> P x S, x |-> (x, 1), as a tuple of indices."""
    return tuple(x * S.size + S.identity for x in range(P.size))


@dataclass(frozen=True)
class Product:
    obj: SPoset
    proj_left: SPosetMap
    proj_right: SPosetMap

    def pair(self, f: SPosetMap, g: SPosetMap) -> SPosetMap:
        """The map x |-> (f(x), g(x))."""
        nb = self.proj_right.cod.size
        return validate_map(f.dom, self.obj, [f.table[x] * nb + g.table[x] for x in range(f.dom.size)])


def product(A: SPoset, B: SPoset, validate: bool = True) -> Product:
    """A x B; element (a, b) has index a*|B| + b."""
    if A.over is not B.over and A.over != B.over:
        raise DomainMismatch("over")
    nb = B.size
    n = A.size * nb
    leq = tuple(map(tuple, np.kron(A.poset.matrix, B.poset.matrix).astype(bool).tolist()))
    act = [[A.act[i // nb][s] * nb + B.act[i % nb][s] for s in range(A.over.size)] for i in range(n)]
    if not validate:
        order = Poset(n, leq)
        # a cover of a product moves exactly one coordinate along a cover
        order.__dict__["_covers"] = tuple(sorted(
            [(a * nb + b, c * nb + b) for a, c in A.poset.covers() for b in range(nb)]
            + [(a * nb + b, a * nb + d) for b, d in B.poset.covers() for a in range(A.size)]))
        P = SPoset(order, A.over, tuple(map(tuple, act)))
        return Product(P, SPosetMap(P, A, tuple(i // nb for i in range(n))),
                       SPosetMap(P, B, tuple(i % nb for i in range(n))))
    P = validate_sposet(Poset(n, leq), A.over, act)
    p1 = validate_map(P, A, [i // nb for i in range(n)])
    p2 = validate_map(P, B, [i % nb for i in range(n)])
    return Product(P, p1, p2)


@dataclass(frozen=True)
class Coproduct:
    obj: SPoset
    inj_left: SPosetMap
    inj_right: SPosetMap


def coproduct(A: SPoset, B: SPoset) -> Coproduct:
    """Disjoint union; A first, then B shifted by |A|."""
    if A.over is not B.over and A.over != B.over:
        raise DomainMismatch("over")
    na, n = A.size, A.size + B.size
    leq = tuple(
        tuple(
            (i < na and j < na and A.leq[i][j]) or (i >= na and j >= na and B.leq[i - na][j - na])
            for j in range(n)
        )
        for i in range(n)
    )
    act = [list(row) for row in A.act] + [[y + na for y in row] for row in B.act]
    C = validate_sposet(Poset(n, leq), A.over, act)
    i1 = validate_map(A, C, list(range(na)))
    i2 = validate_map(B, C, [na + b for b in range(B.size)])
    return Coproduct(C, i1, i2)


def coproduct_many(parts) -> SPoset:
    parts = list(parts)
    out = parts[0]
    for P in parts[1:]:
        out = coproduct(out, P).obj
    return out


def trivial_sposet(S: Pomonoid, P: Poset, name=None) -> SPoset:
    return validate_sposet(P, S, [[a] * S.size for a in range(P.size)], name)


def one_point(S: Pomonoid) -> SPoset:
    return trivial_sposet(S, Poset(1, ((True,),)))


# ---------------------------------------------------------------------------
# endomorphisms and hom-posets


@dataclass(frozen=True)
class EndPomonoid:
    """End(A_S) together with the maps that index its elements."""

    pomonoid: Pomonoid
    maps: tuple  # tables, sorted lexicographically
    of: SPoset

    def index(self, table) -> int:
        return self._lookup[tuple(table)]

    @property
    def _lookup(self):
        d = self.__dict__.get("_lk")
        if d is None:
            d = {t: i for i, t in enumerate(self.maps)}
            object.__setattr__(self, "_lk", d)
        return d

    def as_map(self, i: int) -> SPosetMap:
        return SPosetMap(self.of, self.of, self.maps[i])

    @property
    def mapset(self) -> "MapSet":
        ms = self.__dict__.get("_ms")
        if ms is None:
            ms = MapSet(self.maps, self.of.size)
            object.__setattr__(self, "_ms", ms)
        return ms

    @property
    def opposite(self) -> Pomonoid:
        op = self.__dict__.get("_op")
        if op is None:
            from .core import opposite

            op = opposite(self.pomonoid)
            object.__setattr__(self, "_op", op)
        return op


def generating_set(A: SPoset) -> list:
    """Fewest-by-orbit elements whose orbits cover A: one per maximal orbit."""
    c = A.__dict__.get("_gens")
    if c is not None:
        return c
    orb = [set(o) for o in A.orbits]
    out = []
    for x in range(A.size):
        # x is redundant if it lies in a strictly larger orbit, or an equal earlier one
        if any(x in orb[y] and (orb[y] > orb[x] or (orb[y] == orb[x] and y < x)) for y in range(A.size)):
            continue
        out.append(x)
    object.__setattr__(A, "_gens", out)
    return out


def _pointwise_order(A: SPoset, maps, dom: SPoset = None) -> Poset:
    """Maps into A ordered pointwise."""
    if not maps:
        return Poset(0, ())
    leq = _pointwise_matrix(A, maps, dom)
    return Poset(len(maps), tuple(map(tuple, leq.tolist())))


class MapSet:
    """Lexicographically sorted map tables with an array view and integer codes."""

    def __init__(self, maps, base: int):
        self.maps = tuple(maps)
        self.base = max(base, 1)
        self.array = np.asarray(self.maps, dtype=np.intp).reshape(len(self.maps), -1)
        width = self.array.shape[1]
        self._lookup = None
        self.codes = _codes(self.array, self.base) if self.base ** width < 2 ** 62 else None

    def __len__(self) -> int:
        return len(self.maps)

    @classmethod
    def unique(cls, rows, base: int) -> "MapSet":
        """The distinct rows of an array, sorted."""
        rows = np.asarray(rows, dtype=np.intp)
        if max(base, 1) ** rows.shape[-1] >= 2 ** 62:
            return cls(sorted(set(map(tuple, rows.tolist()))), base)
        _, idx = np.unique(_codes(rows, max(base, 1)), return_index=True)
        return cls(map(tuple, rows[idx].tolist()), base)

    def positions(self, tables):
        """Index in ``maps`` of each table; KeyError if one is missing."""
        tables = np.asarray(tables)
        if self.codes is None:
            if self._lookup is None:
                self._lookup = {t: i for i, t in enumerate(self.maps)}
            flat = tables.reshape(-1, self.array.shape[1]).tolist()
            return np.array([self._lookup[tuple(r)] for r in flat]).reshape(tables.shape[:-1])
        query = _codes(tables, self.base)
        pos = np.minimum(np.searchsorted(self.codes, query), len(self.codes) - 1)
        if not (self.codes[pos] == query).all():
            raise KeyError("table not among maps")
        return pos


def table_positions(maps, tables, base: int):
    """Position in the lexicographically sorted ``maps`` of each table."""
    return MapSet(maps, base).positions(tables)


def _codes(T, base: int):
    # lexicographic order of tables == numeric order of these codes
    T = np.asarray(T)
    w = base ** np.arange(T.shape[-1] - 1, -1, -1, dtype=np.int64)
    return T.astype(np.int64) @ w


def end_pomonoid(A: SPoset, validate: bool = True) -> EndPomonoid:
    """All endomaps of A under composition (st = s o t) and pointwise order."""
    maps = tuple(iter_tables(A, A))  # already lexicographic
    lookup = {t: i for i, t in enumerate(maps)}
    T = np.asarray(maps, dtype=np.intp)
    comp = T[:, T]  # comp[i, j, x] = maps[i][maps[j][x]]
    if A.size ** A.size < 2 ** 62:
        codes = _codes(T, max(A.size, 1))
        mult = np.searchsorted(codes, _codes(comp, max(A.size, 1)))
    else:
        mult = np.array([[lookup[tuple(r)] for r in row] for row in comp.tolist()])
    ident = lookup[tuple(range(A.size))]
    P = _pointwise_order(A, maps, A)
    if validate:
        T = validate_pomonoid(P, mult, ident)
    else:
        T = Pomonoid(P, tuple(tuple(int(x) for x in r) for r in mult.tolist()), ident)
    E = EndPomonoid(T, maps, A)
    object.__setattr__(E, "_lk", lookup)
    return E


@dataclass(frozen=True)
class HomBiposet:
    """Pos_S(B, A): left End(A) by postcomposition, right End(B) by precomposition."""

    maps: tuple
    B: SPoset
    A: SPoset
    end_A: EndPomonoid
    end_B: EndPomonoid
    poset: Poset
    left_table: tuple   # [t][f] = t o f
    right_table: tuple  # [f][u] = f o u

    def right_sposet(self) -> SPoset:
        """Right End(B)-poset."""
        return validate_sposet(self.poset, self.end_B.pomonoid, self.right_table)

    def left_sposet(self) -> SPoset:
        """Left End(A)-poset, represented as a right End(A)^op-poset."""
        from .core import opposite

        T = opposite(self.end_A.pomonoid)
        act = [[self.left_table[t][f] for t in range(T.size)] for f in range(len(self.maps))]
        return validate_sposet(self.poset, T, act)

    def biposet(self) -> Biposet:
        return validate_biposet(self.right_sposet(), self.end_A.pomonoid, self.left_table)

    def evaluate(self, f: int, b: int) -> int:
        return self.maps[f][b]


def hom_biposet(B: SPoset, A: SPoset, end_A: EndPomonoid = None, end_B: EndPomonoid = None) -> HomBiposet:
    if A.over is not B.over and A.over != B.over:
        raise DomainMismatch("over")
    end_A = end_A or end_pomonoid(A)
    end_B = end_B or end_pomonoid(B)
    maps = tuple(iter_tables(B, A))
    lookup = {t: i for i, t in enumerate(maps)}
    P = _pointwise_order(A, maps)
    left = tuple(tuple(lookup[tuple(t[y] for y in f)] for f in maps) for t in end_A.maps)
    right = tuple(tuple(lookup[tuple(f[y] for y in u)] for u in end_B.maps) for f in maps)
    return HomBiposet(maps, B, A, end_A, end_B, P, left, right)


def hom_tables(B: SPoset, A: SPoset, limit: int = None):
    """All map tables B -> A, or None when there are more than ``limit``."""
    out = []
    for t in iter_tables(B, A):
        out.append(t)
        if limit is not None and len(out) > limit:
            return None
    return tuple(out)


def _pointwise_matrix(A: SPoset, maps, dom: SPoset = None) -> np.ndarray:
    T = np.asarray(maps, dtype=np.intp)
    if dom is not None:
        # f(x) <= g(x) gives f(x.s) <= g(x.s), so generators suffice
        T = T[:, generating_set(dom)]
    return A.poset.matrix[T[:, None, :], T[None, :, :]].all(axis=2)


def _mapset(maps, A: SPoset) -> MapSet:
    return maps if isinstance(maps, MapSet) else MapSet(maps, A.size)


def hom_right_arrays(B: SPoset, A: SPoset, end_B: EndPomonoid, maps) -> tuple:
    """(act, leq) of Pos_S(B, A) over End(B) as arrays; maps must be non-empty."""
    ms = _mapset(maps, A)
    act = ms.positions(ms.array[:, end_B.mapset.array])  # [f, u] = f o u
    return act, _pointwise_matrix(A, ms.array, B)


def hom_left_arrays(B: SPoset, A: SPoset, end_A: EndPomonoid, maps) -> tuple:
    """(act, leq) of Pos_S(B, A) over End(A)^op as arrays; maps must be non-empty."""
    ms = _mapset(maps, A)
    act = ms.positions(end_A.mapset.array[:, ms.array]).T  # [f, t] = t o f
    return act, _pointwise_matrix(A, ms.array, B)


def _from_arrays(S: Pomonoid, act, leq, validate: bool) -> SPoset:
    P = Poset(len(leq), tuple(map(tuple, leq.tolist())))
    return _sposet(P, S, act.tolist(), validate)


def hom_right_sposet(B: SPoset, A: SPoset, end_B: EndPomonoid = None, maps=None,
                     validate: bool = True) -> SPoset:
    """Pos_S(B, A) as a right End(B)-poset, f.u = f o u."""
    end_B = end_B or end_pomonoid(B)
    maps = maps if maps is not None else tuple(iter_tables(B, A))
    if not maps:
        return _sposet(Poset(0, ()), end_B.pomonoid, (), validate)
    return _from_arrays(end_B.pomonoid, *hom_right_arrays(B, A, end_B, maps), validate)


def hom_left_sposet(B: SPoset, A: SPoset, end_A: EndPomonoid = None, maps=None,
                    validate: bool = True) -> SPoset:
    """Pos_S(B, A) as a left End(A)-poset t.f = t o f, stored over End(A)^op."""
    end_A = end_A or end_pomonoid(A)
    maps = maps if maps is not None else tuple(iter_tables(B, A))
    if not maps:
        return _sposet(Poset(0, ()), end_A.opposite, (), validate)
    return _from_arrays(end_A.opposite, *hom_left_arrays(B, A, end_A, maps), validate)


def tautological_biposet(A: SPoset, end_A: EndPomonoid = None) -> Biposet:
    """End(A)-S-biposet on A with f.a = f(a)."""
    end_A = end_A or end_pomonoid(A)
    lact = [list(t) for t in end_A.maps]
    return validate_biposet(A, end_A.pomonoid, lact)


def left_end_view(A: SPoset, end_A: EndPomonoid = None, validate: bool = True) -> SPoset:
    """A as a left End(A)-poset, via the opposite pomonoid."""
    if validate:
        return tautological_biposet(A, end_A).left_view()
    end_A = end_A or end_pomonoid(A)
    act = [[t[a] for t in end_A.maps] for a in range(A.size)]
    return SPoset(A.poset, end_A.opposite, tuple(tuple(r) for r in act))


@dataclass(frozen=True)
class CanonicalHoms:
    lam: tuple  # lam[t] = index in End(A_S) of a |-> t.a
    rho: tuple  # rho[s] = index in End(_T A) of a |-> a.s
    end_right: EndPomonoid  # End(A_S)
    end_left: EndPomonoid   # End(_T A), elements act on the right of the left view


def canonical_homs(X: Biposet) -> CanonicalHoms:
    A = X.base
    end_right = end_pomonoid(A)
    lam = tuple(end_right.index(X.lact[t]) for t in range(X.left_over.size))
    L = X.left_view()
    end_left = end_pomonoid(L)
    rho = tuple(end_left.index(tuple(A.act[a][s] for a in range(A.size))) for s in range(A.over.size))
    return CanonicalHoms(lam, rho, end_right, end_left)


def check_pomonoid_hom(S: Pomonoid, T: Pomonoid, h, reverse: bool = False) -> bool:
    """h preserves identity, order and multiplication.

    With ``reverse`` the multiplication is checked as h(st) = h(t)h(s); this is
    what rho looks like once the left T-poset is stored over the opposite of T.
    """
    n = S.size
    if h[S.identity] != T.identity:
        return False
    for s in range(n):
        for t in range(n):
            if S.leq[s][t] and not T.leq[h[s]][h[t]]:
                return False
            want = T.mult[h[t]][h[s]] if reverse else T.mult[h[s]][h[t]]
            if h[S.mult[s][t]] != want:
                return False
    return True


def is_pomonoid_iso(S: Pomonoid, T: Pomonoid, h) -> bool:
    if S.size != T.size or len(set(h)) != T.size or not check_pomonoid_hom(S, T, h):
        return False
    return all(S.leq[s][t] == T.leq[h[s]][h[t]] for s in range(S.size) for t in range(S.size))


def endomorphism_retracts(A: SPoset, end_A: EndPomonoid = None, validate: bool = True) -> list:
    """One split epimorphism per idempotent endomap e: A -> e(A), with its section.

    Every split epi f: A -> B with section g is isomorphic over A to the
    corestriction of the idempotent g o f onto its image.
    """
    end_A = end_A or end_pomonoid(A)
    out, subs = [], {}
    for t in end_A.maps:
        if any(t[t[x]] != t[x] for x in range(A.size)):
            continue
        image = tuple(sorted(set(t)))
        if image not in subs:
            # idempotents with one image share the retract object
            subs[image] = _restrict(A, image, validate=validate)
        B, incl = subs[image]
        index = {a: i for i, a in enumerate(image)}
        table = [index[t[x]] for x in range(A.size)]
        f = validate_map(A, B, table) if validate else SPosetMap(A, B, tuple(table))
        out.append((f, incl))
    return out
