import random

import pytest

import oracles
from posact import fixtures as F
from posact.constructions import (
    canonical_homs,
    check_pomonoid_hom,
    coproduct,
    end_pomonoid,
    endomorphism_retracts,
    free_sposet,
    free_unit,
    generating_set,
    hom_biposet,
    hom_left_sposet,
    hom_right_sposet,
    is_pomonoid_iso,
    left_end_view,
    product,
    regular_representation,
    tautological_biposet,
)
from posact.core import compose, validate_map
from posact.enumeration import enumerate_pomonoids, enumerate_posets, enumerate_sposets

SMALL = [F.S2(), F.S2c(), F.Z2(), F.RZ3(), F.N3()]


def _sample(S, k, n, seed=0):
    objs = [A for j in range(1, k + 1) for A in enumerate_sposets(S, j)]
    return random.Random(seed).sample(objs, min(n, len(objs)))


@pytest.mark.parametrize("S", SMALL, ids=lambda S: S.name)
def test_end_pomonoid_against_definition(S):
    for A in _sample(S, 3, 12):
        E = end_pomonoid(A)
        assert list(E.maps) == oracles.all_maps(A, A)
        for i, s in enumerate(E.maps):
            for j, t in enumerate(E.maps):
                assert E.maps[E.pomonoid.mult[i][j]] == tuple(s[t[x]] for x in range(A.size))
                assert E.pomonoid.leq[i][j] == all(A.leq[s[x]][t[x]] for x in range(A.size))
        fast = end_pomonoid(A, validate=False)
        assert fast.pomonoid == E.pomonoid and fast.maps == E.maps


@pytest.mark.parametrize("S", SMALL, ids=lambda S: S.name)
def test_hom_views_match_biposet(S):
    objs = _sample(S, 3, 8, seed=1)
    for A in objs:
        for B in objs:
            H = hom_biposet(B, A)
            assert list(H.maps) == oracles.all_maps(B, A)
            assert hom_right_sposet(B, A) == H.right_sposet()
            assert hom_left_sposet(B, A) == H.left_sposet()
            H.biposet()


def test_hom_collapse():
    for S in enumerate_pomonoids(2) + enumerate_pomonoids(3):
        R = regular_representation(S)
        for A in _sample(S, 3, 10):
            H = hom_biposet(R, A)
            assert len(H.maps) == A.size
            # evaluation at 1 orders the maps exactly as A
            ev = [f[S.identity] for f in H.maps]
            assert sorted(ev) == list(range(A.size))
            for i in range(A.size):
                for j in range(A.size):
                    assert H.poset.leq[i][j] == A.leq[ev[i]][ev[j]]


@pytest.mark.parametrize("S", SMALL, ids=lambda S: S.name)
def test_product_universal(S):
    objs = _sample(S, 2, 5, seed=2)
    for A in objs:
        for B in objs:
            p = product(A, B)
            assert oracles.is_sposet(p.obj.act, p.obj.leq, S)
            assert oracles.is_map(p.obj, A, p.proj_left.table)
            assert oracles.is_map(p.obj, B, p.proj_right.table)
            for C in objs:
                for f in oracles.all_maps(C, A):
                    for g in oracles.all_maps(C, B):
                        h = p.pair(validate_map(C, A, f), validate_map(C, B, g))
                        assert compose(h, p.proj_left).table == f
                        assert compose(h, p.proj_right).table == g


def test_coproduct_is_disjoint_union():
    S = F.S2()
    c = coproduct(F.X(), F.B())
    assert c.obj.size == 6
    assert oracles.is_sposet(c.obj.act, c.obj.leq, S)


@pytest.mark.parametrize("S", SMALL, ids=lambda S: S.name)
def test_free_unique_extension(S):
    for P in enumerate_posets(2):
        Fr = free_sposet(S, P)
        tau = free_unit(S, P)
        assert oracles.is_sposet(Fr.act, Fr.leq, S)
        for A in _sample(S, 3, 6, seed=3):
            for f in [t for t in oracles.all_maps(*_as_trivial(P, A))]:
                ext = [h for h in oracles.all_maps(Fr, A) if all(h[tau[x]] == f[x] for x in range(P.size))]
                assert len(ext) == 1


def _as_trivial(P, A):
    """Monotone maps P -> A as maps of S1-posets."""
    from posact.core import poset_as_sposet

    S1 = F.S1()
    flat = poset_as_sposet(A.poset)
    return poset_as_sposet(P), type(flat)(flat.poset, S1, flat.act)


def test_retracts_split():
    for S in SMALL:
        for A in _sample(S, 3, 10):
            pairs = endomorphism_retracts(A)
            idem = [t for t in oracles.all_maps(A, A) if all(t[t[x]] == t[x] for x in range(A.size))]
            assert len(pairs) == len(idem)
            for f, g in pairs:
                assert compose(g, f).table == tuple(range(f.cod.size))


def test_tautological_lambda_is_identity():
    A = F.X()
    X = tautological_biposet(A)
    hom = canonical_homs(X)
    assert is_pomonoid_iso(X.left_over, hom.end_right.pomonoid, hom.lam)
    # a.(st) = (a.s).t, so rho(st) = rho(t) o rho(s)
    assert check_pomonoid_hom(A.over, hom.end_left.pomonoid, hom.rho, reverse=True)
    assert left_end_view(A, validate=False) == left_end_view(A)


@pytest.mark.parametrize("S", SMALL, ids=lambda S: S.name)
def test_generating_set_covers(S):
    for A in _sample(S, 4, 30, seed=6):
        gens = generating_set(A)
        assert set().union(*(A.orbits[x] for x in gens)) == set(range(A.size))
        # none of them is redundant
        for x in gens:
            rest = set().union(*[set(A.orbits[y]) for y in gens if y != x])
            assert x not in rest
