import random

import pytest

import oracles
from posact import fixtures as F
from posact.constructions import product, regular_representation
from posact.core import BudgetExceeded
from posact.enumeration import enumerate_pomonoids, enumerate_sposets
from posact.search import Budget, count_tables, enumerate_maps, first_isomorphism, iter_tables


def _pairs(seed, n_pairs):
    rng = random.Random(seed)
    out = []
    for S in enumerate_pomonoids(2) + enumerate_pomonoids(3)[::4]:
        objs = enumerate_sposets(S, 3)
        for _ in range(n_pairs):
            out.append((rng.choice(objs), rng.choice(objs)))
    return out


@pytest.mark.parametrize("seed", [0, 1])
def test_all_maps_against_filter(seed):
    for A, B in _pairs(seed, 25):
        assert list(iter_tables(A, B)) == oracles.all_maps(A, B)


def test_count_tables_against_filter():
    for A, B in _pairs(3, 20):
        n = len(oracles.all_maps(A, B))
        assert count_tables(A, B) == n
        assert count_tables(A, B, 2) == min(n, 3)
        assert count_tables(A, B, injective=True) == len(list(iter_tables(A, B, injective=True)))


def test_count_tables_on_products():
    # products give larger, loosely joined domains where components split
    for A, B in _pairs(4, 6):
        P = product(A, B, validate=False).obj
        assert count_tables(P, B) == len(list(iter_tables(P, B)))
        assert count_tables(P, A, 10) == min(len(list(iter_tables(P, A))), 11)


def test_injective_and_reflecting():
    for A, B in _pairs(2, 15):
        want = [t for t in oracles.all_maps(A, B) if len(set(t)) == len(t)]
        assert list(iter_tables(A, B, injective=True)) == want
        emb = [t for t in want if oracles.is_embedding(A, B, t)]
        assert list(iter_tables(A, B, injective=True, reflect=True)) == emb


def test_fixed_and_allowed():
    for A, B in _pairs(3, 15):
        maps = oracles.all_maps(A, B)
        fixed = {0: B.size - 1}
        assert list(iter_tables(A, B, fixed=fixed)) == [t for t in maps if t[0] == B.size - 1]
        allowed = [range(0, B.size, 2)] * A.size
        assert list(iter_tables(A, B, allowed=allowed)) == [t for t in maps if all(y % 2 == 0 for y in t)]


def test_isomorphism_search():
    for A, B in _pairs(4, 20):
        iso = first_isomorphism(A, B)
        assert (iso is not None) == oracles.are_isomorphic(A, B)


def test_diamond_fixture_maps():
    X, B = F.X(), F.B()
    assert [m.table for m in enumerate_maps(B, X)] == oracles.all_maps(B, X)
    # the only section of f
    assert [t for t in oracles.all_maps(B, X) if all(F.f().table[t[b]] == b for b in range(2))] == [(1, 3)]


def test_hom_from_regular_representation():
    S = F.RZ3()
    R = regular_representation(S)
    for A in enumerate_sposets(S, 3):
        assert len(enumerate_maps(R, A)) == A.size


def test_budget():
    X = F.X()
    with pytest.raises(BudgetExceeded):
        list(iter_tables(X, X, budget=Budget(1)))
