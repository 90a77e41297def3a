import pytest

import oracles
from posact import fixtures as F
from posact.constructions import sub_sposet
from posact.core import SPosetMap, validate_map
from posact.enumeration import enumerate_sposets
from posact.harness import retract_classes
from posact.slice import (
    all_sections,
    fibers,
    fibers_complete,
    find_section,
    incomplete_fiber,
    is_slice_emb_injective_bounded,
    is_slice_morphism,
    is_split_epi,
)


def _sections(f):
    A, B = f.dom, f.cod
    return [t for t in oracles.all_maps(B, A) if all(f.table[t[b]] == b for b in range(B.size))]


def test_diamond_section_is_unique():
    f = F.f()
    assert is_split_epi(f)
    assert [g.table for g in all_sections(f)] == _sections(f) == [(1, 3)]
    assert find_section(f).table == (1, 3)


def test_diamond_fibers():
    f = F.f()
    assert [els for _, els, _ in fibers(f)] == [[0, 1, 2], [3]]
    assert not fibers_complete(f)
    assert incomplete_fiber(f) == (0, [0, 1, 2])


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_diamond_not_slice_injective(k):
    assert not is_slice_emb_injective_bounded(F.f(), k)


def _objs():
    S = F.S2()
    return [A for j in (1, 2, 3) for A in enumerate_sposets(S, j)]


def test_sections_against_oracle():
    objs = _objs()
    for A in objs[::2]:
        for B in objs[::3]:
            for t in oracles.all_maps(A, B):
                f = SPosetMap(A, B, t)
                want = _sections(f)
                assert [g.table for g in all_sections(f)] == want
                assert is_split_epi(f) == bool(want)


def test_fibers_complete_against_oracle():
    for A in _objs():
        for f, g, B in retract_classes(A):
            want = all(oracles.is_complete_lattice(P.leq) for _, _, P in fibers(f))
            assert fibers_complete(f) == want


def _square_fails(f, V, U, u, v):
    """u: U -> dom f and v: V -> cod f commute and have no filler."""
    X, B = f.dom, f.cod
    sub = sub_sposet(V, U)
    assert (not U) or oracles.is_map(sub, X, u)
    assert oracles.is_map(V, B, v)
    assert all(f.table[u[i]] == v[x] for i, x in enumerate(U))
    fillers = [h for h in oracles.all_maps(V, X)
               if all(h[x] == u[i] for i, x in enumerate(U)) and all(f.table[h[x]] == v[x] for x in range(V.size))]
    return not fillers


def test_square_failures_are_genuine():
    seen = 0
    for A in _objs():
        for f, g, B in retract_classes(A):
            plain = is_slice_emb_injective_bounded(f, 2, refuters=False)
            fast = is_slice_emb_injective_bounded(f, 2)
            # refuters only ever add exact refutations
            assert fast.value <= plain.value
            if not plain.value:
                w = plain.witness
                assert _square_fails(f, w.V, w.U, w.u, w.v)
                seen += 1
    assert seen


def test_diamond_square_at_three():
    v = is_slice_emb_injective_bounded(F.f(), 3, refuters=False)
    assert not v.value
    w = v.witness
    assert _square_fails(F.f(), w.V, w.U, w.u, w.v)


def test_slice_morphism():
    f, g = F.f(), F.g()
    idX = validate_map(F.X(), F.X(), range(4))
    assert is_slice_morphism(idX, f, f)
    # g o f: X -> X is a morphism from f to f, since f o g o f = f
    gf = validate_map(F.X(), F.X(), [g.table[b] for b in f.table])
    assert is_slice_morphism(gf, f, f)
