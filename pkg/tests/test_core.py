import pytest
from hypothesis import given, settings, strategies as st

import oracles
from posact import fixtures as F
from posact.core import (
    ActionNotUnital,
    NotAntisymmetric,
    NotAssociative,
    NotCompatible,
    NotEquivariant,
    NotMonotone,
    NotTransitive,
    NotUnit,
    Poset,
    ValidationError,
    compose,
    identity_map,
    is_map_table,
    make_pomonoid,
    make_sposet,
    order_closure,
    validate_map,
    validate_pomonoid,
    validate_poset,
    validate_sposet,
)
from posact.enumeration import enumerate_posets


def test_fixture_pomonoids_validate():
    for name in ("S1", "S2", "S2c", "Z2", "RZ3", "N3"):
        S = F.get(name)
        assert oracles.is_pomonoid(S.mult, S.leq, S.identity), name


def test_fixture_sposets_validate():
    for A in (F.X(), F.B()):
        assert oracles.is_sposet(A.act, A.leq, A.over)
    assert oracles.is_map(F.X(), F.B(), F.f().table)
    assert oracles.is_map(F.B(), F.X(), F.g().table)


def test_S2c_order():
    S = F.S2c()
    assert S.leq[1][0] and not S.leq[0][1]


def test_non_associative_witness():
    with pytest.raises(NotAssociative) as e:
        make_pomonoid(((0, 1, 2), (1, 0, 2), (2, 2, 0)))
    # (1.2).2 = 0 but 1.(2.2) = 1
    assert str(e.value) == "NotAssociative(1,2,2)"


def test_not_unit():
    with pytest.raises(NotUnit):
        make_pomonoid(((0, 0), (1, 1)))


def test_not_compatible():
    # Z2 with 1 <= x is not compatible: 1.x = x but x.x = 1
    with pytest.raises(NotCompatible):
        make_pomonoid(((0, 1), (1, 0)), pairs=[(0, 1)])


def test_order_errors():
    with pytest.raises(NotAntisymmetric):
        validate_poset(2, ((True, True), (True, True)))
    with pytest.raises(NotTransitive):
        validate_poset(3, ((1, 1, 0), (0, 1, 1), (0, 0, 1)))
    with pytest.raises(ValidationError):
        order_closure([(0, 1), (1, 0)], 2)


def test_unitality_must_hold_everywhere():
    # the diamond with e acting as the constant top breaks nothing; 1 moving bot does
    with pytest.raises(ActionNotUnital):
        make_sposet(F.S2(), ((1, 1), (1, 1), (2, 1), (3, 3)), F.DIAMOND_PAIRS)


def test_map_errors():
    X, B = F.X(), F.B()
    with pytest.raises(NotMonotone):
        validate_map(X, B, (1, 0, 0, 0))
    with pytest.raises(NotEquivariant):
        validate_map(B, X, (2, 2))


def test_compose_section():
    f, g = F.f(), F.g()
    assert compose(g, f).table == identity_map(F.B()).table


mult3 = st.lists(st.integers(0, 2), min_size=4, max_size=4)


@settings(max_examples=300, deadline=None)
@given(mult3, st.integers(0, 4))
def test_validate_pomonoid_matches_oracle(vals, k):
    it = iter(vals)
    mult = tuple(tuple(i if r == 0 else (r if i == 0 else next(it)) for i in range(3)) for r in range(3))
    P = enumerate_posets(3)[k]
    ok = oracles.is_pomonoid(mult, P.leq, 0)
    try:
        validate_pomonoid(P, mult, 0)
        got = True
    except ValidationError:
        got = False
    assert got == ok


@settings(max_examples=300, deadline=None)
@given(st.lists(st.integers(0, 3), min_size=8, max_size=8), st.integers(0, 15))
def test_validate_sposet_matches_oracle(vals, k):
    S = F.S2c()
    P = enumerate_posets(4)[k]
    act = tuple((a, vals[2 * a + 1]) for a in range(4))
    ok = oracles.is_sposet(act, P.leq, S)
    try:
        validate_sposet(P, S, act)
        got = True
    except ValidationError:
        got = False
    assert got == ok


@settings(max_examples=300, deadline=None)
@given(st.lists(st.integers(0, 3), min_size=4, max_size=4))
def test_is_map_table_matches_oracle(t):
    X = F.X()
    want = oracles.is_map(X, X, t)
    assert is_map_table(X, X, t) == want
    try:
        validate_map(X, X, t)
        got = True
    except ValidationError:
        got = False
    assert got == want


def test_poset_covers():
    P = order_closure(F.DIAMOND_PAIRS, 4)
    assert P.covers() == [(0, 1), (0, 2), (1, 3), (2, 3)]
    assert P.leq[0][3]
    assert isinstance(P, Poset)
