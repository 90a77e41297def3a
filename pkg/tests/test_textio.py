from pathlib import Path

import pytest

from posact import fixtures as F
from posact.core import NotAssociative
from posact.enumeration import enumerate_pomonoids, enumerate_sposets
from posact.textio import FormatError, UnresolvedReference, Workspace, loads, serialize

ROOT = Path(__file__).resolve().parents[1]
FIXTURES = ROOT / "fixtures"


@pytest.mark.parametrize("name", F.FIXTURE_NAMES)
def test_shipped_fixture_matches_module(name):
    ws = Workspace([FIXTURES])
    obj = ws.get(name)
    assert obj == F.get(name)
    text = (FIXTURES / (name + ".pos")).read_text()
    assert serialize(obj, name=name, refs=F.refs()) == text


@pytest.mark.parametrize("name", F.FIXTURE_NAMES)
def test_round_trip_is_identity(name):
    text = (FIXTURES / (name + ".pos")).read_text()
    ws = Workspace([FIXTURES])
    again = serialize(ws.load(FIXTURES / (name + ".pos")), name=name, refs=F.refs())
    assert again == text


def test_round_trip_enumerated():
    for S in enumerate_pomonoids(3):
        t = serialize(S, name="S")
        S2 = loads(t)
        assert S2 == S and serialize(S2, name="S") == t
    S = F.RZ3()
    for A in enumerate_sposets(S, 3):
        t = serialize(A, name="A", refs={id(A.over): "RZ3"})
        A2 = loads(t, {"RZ3": S}.get)
        assert A2 == A
        assert serialize(A2, name="A", refs={id(S): "RZ3"}) == t


def test_broken_file():
    with pytest.raises(NotAssociative) as e:
        Workspace([FIXTURES]).load(FIXTURES / "broken.pos")
    assert str(e.value) == "NotAssociative(1,2,2)"


def test_order_pairs_are_closed():
    text = "kind: poset\nsize: 3\norder:\n0 <= 1\n1 <= 2\n"
    P = loads(text)
    assert P.leq[0][2]


def test_errors():
    with pytest.raises(FormatError):
        loads("size: 2\n")
    with pytest.raises(UnresolvedReference):
        loads("kind: sposet\nname: A\nsize: 1\nover: nowhere\nact:\n0\norder:\n")
