"""Small hand-made pomonoids, S-posets and maps used in docs and tests.

``X`` is the four-element diamond over ``S2``: the top is fixed by every
scalar, and ``e`` sends the other three points to ``a``.  ``B`` is the
two-element chain with trivial action, ``f: X -> B`` collapses the lower
three points onto 0, and ``g: B -> X`` is its unique section.
"""
from __future__ import annotations

from functools import lru_cache

from .core import chain, discrete_poset, make_pomonoid, make_sposet, order_closure, validate_map
from .constructions import trivial_sposet

FIXTURE_NAMES = ("S1", "S2", "S2c", "Z2", "RZ3", "N3", "X", "B", "f", "g")


@lru_cache(maxsize=None)
def S1():
    return make_pomonoid(((0,),), labels=("1",), name="S1")


@lru_cache(maxsize=None)
def S2():
    return make_pomonoid(((0, 1), (1, 1)), labels=("1", "e"), name="S2")


@lru_cache(maxsize=None)
def S2c():
    return make_pomonoid(((0, 1), (1, 1)), pairs=[(1, 0)], labels=("1", "e"), name="S2c")


@lru_cache(maxsize=None)
def Z2():
    return make_pomonoid(((0, 1), (1, 0)), labels=("1", "x"), name="Z2")


@lru_cache(maxsize=None)
def RZ3():
    # xy = y on {a, b}
    return make_pomonoid(((0, 1, 2), (1, 1, 2), (2, 1, 2)), labels=("1", "a", "b"), name="RZ3")


@lru_cache(maxsize=None)
def N3():
    return make_pomonoid(((0, 1, 2), (1, 2, 2), (2, 2, 2)), labels=("1", "x", "0"), name="N3")


DIAMOND_PAIRS = [(0, 1), (0, 2), (1, 3), (2, 3)]


@lru_cache(maxsize=None)
def X():
    act = ((0, 1), (1, 1), (2, 1), (3, 3))
    return make_sposet(S2(), act, DIAMOND_PAIRS, labels=("bot", "a", "b", "top"), name="X")


@lru_cache(maxsize=None)
def B():
    return trivial_sposet(S2(), chain(2, labels=("0", "1")), name="B")


@lru_cache(maxsize=None)
def f():
    return validate_map(X(), B(), (0, 0, 0, 1))


@lru_cache(maxsize=None)
def g():
    return validate_map(B(), X(), (1, 3))


def diamond4():
    return order_closure(DIAMOND_PAIRS, 4)


def antichain(n: int):
    return discrete_poset(n)


def get(name: str):
    if name not in FIXTURE_NAMES:
        return None
    return globals()[name]()


def refs() -> dict:
    """id -> name, for serializing fixtures that reference each other."""
    return {id(get(n)): n for n in FIXTURE_NAMES}
