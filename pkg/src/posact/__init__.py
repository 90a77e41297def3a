"""Finite pomonoids, S-posets and exhaustive checks of their properties."""
from .core import (
    Biposet,
    Pomonoid,
    Poset,
    PosactError,
    SPoset,
    SPosetMap,
    ValidationError,
    compose,
    make_pomonoid,
    make_sposet,
    validate_map,
)

__version__ = "0.1.0"

__all__ = [
    "Biposet",
    "Pomonoid",
    "Poset",
    "PosactError",
    "SPoset",
    "SPosetMap",
    "ValidationError",
    "compose",
    "make_pomonoid",
    "make_sposet",
    "validate_map",
]
