"""The canonical small examples, loaded from the bundled JSON files.

B4  four-element Boolean algebra          G0     {0, 1, g} with g^2 = 1
I2  symmetric inverse monoid on {1, 2}    S5     KB(ARROW)
ARROW  e --a--> f                         PAIR2  pair groupoid on {e, f}
FORK   x: 1 -> 2, y: 1 -> 3 (not right reversible)
"""

from __future__ import annotations

from functools import lru_cache
from importlib import resources

from .category import CategoryTable
from .formats import load_category, load_homomorphism, load_monoid
from .monoid import HomomorphismMap, MonoidTable

MONOIDS = ("B4", "G0", "I2", "S5", "CHAIN3")
CATEGORIES = ("ARROW", "PAIR2", "FORK", "DISCRETE2", "IDEMPOTENT_MONOID")
HOMOMORPHISMS = ("S5_TO_I2", "B4_SWAP")


def data_path(name: str):
    return resources.files("boolample") / "data" / f"{name}.json"


@lru_cache(maxsize=None)
def monoid(name: str) -> MonoidTable:
    return load_monoid(data_path(name))


@lru_cache(maxsize=None)
def category(name: str) -> CategoryTable:
    return load_category(data_path(name))


def homomorphism(name: str) -> HomomorphismMap:
    return load_homomorphism(data_path(name))


def B4() -> MonoidTable: return monoid("B4")
def G0() -> MonoidTable: return monoid("G0")
def I2() -> MonoidTable: return monoid("I2")
def S5() -> MonoidTable: return monoid("S5")
def ARROW() -> CategoryTable: return category("ARROW")
def PAIR2() -> CategoryTable: return category("PAIR2")
def FORK() -> CategoryTable: return category("FORK")


def discrete(n: int) -> CategoryTable:
    names = tuple(f"id_{i}" for i in range(n))
    return CategoryTable(names, tuple(range(n)), tuple(range(n)), tuple(range(n)),
                         {(i, i): i for i in range(n)})
