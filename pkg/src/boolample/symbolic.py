"""Fractions of an infinite right reversible cancellative monoid, driven by an oracle.

Only one family ships: the free commutative monoid of rank k, written additively as
nonnegative integer vectors. A fraction ``a^-1 b`` reduces to the integer vector ``b - a``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Protocol

import numpy as np

from .errors import AlgebraError, TheoremViolation

Vec = tuple[int, ...]


class OreOracle(Protocol):
    def mul(self, x, y): ...

    def eq(self, x, y) -> bool: ...

    def left_multipliers(self, a, b):
        """``(p, q)`` with ``p a = q b``."""

    def elements(self, bound: int): ...

    def one(self): ...


@dataclass(frozen=True)
class FreeCommutativeMonoid:
    rank: int = 2

    def __post_init__(self):
        if not 1 <= self.rank <= 4:
            raise AlgebraError("BAD_PARAMS", "rank must be in 1..4", self.rank)

    def one(self) -> Vec:
        return (0,) * self.rank

    def mul(self, x: Vec, y: Vec) -> Vec:
        return tuple(u + v for u, v in zip(x, y))

    def eq(self, x: Vec, y: Vec) -> bool:
        return tuple(x) == tuple(y)

    def left_multipliers(self, a: Vec, b: Vec) -> tuple[Vec, Vec]:
        # least common multiple: p = max(a, b) - a
        m = tuple(max(u, v) for u, v in zip(a, b))
        return tuple(x - u for x, u in zip(m, a)), tuple(x - v for x, v in zip(m, b))

    def batch_left_multipliers(self, a: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        m = np.maximum(a, b)
        return m - a, m - b

    def elements(self, bound: int):
        return itertools.product(range(bound + 1), repeat=self.rank)


@dataclass(frozen=True)
class Fraction:
    """The class of ``a^-1 b``."""

    a: Vec
    b: Vec


def fraction_product(oracle: OreOracle, g: Fraction, h: Fraction) -> Fraction:
    """``(a^-1 b)(c^-1 d) = (pa)^-1 (qd)`` where ``pb = qc``."""
    p, q = oracle.left_multipliers(g.b, h.a)
    if not oracle.eq(oracle.mul(p, g.b), oracle.mul(q, h.a)):
        raise AlgebraError("ORACLE_INCONSISTENT", "p b != q c", (p, q, g.b, h.a))
    return Fraction(oracle.mul(p, g.a), oracle.mul(q, h.b))


def normal_form(f: Fraction) -> Vec:
    return tuple(v - u for u, v in zip(f.a, f.b))


def from_vector(v: Vec) -> Fraction:
    """The canonical pair ``(a, b)`` with disjoint supports and ``b - a = v``."""
    return Fraction(tuple(max(-x, 0) for x in v), tuple(max(x, 0) for x in v))


def equivalent(oracle: OreOracle, f: Fraction, g: Fraction) -> bool:
    """``(a, b) ~ (a', b')``: some ``u a = u' a'`` with ``u b = u' b'``."""
    u, u2 = oracle.left_multipliers(f.a, g.a)
    return oracle.eq(oracle.mul(u, f.b), oracle.mul(u2, g.b))


@dataclass(frozen=True)
class SymbolicReport:
    rank: int
    depth: int
    elements: int
    products: int
    triples: int

    def to_dict(self) -> dict:
        return {"rank": self.rank, "depth": self.depth, "elements": self.elements,
                "products": self.products, "associativity_triples": self.triples}


def symbolic_ore(oracle: FreeCommutativeMonoid | None = None, depth: int = 5) -> SymbolicReport:
    """Group laws on all normal forms with coordinates in ``[-depth, depth]``.

    Products go through the pair calculus and each result is checked against the
    normal form. Associativity runs the same calculus in batch over every triple."""
    oracle = oracle or FreeCommutativeMonoid(2)
    k = oracle.rank
    vecs = list(itertools.product(range(-depth, depth + 1), repeat=k))
    e = from_vector(oracle.one())
    for v in vecs:
        f = from_vector(v)
        if not equivalent(oracle, f, Fraction(oracle.mul(f.a, (1,) * k), oracle.mul(f.b, (1,) * k))):
            raise TheoremViolation("(a, b) ~ (ua, ub)", "fraction equivalence", v)
        inv = Fraction(f.b, f.a)
        for g in (fraction_product(oracle, f, inv), fraction_product(oracle, inv, f)):
            if any(normal_form(g)):
                raise TheoremViolation("g g^-1 = 1", "group of fractions", v)
        for g in (fraction_product(oracle, f, e), fraction_product(oracle, e, f)):
            if normal_form(g) != v:
                raise TheoremViolation("identity law", "group of fractions", v)
    # pair calculus on every pair of normal forms agrees with vector addition
    n = 0
    for v in vecs:
        f = from_vector(v)
        for w in vecs:
            g = fraction_product(oracle, f, from_vector(w))
            if normal_form(g) != tuple(x + y for x, y in zip(v, w)):
                raise TheoremViolation("product reduces to b - a", "normal form", (v, w))
            n += 1
    # associativity through the pair calculus on every triple, vectorized over (u, v)
    arr = np.array(vecs, dtype=np.int64)
    A, B = np.maximum(-arr, 0), np.maximum(arr, 0)

    def prod(a, b, c, d):
        p, q = oracle.batch_left_multipliers(b, c)
        if (p + b != q + c).any():
            raise AlgebraError("ORACLE_INCONSISTENT", "p b != q c", None)
        return p + a, q + d

    m = len(vecs)
    ii, jj = np.divmod(np.arange(m * m), m)
    uva, uvb = prod(A[ii], B[ii], A[jj], B[jj])
    for w in range(m):
        Aw, Bw = np.broadcast_to(A[w], (m * m, k)), np.broadcast_to(B[w], (m * m, k))
        la, lb = prod(uva, uvb, Aw, Bw)
        vwa, vwb = prod(A, B, np.broadcast_to(A[w], (m, k)), np.broadcast_to(B[w], (m, k)))
        ra, rb = prod(A[ii], B[ii], vwa[jj], vwb[jj])
        bad = np.flatnonzero(((lb - la) != (rb - ra)).any(axis=1))
        if bad.size:
            i, j = divmod(int(bad[0]), m)
            raise TheoremViolation("associativity", "group of fractions", (vecs[i], vecs[j], vecs[w]))
    return SymbolicReport(k, depth, m, n, m ** 3)
