import time
from dataclasses import dataclass

import pytest
from hypothesis import given
from hypothesis import strategies as st

from boolample.errors import AlgebraError
from boolample.symbolic import (FreeCommutativeMonoid, Fraction, equivalent, fraction_product, from_vector,
                                normal_form, symbolic_ore)

N2 = FreeCommutativeMonoid(2)


def test_normal_form_examples():
    assert normal_form(Fraction((1, 0), (0, 1))) == (-1, 1)
    assert normal_form(Fraction((2, 3), (2, 3))) == (0, 0)
    g = fraction_product(N2, Fraction((1, 0), (0, 0)), Fraction((0, 0), (1, 0)))
    assert normal_form(g) == (0, 0)


def test_rank_2_depth_5_report():
    t = time.perf_counter()
    rep = symbolic_ore(N2, depth=5)
    assert time.perf_counter() - t < 1.0
    assert rep.to_dict() == {"rank": 2, "depth": 5, "elements": 121, "products": 121 ** 2,
                             "associativity_triples": 121 ** 3}


@pytest.mark.parametrize("rank", [0, 5])
def test_rank_bounds(rank):
    with pytest.raises(AlgebraError) as err:
        FreeCommutativeMonoid(rank)
    assert err.value.code == "BAD_PARAMS"


@dataclass(frozen=True)
class Liar(FreeCommutativeMonoid):
    def left_multipliers(self, a, b):
        p, q = super().left_multipliers(a, b)
        return tuple(x + 1 for x in p), q


def test_inconsistent_oracle_is_reported():
    with pytest.raises(AlgebraError) as err:
        fraction_product(Liar(2), Fraction((0, 0), (1, 0)), Fraction((0, 1), (0, 0)))
    assert err.value.code == "ORACLE_INCONSISTENT"
    with pytest.raises(AlgebraError):
        symbolic_ore(Liar(2), depth=1)


def test_other_ranks_small_depth():
    assert symbolic_ore(FreeCommutativeMonoid(1), depth=3).elements == 7
    assert symbolic_ore(FreeCommutativeMonoid(3), depth=1).elements == 27


vec = st.tuples(st.integers(0, 6), st.integers(0, 6))


@given(vec, vec, vec, vec, st.tuples(st.integers(0, 4), st.integers(0, 4)))
def test_pair_calculus_matches_vector_arithmetic(a, b, c, d, u):
    f, g = Fraction(a, b), Fraction(c, d)
    want = tuple(b_ - a_ + d_ - c_ for a_, b_, c_, d_ in zip(a, b, c, d))
    assert normal_form(fraction_product(N2, f, g)) == want
    assert equivalent(N2, f, Fraction(N2.mul(u, a), N2.mul(u, b)))
    assert equivalent(N2, f, from_vector(normal_form(f)))
    assert equivalent(N2, f, g) == (normal_form(f) == normal_form(g))
