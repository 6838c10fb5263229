import pytest

from boolample import fixtures as fx
from boolample.category import check_groupoid, kb_monoid
from boolample.errors import AlgebraError
from boolample.filters import (build_category, enumerate_prime_filters, filter_d, filter_product, filter_r,
                               is_prime, is_ultrafilter, stone_space)
from boolample.iso import find_category_isomorphism

import oracles

BOOLEAN = ["B4", "G0", "I2", "S5"]


def _f(M, label):
    return next(F for F in enumerate_prime_filters(M) if F.min == M.index(label))


@pytest.mark.parametrize("name", BOOLEAN)
def test_prime_filters_match_subset_search(name):
    M = fx.monoid(name)
    got = {F.carrier for F in enumerate_prime_filters(M)}
    assert got == oracles.prime_filters(oracles.plain(M))


@pytest.mark.parametrize("name,mins", [
    ("B4", ["e", "f"]),
    ("I2", ["e1", "e2", "1to2", "2to1"]),
    ("S5", ["{id_e}", "{id_f}", "{a}"]),
])
def test_prime_filter_examples(name, mins):
    M = fx.monoid(name)
    assert sorted(M.label(F.min) for F in enumerate_prime_filters(M)) == sorted(mins)


def test_top_of_b4_is_a_proper_filter_but_not_prime():
    M = fx.B4()
    top = frozenset([M.index("1")])
    assert not is_prime(M, top)
    assert not is_ultrafilter(M, top)


def test_d_r_and_products_in_i2():
    M = fx.I2()
    up12, up21 = _f(M, "1to2"), _f(M, "2to1")
    e1, e2 = _f(M, "e1"), _f(M, "e2")
    assert filter_d(M, up12) == e1 and filter_r(M, up12) == e2
    assert filter_product(M, up12, e1) == up12
    assert filter_product(M, up21, up12) == e1
    with pytest.raises(AlgebraError) as err:
        filter_product(M, up12, e2)
    assert err.value.code == "NOT_COMPOSABLE"


def test_identity_filters_are_fixed_by_d():
    for name in BOOLEAN:
        M = fx.monoid(name)
        pfc = build_category(M)
        for e in pfc.category.identities:
            E = pfc.filters[e]
            assert filter_d(M, E) == E == filter_r(M, E)


def test_s5_domain_of_arrow_filter():
    M = fx.S5()
    assert filter_d(M, _f(M, "{a}")) == _f(M, "{id_e}")


def test_category_shapes():
    C = build_category(fx.B4()).category
    assert len(C) == 2 and len(C.identities) == 2
    C = build_category(fx.I2()).category
    assert find_category_isomorphism(C, fx.PAIR2()) is not None and check_groupoid(C)
    C = build_category(fx.S5()).category
    assert find_category_isomorphism(C, fx.ARROW()) is not None


@pytest.mark.parametrize("name", BOOLEAN)
def test_equal_domain_and_overlap_forces_equality(name):
    M = fx.monoid(name)
    pfc = build_category(M)
    C = pfc.category
    for i, A in enumerate(pfc.filters):
        for j, B in enumerate(pfc.filters):
            if C.d[i] == C.d[j] and A.carrier & B.carrier:
                assert i == j


@pytest.mark.parametrize("name,points", [("B4", 2), ("I2", 2), ("G0", 1), ("S5", 2)])
def test_stone_space(name, points):
    M = fx.monoid(name)
    sp = stone_space(M)
    assert len(sp.points) == points == len(M.projection_atoms)
    assert {p.carrier for p in sp.points} == set(oracles.projection_ultrafilters(oracles.plain(M)))
    assert sorted(sp.to_identity) == list(build_category(M).category.identities)


def test_element_index_x():
    M = fx.S5()
    pfc = build_category(M)
    # {id_e, id_f} lies in both identity filters and in nothing else
    assert pfc.category.labels(sorted(pfc.X[M.index("{id_e,id_f}")])) == ["^{id_e}", "^{id_f}"]
    assert pfc.X[M.zero] == frozenset()


def test_kb_of_fork_has_three_identity_filters():
    M = kb_monoid(fx.FORK()).monoid
    pfc = build_category(M)
    assert len(pfc.filters) == 5 and len(pfc.category.identities) == 3
