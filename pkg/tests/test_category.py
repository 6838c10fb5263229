import pytest

from boolample import fixtures as fx
from boolample.category import (CategoryTable, bisection_label, check_cancellative, check_functor,
                                check_groupoid, check_right_reversible, composition_closure,
                                disjoint_union, enumerate_local_bisections, kb_monoid, subcategory,
                                validate_category)
from boolample.errors import AlgebraError, CapExceeded, ValidationError
from boolample.iso import find_monoid_isomorphism

import oracles


@pytest.mark.parametrize("name,canc,grp,rr", [
    ("ARROW", True, False, True),
    ("PAIR2", True, True, True),
    ("FORK", True, False, False),
    ("DISCRETE2", True, True, True),
    ("IDEMPOTENT_MONOID", False, False, True),
])
def test_fixture_properties(name, canc, grp, rr):
    C = fx.category(name)
    assert bool(check_cancellative(C)) is canc is oracles.cancellative(C)
    assert bool(check_groupoid(C)) is grp
    assert bool(check_right_reversible(C)) is rr is oracles.right_reversible(C)


def test_fork_reversibility_witness():
    C = fx.FORK()
    v = check_right_reversible(C)
    assert C.labels(v.witness) == ["x", "y"]


def test_pair2_inverse_table():
    C = fx.PAIR2()
    inv = check_groupoid(C).table
    assert {C.label(x): C.label(inv[x]) for x in range(len(C))} == {
        "id_e": "id_e", "id_f": "id_f", "a": "a^-1", "a^-1": "a"}


@pytest.mark.parametrize("name,count", [("ARROW", 5), ("PAIR2", 7), ("FORK", 12), ("DISCRETE2", 4)])
def test_local_bisections_match_brute_force(name, count):
    C = fx.category(name)
    got = enumerate_local_bisections(C)
    want = oracles.local_bisections(range(len(C)), C.d, C.r)
    assert len(got) == count
    assert set(got) == set(want)


@pytest.mark.parametrize("name", ["ARROW", "PAIR2", "FORK", "DISCRETE2"])
def test_kb_product_matches_relation_product(name):
    C = fx.category(name)
    kb = kb_monoid(C)
    M = kb.monoid
    for i, A in enumerate(kb.bisections):
        assert kb.bisections[M.star[i]] == frozenset(C.d[x] for x in A)
        assert kb.bisections[M.plus[i]] == frozenset(C.r[x] for x in A)
        for j, B in enumerate(kb.bisections):
            assert kb.bisections[M.mult[i, j]] == oracles.bisection_product(A, B, C.d, C.r, C.comp)


def test_kb_of_arrow_is_s5_and_kb_of_pair2_is_i2():
    assert find_monoid_isomorphism(kb_monoid(fx.ARROW()).monoid, fx.S5()) is not None
    assert find_monoid_isomorphism(kb_monoid(fx.PAIR2()).monoid, fx.I2()) is not None
    assert kb_monoid(fx.ARROW()).monoid.elements == fx.S5().elements


def test_kb_cap():
    C = fx.discrete(5)
    with pytest.raises(CapExceeded) as err:
        kb_monoid(C, max_arrows=4)
    assert err.value.code == "CAP_EXCEEDED"
    with pytest.raises(CapExceeded):
        enumerate_local_bisections(C, cap=10)
    assert len(kb_monoid(C, max_arrows=5).monoid) == 32


def test_bisection_labels_are_sorted_arrow_lists():
    C = fx.PAIR2()
    assert bisection_label(C, [C.index("a^-1"), C.index("a")]) == "{a,a^-1}"


def _ids_and_arrow():
    return {"arrows": ["id_e", "id_f", "a"], "identities": ["id_e", "id_f"],
            "d": {"id_e": "id_e", "id_f": "id_f", "a": "id_e"},
            "r": {"id_e": "id_e", "id_f": "id_f", "a": "id_f"},
            "compose": [["id_e", "id_e", "id_e"], ["id_f", "id_f", "id_f"],
                        ["a", "id_e", "a"], ["id_f", "a", "a"]]}


def test_validate_category_round_trip():
    C = validate_category(_ids_and_arrow())
    assert validate_category(C.to_dict()).to_dict() == C.to_dict()


@pytest.mark.parametrize("mutate,code", [
    (lambda raw: raw.pop("compose"), "MISSING_FIELD"),
    (lambda raw: raw["compose"].pop(), "MISSING_COMPOSITE"),
    (lambda raw: raw["compose"].append(["a", "a", "a"]), "EXTRA_COMPOSITE"),
    (lambda raw: raw["compose"].__setitem__(2, ["a", "id_e", "id_f"]), "BAD_COMPOSITE"),
    (lambda raw: raw["d"].__setitem__("a", "zzz"), "UNKNOWN_LABEL"),
])
def test_validate_category_errors(mutate, code):
    raw = _ids_and_arrow()
    mutate(raw)
    with pytest.raises(ValidationError) as err:
        validate_category(raw)
    assert code in [c for c, _ in err.value.violations]


def test_subcategory_and_closure():
    P = fx.PAIR2()
    ids = list(P.identities)
    sub, incl = subcategory(P, ids + [P.index("a")])
    assert sub.arrows == ("id_e", "id_f", "a")
    assert check_functor(sub, P, incl) is None
    assert composition_closure(P, ids + [P.index("a")]) == frozenset(ids + [P.index("a")])
    assert composition_closure(P, [P.index("a"), P.index("a^-1")]) == frozenset(range(4))
    with pytest.raises(AlgebraError) as err:
        subcategory(P, [P.index("a"), P.index("a^-1")])
    assert err.value.code == "NOT_A_SUBCATEGORY"


def test_disjoint_union_prefixes_labels():
    U = disjoint_union(("l.", fx.ARROW()), ("r.", fx.ARROW()))
    assert len(U) == 6 and len(U.identities) == 4
    assert "r.a" in U.arrows
    assert check_cancellative(U) and check_right_reversible(U)


def test_category_build_tabulates_composites():
    C = CategoryTable.build(["1", "z"], [0], [0, 0], [0, 0], lambda x, y: 0 if x == y == 0 else 1)
    assert C.compose(1, 1) == 1 and C.compose(0, 1) == 1
