import pytest

from boolample import fixtures as fx
from boolample.category import check_groupoid, kb_monoid
from boolample.errors import AlgebraError, TheoremViolation
from boolample.generate import GeneratorParams, generate_instance, pair_groupoid
from boolample.iso import find_category_isomorphism
from boolample.ore import (check_condition_C, check_theorem_twelve, common_left_multiple, corollary_check,
                           fractions_groupoid, mary_anne_check, projection_filters, relativized_order,
                           validate_condition_C_witness, verify_fractions_uniqueness)

import oracles


def _F(M, *labels):
    return frozenset(M.index(x) for x in labels)


def test_relativized_order_examples():
    S = fx.S5()
    rel = relativized_order(S, _F(S, "{id_e}", "{id_e,id_f}"))
    a = S.index("{a}")
    assert (a, a) in rel
    I = fx.I2()
    rel = relativized_order(I, _F(I, "e1", "1"))
    assert (I.index("e1"), I.index("1")) in rel
    assert (I.index("e2"), I.index("1")) not in rel
    for x, y in rel.pairs:
        assert I.star[x] in rel.base and I.star[y] in rel.base and I.leq[x, y]


def test_relativized_order_needs_prime_filter():
    I = fx.I2()
    with pytest.raises(AlgebraError) as err:
        relativized_order(I, _F(I, "1"))
    assert err.value.code == "F_NOT_PRIME"


@pytest.mark.parametrize("name", ["B4", "G0", "I2", "S5"])
def test_condition_c_holds_on_fixtures(name):
    rep = check_condition_C(fx.monoid(name))
    assert rep.holds and rep.to_dict() == {"holds": True}


FORK_S = kb_monoid(fx.FORK()).monoid


def test_kb_fork_counterexample():
    rep = check_condition_C(FORK_S)
    assert rep.to_dict() == {"holds": False, "counterexample": {"F": "^{id_1}", "a": "{x}", "b": "{y}"}}
    k, a, b = rep.counterexample
    assert rep.witness(k, a, b) is None
    assert oracles.condition_C_literal(oracles.plain(FORK_S), rep.filters[k], a, b) is None


@pytest.mark.parametrize("M", [fx.I2(), fx.S5(), fx.B4(), fx.G0(), FORK_S,
                               kb_monoid(fx.category("DISCRETE2")).monoid], ids=lambda M: str(len(M)))
def test_witnesses_match_literal_search(M):
    rep = check_condition_C(M)
    P = oracles.plain(M)
    for k, F in enumerate(rep.filters):
        assert F == oracles.projection_ultrafilters(P)[k]
        for a in range(len(M)):
            for b in range(len(M)):
                if M.mul(M.star[a], M.star[b]) not in F:
                    continue
                want = oracles.condition_C_literal(P, F, a, b)
                got = rep.witness(k, a, b)
                assert got == want
                if got is not None:
                    assert validate_condition_C_witness(M, F, a, b, got)


def test_projection_filters_are_prime():
    S = fx.S5()
    assert projection_filters(S) == [_F(S, "{id_e}", "{id_e,id_f}"), _F(S, "{id_f}", "{id_e,id_f}")]


@pytest.mark.parametrize("M,expected", [(fx.S5(), (True, True)), (fx.I2(), (True, True)),
                                        (FORK_S, (False, False))])
def test_mary_anne_examples(M, expected):
    rep = mary_anne_check(M)
    assert (rep.condition_c, rep.right_reversible) == expected and rep.agree
    if not rep.condition_c:
        assert rep.reversibility_witness == ("^{x}", "^{y}")


def test_corollary_examples():
    S = fx.S5()
    assert corollary_check(S).ok
    a, ida, idf = S.index("{a}"), S.index("{id_e}"), S.index("{id_f}")
    s, t = common_left_multiple(S, ida, a)
    assert S.mul(s, ida) == S.mul(t, a) != S.zero
    assert S.mul(a, ida) == a == S.mul(idf, a)
    I = fx.I2()
    assert common_left_multiple(I, I.index("e1"), I.index("1to2")) is not None
    with pytest.raises(AlgebraError) as err:
        corollary_check(FORK_S)
    assert err.value.code == "CONDITION_C_FAILS"


def test_fractions_of_arrow():
    A = fx.ARROW()
    fg = fractions_groupoid(A)
    G = fg.groupoid
    assert fg.labels == ("id_e", "id_f", "a", "a^-1")
    assert find_category_isomorphism(G, fx.PAIR2()) is not None
    a, idf = A.index("a"), A.index("id_f")
    assert fg.iota[a] == fg.fraction(idf, a)
    assert G.label(fg.fraction(a, idf)) == "a^-1"
    assert fg.inverse[fg.iota[a]] == fg.fraction(a, idf)


def test_fractions_of_groupoid_and_discrete():
    P = fx.PAIR2()
    fg = fractions_groupoid(P)
    assert len(fg.groupoid) == 4 and sorted(fg.iota) == [0, 1, 2, 3]
    D = fx.discrete(3)
    fg = fractions_groupoid(D)
    assert len(fg.groupoid) == 3 and fg.groupoid.labels(fg.iota) == list(D.arrows)


def test_equivalence_witnesses_revalidate():
    for C in (fx.ARROW(), fx.PAIR2(), pair_groupoid(2, 2)):
        fg = fractions_groupoid(C)
        for ms in fg.classes:
            for p in ms:
                for q in ms:
                    u, u2 = fg.equivalence_witnesses[(p, q)]
                    assert C.comp[(u, p[0])] == C.comp[(u2, q[0])]
                    assert C.comp[(u, p[1])] == C.comp[(u2, q[1])]


@pytest.mark.parametrize("name,code", [("IDEMPOTENT_MONOID", "NOT_CANCELLATIVE"),
                                       ("FORK", "NOT_RIGHT_REVERSIBLE")])
def test_fractions_preconditions(name, code):
    with pytest.raises(AlgebraError) as err:
        fractions_groupoid(fx.category(name))
    assert err.value.code == code


def test_uniqueness_across_seeds():
    for C in (fx.ARROW(), fx.PAIR2()):
        g0, g1 = fractions_groupoid(C, 0), fractions_groupoid(C, 1)
        iso = verify_fractions_uniqueness(C, g0, g1)
        assert all(iso[g0.iota[x]] == g1.iota[x] for x in range(len(C)))
    P = fx.PAIR2()
    g = fractions_groupoid(P)
    assert verify_fractions_uniqueness(P, g, g) == tuple(range(4))


def test_uniqueness_on_six_arrow_instance():
    # three objects, trivial group, partial arrows
    found = None
    for seed in range(200):
        inst = generate_instance(GeneratorParams(seed=seed, objects=(3, 3), groups=("trivial",), density=0.4))
        C = inst.category
        if len(C) == 6:
            try:
                g0 = fractions_groupoid(C, 0)
            except AlgebraError:
                continue
            found = (C, g0, fractions_groupoid(C, 1))
            break
    assert found is not None
    C, g0, g1 = found
    assert g0.seed != g1.seed
    assert verify_fractions_uniqueness(C, g0, g1)


def test_theorem_twelve_examples():
    P = fx.PAIR2()
    rep = check_theorem_twelve(P, ["id_e", "id_f", "a"])
    assert rep.hypotheses and rep.c_cinv and rep.cinv_c
    assert rep.iso is not None and set(rep.iso.values()) == set(P.arrows)
    rep = check_theorem_twelve(P, ["id_e", "id_f"])
    assert not rep.c_cinv and not rep.hypotheses and rep.iso is None
    rep = check_theorem_twelve(P, P.arrows)
    assert rep.hypotheses and rep.iso == {x: x for x in P.arrows}
    rep = check_theorem_twelve(P, ["a", "a^-1"])
    assert not rep.closed
    with pytest.raises(AlgebraError) as err:
        check_theorem_twelve(fx.ARROW(), ["id_e"])
    assert err.value.code == "NOT_A_GROUPOID"


def test_fraction_groupoid_inverse_table_is_consistent():
    G = pair_groupoid(3, 3)
    fg = fractions_groupoid(G)
    assert tuple(check_groupoid(fg.groupoid).table) == fg.inverse


def test_theorem_violation_bundle_is_jsonable():
    import json
    err = TheoremViolation("c", "t", {"x": (1, 2)})
    assert json.loads(json.dumps(err.bundle()))["witness"] == {"x": [1, 2]}
