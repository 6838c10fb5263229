"""Condition (C), and the groupoid of fractions of a cancellative right reversible category.

Fractions are pairs ``(a, b)`` with ``r(a) = r(b)``, read as ``a^-1 b``. Two pairs are
equivalent when some ``(u, u')`` gives ``ua = u'a'`` and ``ub = u'b'``. To multiply
``a^-1 b`` by ``c^-1 d`` (``d(b) = d(c)``) pick ``pb = qc``; the product is
``(pa)^-1 (qd)``. Well-definedness is not assumed: every representative and every
admissible ``(p, q)`` is tried and must agree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .category import (CategoryTable, category_violations, check_cancellative, check_functor,
                       check_groupoid, check_right_reversible, common_left_multiples, is_isomorphism,
                       subcategory)
from .errors import AlgebraError, TheoremViolation
from .filters import build_category, stone_space
from .iso import find_category_isomorphism
from .monoid import ClauseReport, MonoidTable


# --- condition (C) --------------------------------------------------------------

def projection_filters(M: MonoidTable) -> list[frozenset[int]]:
    """Prime filters of E(M), one per atom of Proj(M), in atom order."""
    return [pt.carrier for pt in stone_space(M).points]


def is_prime_filter_of_idempotents(M: MonoidTable, F: frozenset[int]) -> bool:
    E = set(M.idempotents)
    if not F or not F <= E or M.zero in F:
        return False
    for e in F:
        for f in E:
            if M.leq[e, f] and f not in F:
                return False
        for f in F:
            if M.mul(e, f) not in F:
                return False
    for e in E:
        for f in E:
            j = M.joins[e, f]
            if j >= 0 and j in F and e not in F and f not in F:
                return False
    return True


@dataclass(frozen=True, eq=False)
class RelativizedOrder:
    base: frozenset[int]
    leq: np.ndarray

    @property
    def pairs(self) -> list[tuple[int, int]]:
        return [(int(x), int(y)) for x, y in np.argwhere(self.leq)]

    def __contains__(self, pair) -> bool:
        return bool(self.leq[pair])


def relativized_order(M: MonoidTable, F: frozenset[int]) -> RelativizedOrder:
    """``x <=_F y`` iff ``x*, y* in F`` and ``x <= y``."""
    F = frozenset(F)
    if not is_prime_filter_of_idempotents(M, F):
        raise AlgebraError("F_NOT_PRIME", "not a prime filter of E(S)", M.labels(sorted(F)))
    inF = np.zeros(len(M), dtype=bool)
    inF[list(F)] = True
    s = inF[M.star]
    return RelativizedOrder(F, M.leq & s[:, None] & s[None, :])


def _candidates(M: MonoidTable, F: frozenset[int]) -> np.ndarray:
    """``out[a, c]``: c is nonzero and some ``a1 <=_F a`` has ``a1+ <= c*``."""
    n = len(M)
    rel = relativized_order(M, F).leq  # rel[a1, a]
    hits = np.zeros((n, n), dtype=bool)  # hits[a, q]: q = a1+ for some a1 <=_F a
    a1s, as_ = np.nonzero(rel)
    hits[as_, M.plus[a1s]] = True
    below_star = M.leq[:, M.star]  # [q, c]: q <= c*
    out = (hits.astype(np.int64) @ below_star.astype(np.int64)) > 0
    out[:, M.zero] = False
    return out


@dataclass(frozen=True, eq=False)
class ConditionCReport:
    monoid: MonoidTable
    filters: tuple[frozenset[int], ...]
    holds_at: tuple[np.ndarray, ...]  # holds_at[k][a, b], meaningful where a*b* in filters[k]
    domain: tuple[np.ndarray, ...]
    counterexample: tuple[int, int, int] | None  # (filter index, a, b)

    @property
    def holds(self) -> bool:
        return self.counterexample is None

    def witness(self, k: int, a: int, b: int) -> tuple[int, int, int, int, int] | None:
        """Lexicographically least ``(c, d, a1, b1, e)`` for ``(F_k, a, b)``, or ``None``."""
        M, F = self.monoid, self.filters[k]
        if not self.domain[k][a, b] or not self.holds_at[k][a, b]:
            return None
        m, st, pl, leq = M.mult, M.star, M.plus, M.leq
        rel = relativized_order(M, F).leq
        cand = _candidates(M, F)
        p = _filter_min(M, F)
        ap, bp = m[a, p], m[b, p]
        for c in np.flatnonzero(cand[a]):
            ds = np.flatnonzero(cand[b] & (m[:, bp] == m[c, ap]))
            if ds.size:
                d = int(ds[0])
                break
        else:  # pragma: no cover - holds_at says otherwise
            return None
        c = int(c)
        a1 = next(x for x in range(len(M)) if rel[x, a] and leq[pl[x], st[c]])
        b1 = next(x for x in range(len(M)) if rel[x, b] and leq[pl[x], st[d]])
        e = next(x for x in sorted(F) if m[c, m[a, x]] == m[d, m[b, x]])
        return c, d, a1, b1, e

    def to_dict(self) -> dict:
        M = self.monoid
        out: dict = {"holds": self.holds}
        if self.counterexample is not None:
            k, a, b = self.counterexample
            out["counterexample"] = {"F": "^" + M.label(_filter_min(M, self.filters[k])),
                                     "a": M.label(a), "b": M.label(b)}
        return out


def _filter_min(M: MonoidTable, F: frozenset[int]) -> int:
    return next(e for e in sorted(F) if all(M.leq[e, f] for f in F))


def check_condition_C(M: MonoidTable) -> ConditionCReport:
    """Exhaustive check of condition (C) over every prime filter F of E(M).

    For ``e in F`` we have ``cae = dbe`` iff ``c a p = d b p`` where ``p`` is the least
    element of F, so the search over ``e`` collapses to ``p`` (the reported ``e`` is still
    the least one that works)."""
    n = len(M)
    filters = tuple(projection_filters(M))
    holds_at, domain = [], []
    counter = None
    m = M.mult
    for k, F in enumerate(filters):
        inF = np.zeros(n, dtype=bool)
        inF[list(F)] = True
        dom = inF[m[np.ix_(M.star, M.star)]]
        cand = _candidates(M, F)
        p = _filter_min(M, F)
        xp = m[:, p]
        # vals[a, v]: v = c (a p) for some admissible c
        vals = np.zeros((n, n), dtype=bool)
        aa, cc = np.nonzero(cand)
        vals[aa, m[cc, xp[aa]]] = True
        ok = (vals.astype(np.int64) @ vals.T.astype(np.int64)) > 0
        holds_at.append(ok)
        domain.append(dom)
        bad = np.argwhere(dom & ~ok)
        if counter is None and len(bad):
            counter = (k, int(bad[0][0]), int(bad[0][1]))
    return ConditionCReport(M, filters, tuple(holds_at), tuple(domain), counter)


def validate_condition_C_witness(M: MonoidTable, F: frozenset[int], a: int, b: int,
                                 w: tuple[int, int, int, int, int]) -> bool:
    """Scalar re-check of a reported witness against the literal clauses."""
    c, d, a1, b1, e = w
    st, pl = M.star, M.plus

    def rel(x, y):
        return st[x] in F and st[y] in F and M.leq[x, y]

    return (c != M.zero and d != M.zero and rel(a1, a) and M.leq[pl[a1], st[c]]
            and rel(b1, b) and M.leq[pl[b1], st[d]] and e in F
            and M.product(c, a, e) == M.product(d, b, e))


@dataclass(frozen=True)
class EquivalenceReport:
    condition_c: bool
    right_reversible: bool
    counterexample: dict | None = None
    reversibility_witness: tuple[str, str] | None = None

    @property
    def agree(self) -> bool:
        return self.condition_c == self.right_reversible


def mary_anne_check(M: MonoidTable) -> EquivalenceReport:
    """Condition (C) for M against right reversibility of C(M), computed independently."""
    cc = check_condition_C(M)
    C = build_category(M).category
    rr = check_right_reversible(C)
    rep = EquivalenceReport(cc.holds, rr.holds, cc.to_dict().get("counterexample"),
                            tuple(C.labels(rr.witness)) if rr.witness else None)
    if not rep.agree:
        raise TheoremViolation("C(S) right reversible iff condition (C)", "condition (C)",
                               {"condition_c": cc.holds, "right_reversible": rr.holds})
    return rep


def corollary_check(M: MonoidTable, report: ConditionCReport | None = None) -> ClauseReport:
    """``a*b* != 0`` implies a nonzero common left multiple ``sa = tb``."""
    report = report or check_condition_C(M)
    if not report.holds:
        raise AlgebraError("CONDITION_C_FAILS", "", report.to_dict()["counterexample"])
    n = len(M)
    m = M.mult
    lefts = np.zeros((n, n), dtype=bool)  # lefts[a, v]: v = sa for some s
    lefts[np.arange(n)[None, :], m] = True
    lefts[:, M.zero] = False
    common = (lefts.astype(np.int64) @ lefts.T.astype(np.int64)) > 0
    need = m[np.ix_(M.star, M.star)] != M.zero
    bad = np.argwhere(need & ~common)
    if len(bad):
        a, b = (int(v) for v in bad[0])
        raise TheoremViolation("Sa and Sb share a nonzero element", "corollary of condition (C)",
                               M.labels((a, b)))
    return ClauseReport(True)


def common_left_multiple(M: MonoidTable, a: int, b: int) -> tuple[int, int] | None:
    for s in range(len(M)):
        v = M.mul(s, a)
        if v == M.zero:
            continue
        for t in range(len(M)):
            if M.mul(t, b) == v:
                return s, t
    return None


# --- groupoid of fractions ---------------------------------------------------------

Pair = tuple[int, int]


@dataclass(frozen=True, eq=False)
class FractionGroupoid:
    category: CategoryTable
    classes: tuple[tuple[Pair, ...], ...]  # canonical representative first
    class_of: dict[Pair, int]
    groupoid: CategoryTable
    inverse: tuple[int, ...]
    iota: tuple[int, ...]
    seed: int
    equivalence_witnesses: dict[tuple[Pair, Pair], tuple[int, int]] = field(repr=False)

    def fraction(self, a: int, b: int) -> int:
        return self.class_of[(a, b)]

    @cached_property
    def labels(self) -> tuple[str, ...]:
        return self.groupoid.arrows


def _order(C: CategoryTable, seed: int) -> list[int]:
    xs = list(range(len(C)))
    return xs[::-1] if seed % 2 else xs


def _equivalence_witness(C: CategoryTable, p1: Pair, p2: Pair, order: list[int]) -> tuple[int, int] | None:
    (a, b), (a2, b2) = p1, p2
    if C.d[a] != C.d[a2] or C.d[b] != C.d[b2]:
        return None
    for u in order:
        if C.d[u] != C.r[a]:
            continue
        ua, ub = C.comp[(u, a)], C.comp[(u, b)]
        for u2 in order:
            if C.d[u2] == C.r[a2] and C.r[u2] == C.r[u] \
                    and C.comp[(u2, a2)] == ua and C.comp[(u2, b2)] == ub:
                return u, u2
    return None


def _fraction_label(C: CategoryTable, a: int, b: int) -> str:
    if C.is_identity(a):
        return C.label(b)
    if C.is_identity(b):
        return C.label(a) + "^-1"
    return f"{C.label(a)}^-1.{C.label(b)}"


def fractions_groupoid(C: CategoryTable, seed: int = 0) -> FractionGroupoid:
    if not check_cancellative(C):
        raise AlgebraError("NOT_CANCELLATIVE", "", check_cancellative(C).witness)
    rr = check_right_reversible(C)
    if not rr:
        raise AlgebraError("NOT_RIGHT_REVERSIBLE", "", C.labels(rr.witness))
    order = _order(C, seed)
    pos = {x: i for i, x in enumerate(order)}
    pairs = [(a, b) for a in order for b in order if C.r[a] == C.r[b]]

    # equivalence classes; the computed relation must already be transitive
    witnesses: dict[tuple[Pair, Pair], tuple[int, int]] = {}
    class_of: dict[Pair, int] = {}
    raw_classes: list[list[Pair]] = []
    for p in pairs:
        if p in class_of:
            continue
        members = []
        for q in pairs:
            w = _equivalence_witness(C, p, q, order)
            if w is not None:
                witnesses[(p, q)] = w
                members.append(q)
        for q in members:
            if q in class_of:
                raise TheoremViolation("pair equivalence is transitive", "groupoid of fractions",
                                       (C.labels(p), C.labels(q)), code="ILL_DEFINED")
            class_of[q] = len(raw_classes)
        raw_classes.append(members)
    for members in raw_classes:
        for p in members:
            for q in members:
                if (p, q) not in witnesses:
                    w = _equivalence_witness(C, p, q, order)
                    if w is None:
                        raise TheoremViolation("pair equivalence is transitive", "groupoid of fractions",
                                               (C.labels(p), C.labels(q)), code="ILL_DEFINED")
                    witnesses[(p, q)] = w

    def pref(p: Pair):
        a, b = p
        return (0 if C.is_identity(a) else 1 if C.is_identity(b) else 2, pos[a], pos[b])

    raw_classes = [sorted(ms, key=pref) for ms in raw_classes]
    raw_classes.sort(key=lambda ms: pref(ms[0]) if seed % 2 == 0 else tuple(-v for v in pref(ms[0])))
    class_of = {p: k for k, ms in enumerate(raw_classes) for p in ms}
    classes = tuple(tuple(ms) for ms in raw_classes)

    n = len(classes)
    ident = {e: class_of[(e, e)] for e in C.identities}
    d = [ident[C.d[ms[0][1]]] for ms in classes]
    r = [ident[C.d[ms[0][0]]] for ms in classes]

    def multiply(g: int, h: int, choose_all: bool) -> set[int]:
        out = set()
        for a, b in (classes[g] if choose_all else classes[g][:1]):
            for c, dd in (classes[h] if choose_all else classes[h][:1]):
                choices = sorted(common_left_multiples(C, b, c), key=lambda pq: (pos[pq[0]], pos[pq[1]]))
                if not choices:
                    raise TheoremViolation("common left multiple exists", "right reversibility",
                                           C.labels((b, c)), code="ILL_DEFINED")
                for p, q in (choices if choose_all else choices[:1]):
                    out.add(class_of[(C.comp[(p, a)], C.comp[(q, dd)])])
        return out

    comp = {}
    for g in range(n):
        for h in range(n):
            if d[g] != r[h]:
                continue
            results = multiply(g, h, choose_all=True)
            if len(results) != 1:
                raise TheoremViolation("fraction product independent of representatives and (p, q)",
                                       "groupoid of fractions",
                                       (C.labels(classes[g][0]), C.labels(classes[h][0])),
                                       code="ILL_DEFINED")
            comp[(g, h)] = multiply(g, h, choose_all=False).pop()

    labels = []
    seen_labels: set[str] = set()
    for ms in classes:
        lab = _fraction_label(C, *ms[0])
        while lab in seen_labels:
            lab += "'"
        seen_labels.add(lab)
        labels.append(lab)
    G = CategoryTable(tuple(labels), tuple(sorted(ident.values())), tuple(d), tuple(r), comp)
    bad = category_violations(G)
    if bad:
        raise TheoremViolation("fractions form a category", "groupoid of fractions", bad[0])
    inverse = tuple(class_of[(ms[0][1], ms[0][0])] for ms in classes)
    gv = check_groupoid(G)
    if not gv or tuple(gv.table) != inverse:
        raise TheoremViolation("class(b, a) inverts class(a, b)", "groupoid of fractions",
                               G.label(gv.witness) if gv.witness is not None else None)

    iota = tuple(class_of[(C.r[x], x)] for x in range(len(C)))
    if len(set(iota)) != len(C):
        raise TheoremViolation("iota is injective", "groupoid of fractions", None)
    bad_functor = check_functor(C, G, iota)
    if bad_functor:
        raise TheoremViolation("iota is a functor", "groupoid of fractions", bad_functor)
    if sorted(iota[e] for e in C.identities) != list(G.identities):
        raise TheoremViolation("iota(C) is wide", "groupoid of fractions", None)
    for k, ms in enumerate(classes):
        for a, b in ms:
            if G.comp.get((inverse[iota[a]], iota[b])) != k:
                raise TheoremViolation("every arrow is iota(a)^-1 iota(b)", "groupoid of fractions",
                                       (G.label(k), C.label(a), C.label(b)))
    return FractionGroupoid(C, classes, class_of, G, inverse, iota, seed, witnesses)


def verify_fractions_uniqueness(C: CategoryTable, G1: FractionGroupoid, G2: FractionGroupoid) -> tuple[int, ...]:
    """Isomorphism ``G1 -> G2`` commuting with the two embeddings of C."""
    fixed = {G1.iota[x]: G2.iota[x] for x in range(len(C))}
    iso = find_category_isomorphism(G1.groupoid, G2.groupoid, fixed)
    if iso is None:
        raise TheoremViolation("groupoid of fractions is unique", "groupoid of fractions",
                               {"seeds": (G1.seed, G2.seed)})
    return iso


@dataclass(frozen=True)
class TwelveReport:
    wide: bool
    closed: bool
    right_reversible: bool
    c_cinv: bool  # C C^-1 = G
    cinv_c: bool  # C^-1 C = G
    iso: dict[str, str] | None = None

    @property
    def hypotheses(self) -> bool:
        return self.wide and self.closed and self.right_reversible and self.c_cinv


def check_theorem_twelve(G: CategoryTable, arrows) -> TwelveReport:
    """``arrows`` (labels or indices of G) span the candidate wide subcategory C."""
    idx = sorted({G.index(x) if isinstance(x, str) else int(x) for x in arrows})
    gv = check_groupoid(G)
    if not gv:
        raise AlgebraError("NOT_A_GROUPOID", "", G.label(gv.witness))
    inv = gv.table
    wide = set(G.identities) <= set(idx)
    try:
        sub, incl = subcategory(G, idx)
        closed = True
    except AlgebraError:
        return TwelveReport(wide, False, False, False, False)
    rr = bool(check_right_reversible(sub))
    everything = set(range(len(G)))
    c_cinv = {G.comp[(c, inv[dd])] for c in idx for dd in idx if G.d[c] == G.d[dd]} == everything
    cinv_c = {G.comp[(inv[c], dd)] for c in idx for dd in idx if G.r[c] == G.r[dd]} == everything
    rep = TwelveReport(wide, closed, rr, c_cinv, cinv_c)
    if not rep.hypotheses:
        return rep
    fg = fractions_groupoid(sub)
    phi = []
    for ms in fg.classes:
        images = {G.comp[(inv[incl[a]], incl[b])] for a, b in ms}
        if len(images) != 1:
            raise TheoremViolation("a^-1 b is well defined on classes", "converse theorem", G.labels(images))
        phi.append(images.pop())
    if not is_isomorphism(fg.groupoid, G, phi):
        raise TheoremViolation("fractions of C are isomorphic to G", "converse theorem",
                               dict(zip(fg.groupoid.arrows, G.labels(phi))))
    return TwelveReport(wide, closed, rr, c_cinv, cinv_c,
                        dict(zip(fg.groupoid.arrows, G.labels(phi))))
