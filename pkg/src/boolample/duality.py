"""Object- and morphism-level Stone duality between Boolean restriction monoids and
finite Boolean categories.

Objects: ``S ~ KB(C(S))`` via ``a -> X_a`` and ``C ~ C(KB(C))`` via ``x -> F_x``.
Morphisms: a homomorphism ``theta: S -> T`` gives a covering relational functor
``rho_theta`` from ``C(T)`` to ``C(S)``, and back via ``rho^-1(X_s) = X_theta(s)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .category import (DEFAULT_MAX_ARROWS, CategoryTable, KBResult, bisection_label,
                       is_isomorphism, is_local_bisection, kb_monoid)
from .errors import AlgebraError, TheoremViolation
from .filters import PrimeFilter, PrimeFilterCategory, build_category, is_prime, least_element
from .monoid import ClauseReport, HomomorphismMap, MonoidTable, check_homomorphism


@dataclass(frozen=True)
class IsoCertificate:
    forward: dict[str, str]
    backward: dict[str, str]
    verified: tuple[str, ...]
    forward_index: tuple[int, ...] = field(repr=False, default=())


def iso_monoid_double_dual(M: MonoidTable, max_arrows: int | None = DEFAULT_MAX_ARROWS,
                           pfc: PrimeFilterCategory | None = None,
                           kb: KBResult | None = None) -> IsoCertificate:
    pfc = pfc or build_category(M)
    kb = kb or kb_monoid(pfc.category, max_arrows)
    K = kb.monoid
    f = []
    for a in range(len(M)):
        k = kb.index.get(pfc.X[a])
        if k is None:
            raise TheoremViolation("X_a is a local bisection of C(S)", "S ~ KB(C(S))", M.label(a))
        f.append(k)
    if len(set(f)) != len(M) or len(K) != len(M):
        raise TheoremViolation("a -> X_a is bijective", "S ~ KB(C(S))",
                               {"sizes": (len(M), len(K)), "image": len(set(f))})
    forward = HomomorphismMap(M, K, f)
    rep = check_homomorphism(forward)
    if not rep:
        raise TheoremViolation(f"a -> X_a preserves {rep.clause}", "S ~ KB(C(S))", rep.witness)
    g = [0] * len(K)
    for a, k in enumerate(f):
        g[k] = a
    rep = check_homomorphism(HomomorphismMap(K, M, g))
    if not rep:
        raise TheoremViolation(f"inverse of a -> X_a preserves {rep.clause}", "S ~ KB(C(S))", rep.witness)
    return IsoCertificate(
        {M.label(a): K.label(k) for a, k in enumerate(f)},
        {K.label(k): M.label(a) for a, k in enumerate(f)},
        ("bijective", "zero", "one", "mult", "star", "plus", "join", "inverse is a homomorphism"),
        tuple(f),
    )


def iso_category_double_dual(C: CategoryTable, max_arrows: int | None = DEFAULT_MAX_ARROWS,
                             kb: KBResult | None = None) -> IsoCertificate:
    kb = kb or kb_monoid(C, max_arrows)
    pfc = build_category(kb.monoid)
    D = pfc.category
    f = []
    for x in range(len(C)):
        Fx = frozenset(i for i, A in enumerate(kb.bisections) if x in A)
        k = pfc.index.get(Fx)
        if k is None:
            raise TheoremViolation("F_x is a prime filter of KB(C)", "C ~ C(KB(C))", C.label(x))
        f.append(k)
    if not is_isomorphism(C, D, f):
        raise TheoremViolation("x -> F_x is an isomorphism of categories", "C ~ C(KB(C))",
                               {C.label(x): D.label(y) for x, y in enumerate(f)})
    return IsoCertificate(
        {C.label(x): D.label(y) for x, y in enumerate(f)},
        {D.label(y): C.label(x) for x, y in enumerate(f)},
        ("bijective", "identities", "d", "r", "composition", "inverse is a functor"),
        tuple(f),
    )


# --- relational functors ------------------------------------------------------

@dataclass(frozen=True, eq=False)
class RelationalFunctor:
    """``pairs`` is a subset of ``target x source``; read as an arrow from source to target."""

    source: PrimeFilterCategory
    target: PrimeFilterCategory
    pairs: frozenset[tuple[int, int]]
    decomposition: dict[int, list[PrimeFilter]] = field(default_factory=dict)

    def to_dict(self) -> dict:
        C, D = self.target.category, self.source.category
        return {"pairs": sorted([C.label(c), D.label(d)] for c, d in self.pairs)}


def relational_functor_violation(C: CategoryTable, D: CategoryTable,
                                 pairs: frozenset[tuple[int, int]]) -> tuple[str, tuple] | None:
    """First failure of (RF1)-(RF3), (CRF1), (CRF2) for ``pairs`` in ``C x D``."""
    for e in D.identities:
        fs = [f for f in C.identities if (f, e) in pairs]
        if len(fs) != 1:
            return "RF1", (D.label(e), C.labels(fs))
    for c, d in sorted(pairs):
        if (C.d[c], D.d[d]) not in pairs or (C.r[c], D.r[d]) not in pairs:
            return "RF2", (C.label(c), D.label(d))
    for a, b in sorted(pairs):
        for c, dd in sorted(pairs):
            ac, bd = C.comp.get((a, c)), D.comp.get((b, dd))
            if ac is not None and bd is not None and (ac, bd) not in pairs:
                return "RF3", (C.label(a), D.label(b), C.label(c), D.label(dd))
    by_c: dict[int, list[int]] = {}
    for c, d in pairs:
        by_c.setdefault(c, []).append(d)
    for c, ds in sorted(by_c.items()):
        for b in ds:
            for b2 in ds:
                if b != b2 and (D.d[b] == D.d[b2] or D.r[b] == D.r[b2]):
                    return "CRF1", (C.label(c), D.label(b), D.label(b2))
    for f, e in sorted(pairs):
        if not (C.is_identity(f) and D.is_identity(e)):
            continue
        for a in range(len(C)):
            if C.d[a] == f and not any(D.d[b] == e for b in by_c.get(a, ())):
                return "CRF2", (C.label(f), D.label(e), C.label(a))
            if C.r[a] == f and not any(D.r[b] == e for b in by_c.get(a, ())):
                return "CRF2 (dual)", (C.label(f), D.label(e), C.label(a))
    return None


def preimage(h: HomomorphismMap, B: PrimeFilter) -> frozenset[int]:
    return frozenset(a for a in range(len(h.source)) if h(a) in B.carrier)


def kudryavtseva_decompose(h: HomomorphismMap, B: PrimeFilter) -> list[PrimeFilter]:
    """Split ``theta^-1(B)`` into classes of ``a ~ b iff some c in it lies below both``.

    An empty preimage gives an empty partition."""
    S = h.source
    P = sorted(preimage(h, B))
    if not P:
        return []
    leq = S.leq
    Pa = np.array(P)
    low = leq[np.ix_(Pa, Pa)]  # low[c, a]: c <= a
    rel = (low.T.astype(np.int64) @ low.astype(np.int64)) > 0
    # the relation must already be an equivalence
    if not (rel == rel.T).all() or not np.diag(rel).all() or \
            ((rel.astype(np.int64) @ rel.astype(np.int64) > 0) & ~rel).any():
        raise TheoremViolation("~ is an equivalence relation on theta^-1(B)",
                               "Kudryavtseva decomposition", S.labels(P))
    classes: list[PrimeFilter] = []
    seen: set[int] = set()
    for i, a in enumerate(P):
        if a in seen:
            continue
        cls = frozenset(P[j] for j in np.flatnonzero(rel[i]))
        seen |= cls
        if not is_prime(S, cls):
            raise TheoremViolation("each ~-class is a prime filter", "Kudryavtseva decomposition",
                                   S.labels(sorted(cls)))
        classes.append(PrimeFilter(cls, least_element(S, cls)))
    covered = frozenset().union(*(c.carrier for c in classes))
    if covered != frozenset(P) or sum(len(c.carrier) for c in classes) != len(P):
        raise TheoremViolation("classes partition theta^-1(B)", "Kudryavtseva decomposition", S.labels(P))
    return classes


def rho_from_theta(h: HomomorphismMap, pS: PrimeFilterCategory | None = None,
                   pT: PrimeFilterCategory | None = None) -> RelationalFunctor:
    rep = check_homomorphism(h)
    if not rep:
        raise AlgebraError("NOT_A_HOMOMORPHISM", rep.clause, rep.witness)
    pS = pS or build_category(h.source)
    pT = pT or build_category(h.target)
    pairs = set()
    decomposition = {}
    for j, B in enumerate(pT.filters):
        pre = preimage(h, B)
        contained = [i for i, A in enumerate(pS.filters) if A.carrier <= pre]
        pairs |= {(i, j) for i in contained}
        classes = kudryavtseva_decompose(h, B)
        decomposition[j] = classes
        if sorted(pS.index[c.carrier] for c in classes) != contained:
            raise TheoremViolation("prime filters inside theta^-1(B) are exactly its ~-classes",
                                   "Kudryavtseva decomposition", B.label(h.target))
    pairs = frozenset(pairs)
    bad = relational_functor_violation(pS.category, pT.category, pairs)
    if bad is not None:
        raise TheoremViolation(f"rho_theta satisfies {bad[0]}", bad[0], bad[1])
    return RelationalFunctor(pT, pS, pairs, decomposition)


def theta_from_rho(rho: RelationalFunctor, max_arrows: int | None = DEFAULT_MAX_ARROWS) -> HomomorphismMap:
    pS, pT = rho.target, rho.source
    S, T = pS.monoid, pT.monoid
    D = pT.category
    # certifies that t -> X_t is a bijection onto the local bisections of C(T)
    iso_monoid_double_dual(T, max_arrows, pfc=pT)
    by_X = {pT.X[t]: t for t in range(len(T))}
    up: dict[int, set[int]] = {}
    for c, d in rho.pairs:
        up.setdefault(c, set()).add(d)
    theta = []
    for s in range(len(S)):
        pre = frozenset().union(*(up.get(c, set()) for c in pS.X[s]))
        if not is_local_bisection(D, pre):
            raise TheoremViolation("rho^-1(X_s) is a local bisection", "theta_rho", S.label(s),
                                   code="NOT_A_BISECTION")
        t = by_X.get(pre)
        if t is None:
            raise TheoremViolation("rho^-1(X_s) = X_t for some t", "theta_rho",
                                   (S.label(s), bisection_label(D, pre)))
        theta.append(t)
    out = HomomorphismMap(S, T, theta)
    rep = check_homomorphism(out)
    if not rep:
        raise TheoremViolation(f"theta_rho preserves {rep.clause}", "theta_rho", rep.witness)
    return out


def morphism_round_trip(h: HomomorphismMap) -> ClauseReport:
    rho = rho_from_theta(h)
    back = theta_from_rho(rho)
    for a, (x, y) in enumerate(zip(h.map, back.map)):
        if x != y:
            return ClauseReport(False, "theta_rho_theta = theta", (h.source.label(a),))
    return ClauseReport(True)


def factorization_property(rho: RelationalFunctor) -> ClauseReport:
    """For ``(ab, d)`` in rho find ``d = d1 d2`` with ``(a, d1), (b, d2)`` in rho."""
    C, D = rho.target.category, rho.source.category
    factors: dict[int, list[tuple[int, int]]] = {}
    for (a, b), ab in C.comp.items():
        factors.setdefault(ab, []).append((a, b))
    dfactors: dict[int, list[tuple[int, int]]] = {}
    for (d1, d2), dd in D.comp.items():
        dfactors.setdefault(dd, []).append((d1, d2))
    for x, dd in sorted(rho.pairs):
        for a, b in factors.get(x, ()):
            if not any((a, d1) in rho.pairs and (b, d2) in rho.pairs for d1, d2 in dfactors.get(dd, ())):
                return ClauseReport(False, "factorization", (C.label(a), C.label(b), D.label(dd)))
    return ClauseReport(True)
