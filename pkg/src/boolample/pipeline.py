"""Full embedding of a Boolean ample monoid with condition (C) into a Boolean inverse monoid.

``S -> C(S) -> G`` (groupoid of fractions) ``-> T = KB(G)``, with ``a -> iota(X_a)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .category import DEFAULT_MAX_ARROWS, KBResult, kb_monoid
from .errors import AlgebraError, TheoremViolation
from .filters import PrimeFilterCategory, build_category
from .monoid import HomomorphismMap, MonoidTable, check_homomorphism, classify, inverses, join_all
from .ore import FractionGroupoid, check_condition_C, fractions_groupoid

CERTIFICATES = ("injective", "homomorphic", "full", "fraction-join-cover")


@dataclass(frozen=True, eq=False)
class EmbeddingResult:
    source: MonoidTable
    target: MonoidTable
    map: tuple[int, ...]
    certificates: dict[str, bool]
    cover: dict[int, tuple[tuple[int, int], ...]]  # t -> shortest list of (a, b) with t = V eps(a)^-1 eps(b)
    pfc: PrimeFilterCategory = field(repr=False)
    fractions: FractionGroupoid = field(repr=False)
    kb: KBResult = field(repr=False)

    @property
    def ok(self) -> bool:
        return all(self.certificates.values())

    @property
    def max_cover(self) -> int:
        return max((len(v) for v in self.cover.values()), default=0)

    def to_dict(self) -> dict:
        S, T = self.source, self.target
        return {
            "source_size": len(S),
            "target_size": len(T),
            "target_class": classify(T).name,
            "map": {S.label(a): T.label(t) for a, t in enumerate(self.map)},
            "certificates": dict(self.certificates),
            "max_fractions_per_join": self.max_cover,
            "cover": {T.label(t): [[S.label(a), S.label(b)] for a, b in ps]
                      for t, ps in sorted(self.cover.items())},
        }


def _fraction_cover(S: MonoidTable, T: MonoidTable, eps: list[int],
                    inv: np.ndarray) -> dict[int, tuple[tuple[int, int], ...]] | None:
    """For each nonzero t a smallest family of fractions whose join is t, or None."""
    fr: dict[int, tuple[int, int]] = {}
    for a in range(len(S)):
        for b in range(len(S)):
            f = int(T.mult[inv[eps[a]], eps[b]])
            if f != T.zero:
                fr.setdefault(f, (a, b))
    out = {}
    for t in range(len(T)):
        if t == T.zero:
            continue
        below = [f for f in fr if T.leq[f, t]]
        if join_all(T, below) != t:
            return None
        for k in range(1, len(below) + 1):
            hit = next((c for c in combinations(below, k) if join_all(T, c) == t), None)
            if hit is not None:
                out[t] = tuple(fr[f] for f in hit)
                break
    return out


def embed_pipeline(S: MonoidTable, max_arrows: int | None = DEFAULT_MAX_ARROWS, seed: int = 0) -> EmbeddingResult:
    cls = classify(S)
    if not (cls.ample and cls.boolean):
        raise AlgebraError("NOT_BOOLEAN_AMPLE", cls.name, None)
    cc = check_condition_C(S)
    if not cc.holds:
        raise AlgebraError("CONDITION_C_FAILS", "", cc.to_dict()["counterexample"])
    pfc = build_category(S)
    fg = fractions_groupoid(pfc.category, seed)
    kb = kb_monoid(fg.groupoid, max_arrows)
    T = kb.monoid
    eps = [kb.index[frozenset(fg.iota[i] for i in pfc.X[a])] for a in range(len(S))]
    h = HomomorphismMap(S, T, eps)
    inv = inverses(T)
    certs = {
        "injective": len(set(eps)) == len(S),
        "homomorphic": check_homomorphism(h).ok,
        "full": set(T.idempotents) <= set(eps),
    }
    cover = _fraction_cover(S, T, eps, inv) if inv is not None else None
    certs["fraction-join-cover"] = cover is not None
    if not classify(T).inverse or not classify(T).boolean:
        raise TheoremViolation("KB of a groupoid is a Boolean inverse monoid", "embedding", classify(T).name)
    bad = [c for c in CERTIFICATES if not certs[c]]
    if bad:
        raise TheoremViolation(f"embedding certificate {bad[0]}", "full embedding", certs)
    return EmbeddingResult(S, T, tuple(eps), certs, cover or {}, pfc, fg, kb)


@dataclass(frozen=True)
class Correspondence:
    up: dict[int, int]  # prime filter of S -> prime filter of T
    missed: tuple[int, ...]  # prime filters of T meeting no image element

    def to_dict(self, src: PrimeFilterCategory, tgt: PrimeFilterCategory) -> dict:
        S, T = src.monoid, tgt.monoid
        return {"pairs": {src.filters[i].label(S): tgt.filters[j].label(T) for i, j in sorted(self.up.items())},
                "unmatched": [tgt.filters[j].label(T) for j in self.missed]}


def au_bd_correspondence(res: EmbeddingResult) -> Correspondence:
    """``A -> A^u`` and ``B -> B^d`` are mutually inverse on filters meeting the image."""
    S, T, eps = res.source, res.target, res.map
    src, tgt = res.pfc, build_category(T)
    back = {t: a for a, t in enumerate(eps)}
    up = {}
    for i, A in enumerate(src.filters):
        Au = frozenset(t for t in range(len(T)) if any(T.leq[eps[a], t] for a in A.carrier))
        j = tgt.index.get(Au)
        if j is None:
            raise TheoremViolation("A^u is a prime filter of T", "A^u / B^d", A.label(S))
        if frozenset(back[t] for t in Au if t in back) != A.carrier:
            raise TheoremViolation("(A^u)^d = A", "A^u / B^d", A.label(S))
        up[i] = j
    missed = []
    hit = set(up.values())
    for j, B in enumerate(tgt.filters):
        Bd = frozenset(back[t] for t in B.carrier if t in back)
        if not Bd:
            missed.append(j)
            continue
        i = src.index.get(Bd)
        if i is None:
            raise TheoremViolation("B^d is a prime filter of S", "A^u / B^d", B.label(T))
        if up[i] != j:
            raise TheoremViolation("(B^d)^u = B", "A^u / B^d", B.label(T))
    if len(hit) != len(up) or hit | set(missed) != set(range(len(tgt.filters))):
        raise TheoremViolation("A -> A^u is a bijection onto filters meeting S", "A^u / B^d", None)
    return Correspondence(up, tuple(missed))
