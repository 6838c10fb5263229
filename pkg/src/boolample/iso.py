"""Brute-force isomorphism search for small monoids and categories (backtracking)."""

from __future__ import annotations

from typing import Mapping

import numpy as np

from .category import CategoryTable
from .monoid import MonoidTable


def _monoid_signature(M: MonoidTable, a: int) -> tuple:
    idem = M.mul(a, a) == a
    return (a == M.zero, a == M.one, idem, a in M.projections,
            int(M.leq[:, a].sum()), int(M.leq[a, :].sum()))


def find_monoid_isomorphism(M: MonoidTable, N: MonoidTable) -> tuple[int, ...] | None:
    """A bijection preserving product, star, plus, zero and one, or ``None``."""
    n = len(M)
    if n != len(N):
        return None
    sig_m = [_monoid_signature(M, a) for a in range(n)]
    sig_n = [_monoid_signature(N, b) for b in range(n)]
    if sorted(sig_m) != sorted(sig_n):
        return None
    order = sorted(range(n), key=lambda a: sum(s == sig_m[a] for s in sig_m))
    f = [-1] * n
    used = [False] * n
    mm, nm = M.mult, N.mult

    def consistent(a: int) -> bool:
        for b in range(n):
            if f[b] < 0:
                continue
            for u, v in ((a, b), (b, a)):
                w = mm[u, v]
                if f[w] >= 0 and f[w] != nm[f[u], f[v]]:
                    return False
            if f[M.star[b]] >= 0 and f[M.star[b]] != N.star[f[b]]:
                return False
            if f[M.plus[b]] >= 0 and f[M.plus[b]] != N.plus[f[b]]:
                return False
        return True

    def walk(i: int) -> bool:
        if i == n:
            return True
        a = order[i]
        for b in range(n):
            if used[b] or sig_n[b] != sig_m[a]:
                continue
            f[a], used[b] = b, True
            if consistent(a) and walk(i + 1):
                return True
            f[a], used[b] = -1, False
        return False

    if not walk(0):
        return None
    out = np.array(f)
    if (out[mm] != nm[np.ix_(out, out)]).any() or (out[M.star] != N.star[out]).any() \
            or (out[M.plus] != N.plus[out]).any():
        return None
    return tuple(int(v) for v in f)


def find_category_isomorphism(C: CategoryTable, D: CategoryTable,
                              fixed: Mapping[int, int] | None = None) -> tuple[int, ...] | None:
    """An isomorphic relabelling ``C -> D`` extending ``fixed``, or ``None``."""
    n = len(C)
    if n != len(D) or len(C.identities) != len(D.identities):
        return None

    def sig(K: CategoryTable, x: int) -> tuple:
        return (K.is_identity(x), len(K.out_of[K.d[x]]), len(K.into[K.r[x]]),
                len(K.hom(K.d[x], K.r[x])), K.d[x] == K.r[x])

    sc = [sig(C, x) for x in range(n)]
    sd = [sig(D, y) for y in range(n)]
    if sorted(sc) != sorted(sd):
        return None
    triples: dict[int, list[tuple[int, int, int]]] = {x: [] for x in range(n)}
    for (x, y), z in C.comp.items():
        for t in {x, y, z}:
            triples[t].append((x, y, z))
    # identities first so that objects are pinned before arrows between them
    order = sorted(range(n), key=lambda x: (not C.is_identity(x), x not in (fixed or {}), x))
    f = [-1] * n
    used = [False] * n

    def ok(x: int) -> bool:
        y = f[x]
        for e, g in ((C.d[x], D.d[y]), (C.r[x], D.r[y])):
            if f[e] >= 0 and f[e] != g:
                return False
        for a, b, c in triples[x]:
            if f[a] >= 0 and f[b] >= 0 and f[c] >= 0 and D.comp.get((f[a], f[b])) != f[c]:
                return False
        return True

    def walk(i: int) -> bool:
        if i == n:
            return True
        x = order[i]
        if fixed and x in fixed:
            cands = [fixed[x]]
        else:
            cands = range(n)
        for y in cands:
            if used[y] or sd[y] != sc[x]:
                continue
            f[x], used[y] = y, True
            if ok(x) and walk(i + 1):
                return True
            f[x], used[y] = -1, False
        return False

    return tuple(f) if walk(0) else None
