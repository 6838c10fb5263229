"""Brute-force reference implementations, written directly from the definitions.

Nothing here uses the package's vectorized code; these are the independent side of
every cross-check in the test suite.
"""

from __future__ import annotations

from itertools import chain, combinations, permutations, product
from types import SimpleNamespace


def subsets(xs):
    xs = list(xs)
    return chain.from_iterable(combinations(xs, k) for k in range(len(xs) + 1))


# --- partial bijections ---------------------------------------------------------

def compose_partial(s: dict, t: dict) -> dict:
    """``s . t``: first t, then s."""
    return {x: s[t[x]] for x in t if t[x] in s}


def symmetric_inverse_monoid(points):
    """All partial bijections on ``points`` as frozensets of pairs, with mult/star/plus."""
    pts = list(points)
    maps = []
    for dom in subsets(pts):
        for img in permutations(pts, len(dom)):
            maps.append(dict(zip(dom, img)))
    key = [frozenset(m.items()) for m in maps]
    where = {k: i for i, k in enumerate(key)}
    mult = [[where[frozenset(compose_partial(s, t).items())] for t in maps] for s in maps]
    star = [where[frozenset((x, x) for x in m)] for m in maps]
    plus = [where[frozenset((y, y) for y in m.values())] for m in maps]
    return key, mult, star, plus


# --- categories ---------------------------------------------------------------

def local_bisections(arrows, d, r):
    return [frozenset(A) for A in subsets(arrows)
            if len({d[x] for x in A}) == len(A) == len({r[x] for x in A})]


def bisection_product(A, B, d, r, comp):
    return frozenset(comp[(a, b)] for a in A for b in B if d[a] == r[b])


def right_reversible(C) -> bool:
    n = len(C.arrows)
    for a in range(n):
        for b in range(n):
            if C.d[a] != C.d[b]:
                continue
            if not any(C.comp.get((u, a)) is not None and C.comp.get((u, a)) == C.comp.get((v, b))
                       for u in range(n) for v in range(n)):
                return False
    return True


def cancellative(C) -> bool:
    n = len(C.arrows)
    for x, y, z in product(range(n), repeat=3):
        if x != y:
            xz, yz = C.comp.get((x, z)), C.comp.get((y, z))
            if xz is not None and xz == yz:
                return False
            zx, zy = C.comp.get((z, x)), C.comp.get((z, y))
            if zx is not None and zx == zy:
                return False
    return True


# --- monoids ------------------------------------------------------------------

def leq(M, a, b) -> bool:
    return M.mult[b][M.star[a]] == a


def compatible(M, a, b) -> bool:
    return M.mult[a][M.star[b]] == M.mult[b][M.star[a]] and M.mult[M.plus[a]][b] == M.mult[M.plus[b]][a]


def upset(M, A):
    n = len(M.elements)
    return frozenset(y for y in range(n) if any(leq(M, x, y) for x in A))


def is_prime_filter(M, A) -> bool:
    """Up-closed, down-directed, proper, and prime for compatible joins."""
    n = len(M.elements)
    A = frozenset(A)
    if not A or M.zero in A or upset(M, A) != A:
        return False
    for a in A:
        for b in A:
            if not any(leq(M, c, a) and leq(M, c, b) for c in A):
                return False
    for a in range(n):
        for b in range(n):
            if a in A or b in A or not compatible(M, a, b):
                continue
            ups = [x for x in range(n) if leq(M, a, x) and leq(M, b, x)]
            lub = [x for x in ups if all(leq(M, x, y) for y in ups)]
            if lub and lub[0] in A:
                return False
    return True


def prime_filters(M):
    return {frozenset(A) for A in subsets(range(len(M.elements))) if is_prime_filter(M, A)}


def projections(M):
    return sorted(set(M.star) | set(M.plus))


def projection_ultrafilters(M):
    """Up-sets in Proj(M) of its atoms."""
    P = projections(M)
    atoms = [p for p in P if p != M.zero and not any(q not in (p, M.zero) and leq(M, q, p) for q in P)]
    return [frozenset(q for q in P if leq(M, p, q)) for p in atoms]


def condition_C_literal(M, F, a, b):
    """First ``(c, d, a1, b1, e)`` in lexicographic order, or None; ``a*b*`` must lie in F."""
    n = len(M.elements)
    m, st, pl = M.mult, M.star, M.plus

    def relF(x, y):
        return st[x] in F and st[y] in F and leq(M, x, y)

    # the three existence clauses are independent once (c, d) is fixed
    for c, d in product(range(n), repeat=2):
        if c == M.zero or d == M.zero:
            continue
        a1s = [x for x in range(n) if relF(x, a) and leq(M, pl[x], st[c])]
        b1s = [x for x in range(n) if relF(x, b) and leq(M, pl[x], st[d])]
        es = [e for e in sorted(F) if m[m[c][a]][e] == m[m[d][b]][e]]
        if a1s and b1s and es:
            return c, d, a1s[0], b1s[0], es[0]
    return None


def plain(M):
    """A list-based copy of a MonoidTable so the oracles index plain Python lists."""
    return SimpleNamespace(elements=list(M.elements), mult=M.mult.tolist(), star=M.star.tolist(),
                           plus=M.plus.tolist(), zero=M.zero, one=M.one)
