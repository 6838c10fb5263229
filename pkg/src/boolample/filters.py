"""Prime filters of a finite Boolean restriction monoid and the category C(S) they form.

In the finite case every filter is the up-set of its least element, so a filter is
stored as ``(carrier, min)``. Enumeration proposes the up-sets of minimal nonzero
elements; primeness and maximality are then checked directly against their
definitions rather than assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

import numpy as np

from .category import CategoryTable, category_violations
from .errors import AlgebraError, TheoremViolation
from .monoid import MonoidTable


@dataclass(frozen=True)
class PrimeFilter:
    carrier: frozenset[int]
    min: int

    def __contains__(self, a: int) -> bool:
        return a in self.carrier

    def label(self, M: MonoidTable) -> str:
        return "^" + M.label(self.min)


def least_element(M: MonoidTable, A: Iterable[int]) -> int | None:
    A = list(A)
    for a in A:
        if all(M.leq[a, b] for b in A):
            return a
    return None


def is_filter(M: MonoidTable, A: frozenset[int]) -> bool:
    """Nonempty, up-closed and down-directed."""
    if not A or M.upset(A) != A:
        return False
    idx = list(A)
    inA = np.zeros(len(M), dtype=bool)
    inA[idx] = True
    # for every a, b in A some c in A lies below both
    low = M.leq[np.ix_(inA, idx)]  # low[c, a]: c <= a
    return bool((low.T.astype(np.int64) @ low.astype(np.int64) > 0).all())


def is_prime(M: MonoidTable, A: frozenset[int]) -> bool:
    """A proper filter such that a compatible join in ``A`` has a joinand in ``A``."""
    if M.zero in A or not is_filter(M, A):
        return False
    inA = np.zeros(len(M), dtype=bool)
    inA[list(A)] = True
    j = M.joins
    split = M.compat & (j >= 0) & inA[np.where(j >= 0, j, 0)]
    return not (split & ~inA[:, None] & ~inA[None, :]).any()


def is_ultrafilter(M: MonoidTable, A: frozenset[int]) -> bool:
    """Maximal among proper filters; every finite filter is the up-set of its minimum."""
    if M.zero in A or not is_filter(M, A):
        return False
    for x in range(len(M)):
        if x == M.zero:
            continue
        B = M.upset([x])
        if A < B:
            return False
    return True


def _make(M: MonoidTable, A: frozenset[int], tag: str) -> PrimeFilter:
    if not is_prime(M, A):
        raise TheoremViolation("result is a prime filter", tag, M.labels(sorted(A)))
    return PrimeFilter(A, least_element(M, A))


def enumerate_prime_filters(M: MonoidTable) -> list[PrimeFilter]:
    leq = M.leq
    out = []
    for m in range(len(M)):
        if m == M.zero:
            continue
        if any(leq[x, m] for x in range(len(M)) if x not in (m, M.zero)):
            continue
        A = M.upset([m])
        prime, ultra = is_prime(M, A), is_ultrafilter(M, A)
        if not (prime and ultra):
            raise TheoremViolation("up-set of a minimal nonzero element is a prime ultrafilter",
                                   "prime filters and ultrafilters coincide",
                                   {"min": M.label(m), "prime": prime, "ultra": ultra})
        out.append(PrimeFilter(A, m))
    return out


def filter_d(M: MonoidTable, A: PrimeFilter) -> PrimeFilter:
    return _make(M, M.upset(int(M.star[a]) for a in A.carrier), "d(A) = (A*)^")


def filter_r(M: MonoidTable, A: PrimeFilter) -> PrimeFilter:
    return _make(M, M.upset(int(M.plus[a]) for a in A.carrier), "r(A) = (A+)^")


def filter_product(M: MonoidTable, A: PrimeFilter, B: PrimeFilter) -> PrimeFilter:
    if filter_d(M, A) != filter_r(M, B):
        raise AlgebraError("NOT_COMPOSABLE", "d(A) != r(B)", (A.label(M), B.label(M)))
    return _make(M, M.upset(M.set_product(A.carrier, B.carrier)), "A.B = (AB)^")


@dataclass(frozen=True, eq=False)
class PrimeFilterCategory:
    monoid: MonoidTable
    filters: tuple[PrimeFilter, ...]
    category: CategoryTable
    X: tuple[frozenset[int], ...]  # X[a]: indices of the filters containing a

    @cached_property
    def index(self) -> dict[frozenset[int], int]:
        return {F.carrier: i for i, F in enumerate(self.filters)}


def build_category(M: MonoidTable) -> PrimeFilterCategory:
    filters = enumerate_prime_filters(M)
    index = {F.carrier: i for i, F in enumerate(filters)}
    d = [index[filter_d(M, F).carrier] for F in filters]
    r = [index[filter_r(M, F).carrier] for F in filters]
    proj = set(M.projections)
    identities = [i for i, F in enumerate(filters) if F.carrier & proj]
    if identities != [i for i in range(len(filters)) if d[i] == i]:
        raise TheoremViolation("identities are the prime filters containing projections", "C(S)",
                               [filters[i].label(M) for i in identities])
    comp = {}
    for i, A in enumerate(filters):
        for j, B in enumerate(filters):
            if d[i] == r[j]:
                comp[(i, j)] = index[filter_product(M, A, B).carrier]
    labels = tuple(F.label(M) for F in filters)
    C = CategoryTable(labels, tuple(identities), tuple(d), tuple(r), comp)
    bad = category_violations(C)
    if bad:
        raise TheoremViolation("C(S) is a category", "C(S)", bad[0])
    for i, A in enumerate(filters):
        dA = filters[d[i]].carrier
        for a in A.carrier:
            if M.upset(M.set_product([a], dA)) != A.carrier:
                raise TheoremViolation("A = (a d(A))^ for a in A", "coset form",
                                       (A.label(M), M.label(a)))
    X = tuple(frozenset(i for i, F in enumerate(filters) if a in F.carrier) for a in range(len(M)))
    return PrimeFilterCategory(M, tuple(filters), C, X)


@dataclass(frozen=True)
class StonePoint:
    atom: int  # the generating atom of Proj(S)
    carrier: frozenset[int]  # the ultrafilter of Proj(S)


@dataclass(frozen=True, eq=False)
class StoneSpace:
    points: tuple[StonePoint, ...]
    to_identity: tuple[int, ...]  # point -> identity arrow of C(S)


def _is_projection_ultrafilter(M: MonoidTable, E: frozenset[int]) -> bool:
    P = M.projections
    if M.zero in E or not E:
        return False
    for p in E:
        for q in P:
            if M.leq[p, q] and q not in E:
                return False
        for q in E:
            if M.mul(p, q) not in E:
                return False
    for p in P:
        for q in P:
            j = M.joins[p, q]
            if j >= 0 and j in E and p not in E and q not in E:
                return False
    # maximal: no proper Proj-filter strictly above
    for p in P:
        if p != M.zero:
            B = frozenset(q for q in P if M.leq[p, q])
            if E < B:
                return False
    return True


def stone_space(M: MonoidTable, pfc: PrimeFilterCategory | None = None) -> StoneSpace:
    pfc = pfc or build_category(M)
    C = pfc.category
    points = []
    for p in M.projection_atoms:
        E = frozenset(q for q in M.projections if M.leq[p, q])
        if not _is_projection_ultrafilter(M, E):
            raise TheoremViolation("atom generates an ultrafilter of Proj(S)", "Stone space", M.label(p))
        points.append(StonePoint(p, E))
    to_id = []
    for pt in points:
        i = pfc.index.get(M.upset(pt.carrier))
        if i is None or not C.is_identity(i):
            raise TheoremViolation("E^ is an identity of C(S)", "Stone space", M.label(pt.atom))
        to_id.append(i)
    if sorted(to_id) != list(C.identities):
        raise TheoremViolation("identities of C(S) correspond to points of the Stone space",
                               "Stone space", C.labels(to_id))
    reached = set()
    for pt in points:
        E = list(pt.carrier)
        for a in range(len(M)):
            if int(M.star[a]) not in pt.carrier:
                continue
            A = M.upset(M.set_product([a], E))
            i = pfc.index.get(A)
            if i is None or a not in A:
                raise TheoremViolation("(aE)^ is a prime filter containing a", "prime filter transfer",
                                       (M.label(pt.atom), M.label(a)))
            reached.add(i)
    if reached != set(range(len(pfc.filters))):
        raise TheoremViolation("every prime filter has the form (aE)^", "prime filter transfer",
                               C.labels(sorted(set(range(len(pfc.filters))) - reached)))
    return StoneSpace(tuple(points), tuple(to_id))
