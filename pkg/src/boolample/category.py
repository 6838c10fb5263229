"""Finite categories given by partial composition tables, and their local bisections.

Objects are identified with identity arrows. ``comp[(x, y)]`` is ``xy``, which is
defined exactly when ``d(x) = r(y)`` (so ``y`` is applied first).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Any, Callable, Iterable, Mapping, Sequence

from .errors import AlgebraError, CapExceeded, TheoremViolation, ValidationError
from .monoid import MonoidTable

DEFAULT_MAX_ARROWS = 16


@dataclass(frozen=True, eq=False)
class CategoryTable:
    arrows: tuple[str, ...]
    identities: tuple[int, ...]
    d: tuple[int, ...]
    r: tuple[int, ...]
    comp: Mapping[tuple[int, int], int]

    def __post_init__(self):
        object.__setattr__(self, "arrows", tuple(self.arrows))
        object.__setattr__(self, "identities", tuple(sorted(self.identities)))
        object.__setattr__(self, "d", tuple(self.d))
        object.__setattr__(self, "r", tuple(self.r))
        object.__setattr__(self, "comp", dict(self.comp))

    @classmethod
    def build(cls, arrows: Sequence[str], identities: Iterable[int], d: Sequence[int], r: Sequence[int],
              compose: Callable[[int, int], int]) -> "CategoryTable":
        """Tabulate ``compose`` on every pair with ``d(x) = r(y)``."""
        n = len(arrows)
        comp = {(x, y): compose(x, y) for x in range(n) for y in range(n) if d[x] == r[y]}
        return cls(tuple(arrows), tuple(identities), tuple(d), tuple(r), comp)

    def __len__(self) -> int:
        return len(self.arrows)

    def __repr__(self) -> str:
        return f"CategoryTable(arrows={list(self.arrows)}, objects={len(self.identities)})"

    @cached_property
    def _index(self) -> dict[str, int]:
        return {x: i for i, x in enumerate(self.arrows)}

    def index(self, label: str) -> int:
        return self._index[label]

    def label(self, x: int) -> str:
        return self.arrows[x]

    def labels(self, xs: Iterable[int]) -> list[str]:
        return [self.arrows[x] for x in xs]

    def compose(self, x: int, y: int) -> int | None:
        return self.comp.get((x, y))

    def is_identity(self, x: int) -> bool:
        return x in self._identity_set

    @cached_property
    def _identity_set(self) -> frozenset[int]:
        return frozenset(self.identities)

    @cached_property
    def out_of(self) -> dict[int, tuple[int, ...]]:
        """Arrows grouped by domain identity."""
        out: dict[int, list[int]] = {e: [] for e in self.identities}
        for x in range(len(self)):
            out.setdefault(self.d[x], []).append(x)
        return {e: tuple(v) for e, v in out.items()}

    @cached_property
    def into(self) -> dict[int, tuple[int, ...]]:
        out: dict[int, list[int]] = {e: [] for e in self.identities}
        for x in range(len(self)):
            out.setdefault(self.r[x], []).append(x)
        return {e: tuple(v) for e, v in out.items()}

    def hom(self, src: int, tgt: int) -> tuple[int, ...]:
        return tuple(x for x in self.out_of.get(src, ()) if self.r[x] == tgt)

    def to_dict(self) -> dict:
        a = self.arrows
        return {
            "arrows": list(a),
            "identities": [a[e] for e in self.identities],
            "d": {a[x]: a[self.d[x]] for x in range(len(a))},
            "r": {a[x]: a[self.r[x]] for x in range(len(a))},
            "compose": [[a[x], a[y], a[z]] for (x, y), z in sorted(self.comp.items())],
        }


def category_violations(C: CategoryTable) -> list[tuple[str, Any]]:
    """All failures of the category laws, as ``(code, witness)`` with label witnesses."""
    out: list[tuple[str, Any]] = []
    L = C.arrows
    n = len(C)
    for e in C.identities:
        if C.d[e] != e or C.r[e] != e:
            out.append(("BAD_IDENTITY", L[e]))
    for x in range(n):
        if not C.is_identity(C.d[x]) or not C.is_identity(C.r[x]):
            out.append(("BAD_IDENTITY", L[x]))
    if out:
        return out
    for x in range(n):
        for y in range(n):
            defined = (x, y) in C.comp
            if C.d[x] == C.r[y] and not defined:
                out.append(("MISSING_COMPOSITE", (L[x], L[y])))
            elif defined and C.d[x] != C.r[y]:
                out.append(("EXTRA_COMPOSITE", (L[x], L[y])))
    if out:
        return out
    for (x, y), z in C.comp.items():
        if C.d[z] != C.d[y] or C.r[z] != C.r[x]:
            out.append(("BAD_COMPOSITE", (L[x], L[y], L[z])))
    for x in range(n):
        if C.comp[(x, C.d[x])] != x or C.comp[(C.r[x], x)] != x:
            out.append(("BAD_IDENTITY", L[x]))
    if out:
        return out
    for (x, y), xy in C.comp.items():
        for z in C.into[C.d[y]]:
            yz = C.comp[(y, z)]
            if C.comp[(xy, z)] != C.comp[(x, yz)]:
                out.append(("NOT_ASSOCIATIVE", (L[x], L[y], L[z])))
                return out
    return out


def validate_category(raw: Mapping[str, Any]) -> CategoryTable:
    problems: list[tuple[str, Any]] = []
    for key in ("arrows", "identities", "d", "r", "compose"):
        if key not in raw:
            problems.append(("MISSING_FIELD", key))
    if problems:
        raise ValidationError(problems)
    labels = [str(x) for x in raw["arrows"]]
    idx: dict[str, int] = {}
    for x in labels:
        if x in idx:
            problems.append(("DUPLICATE_LABEL", x))
        idx[x] = len(idx)
    if problems:
        raise ValidationError(problems)

    def lookup(v, where):
        if str(v) not in idx:
            problems.append(("UNKNOWN_LABEL", (where, v)))
            return 0
        return idx[str(v)]

    identities = [lookup(e, "identities") for e in raw["identities"]]
    d = [lookup(raw["d"].get(x), ("d", x)) for x in labels]
    r = [lookup(raw["r"].get(x), ("r", x)) for x in labels]
    comp: dict[tuple[int, int], int] = {}
    for entry in raw["compose"]:
        if len(entry) != 3:
            problems.append(("BAD_SHAPE", entry))
            continue
        x, y, z = (lookup(v, "compose") for v in entry)
        if (x, y) in comp and comp[(x, y)] != z:
            problems.append(("EXTRA_COMPOSITE", tuple(entry)))
        comp[(x, y)] = z
    if problems:
        raise ValidationError(problems)
    C = CategoryTable(tuple(labels), tuple(identities), tuple(d), tuple(r), comp)
    problems = category_violations(C)
    if problems:
        raise ValidationError(problems)
    return C


@dataclass(frozen=True)
class Verdict:
    holds: bool
    witness: Any = None
    table: Any = None

    def __bool__(self) -> bool:
        return self.holds


def check_cancellative(C: CategoryTable) -> Verdict:
    """Witness ``("left", x, y, z)`` means ``xy = xz`` with ``y != z``; dually for ``"right"``."""
    for x in range(len(C)):
        seen: dict[int, int] = {}
        for y in C.into[C.d[x]]:
            v = C.comp[(x, y)]
            if v in seen:
                return Verdict(False, ("left", x, seen[v], y))
            seen[v] = y
        seen = {}
        for y in C.out_of[C.r[x]]:
            v = C.comp[(y, x)]
            if v in seen:
                return Verdict(False, ("right", x, seen[v], y))
            seen[v] = y
    return Verdict(True)


def check_groupoid(C: CategoryTable) -> Verdict:
    """On success ``table[g]`` is the inverse of ``g``; otherwise ``witness`` is the first arrow without one."""
    inv = []
    for g in range(len(C)):
        for h in C.hom(C.r[g], C.d[g]):
            if C.comp[(h, g)] == C.d[g] and C.comp[(g, h)] == C.r[g]:
                inv.append(h)
                break
        else:
            return Verdict(False, g)
    return Verdict(True, table=tuple(inv))


def common_left_multiples(C: CategoryTable, a: int, b: int) -> list[tuple[int, int]]:
    """All ``(p, q)`` with ``pa = qb``, in index order. Requires ``d(a) = d(b)``."""
    out = []
    for p in C.out_of[C.r[a]]:
        pa = C.comp[(p, a)]
        for q in C.out_of[C.r[b]]:
            if C.r[q] == C.r[p] and C.comp[(q, b)] == pa:
                out.append((p, q))
    return out


def check_right_reversible(C: CategoryTable) -> Verdict:
    for a in range(len(C)):
        for b in range(a, len(C)):
            if C.d[a] != C.d[b]:
                continue
            left_a = {C.comp[(p, a)] for p in C.out_of[C.r[a]]}
            if not any(C.comp[(q, b)] in left_a for q in C.out_of[C.r[b]]):
                return Verdict(False, (a, b))
    return Verdict(True)


def check_functor(C: CategoryTable, D: CategoryTable, f: Sequence[int]) -> str | None:
    """Return the first failed functor clause for the arrow map ``f: C -> D``, or ``None``."""
    for e in C.identities:
        if not D.is_identity(f[e]):
            return f"identity {C.label(e)}"
    for x in range(len(C)):
        if f[C.d[x]] != D.d[f[x]] or f[C.r[x]] != D.r[f[x]]:
            return f"source/target of {C.label(x)}"
    for (x, y), z in C.comp.items():
        if D.comp.get((f[x], f[y])) != f[z]:
            return f"composite {C.label(x)}.{C.label(y)}"
    return None


def is_isomorphism(C: CategoryTable, D: CategoryTable, f: Sequence[int]) -> bool:
    if len(C) != len(D) or len(set(f)) != len(C):
        return False
    g = [0] * len(D)
    for x, y in enumerate(f):
        g[y] = x
    return check_functor(C, D, f) is None and check_functor(D, C, g) is None


def subcategory(C: CategoryTable, arrows: Iterable[int]) -> tuple[CategoryTable, tuple[int, ...]]:
    """Restrict to a composition-closed set of arrows containing its sources and targets.

    Returns the subcategory and the inclusion (new index -> old index)."""
    keep = sorted(set(arrows))
    pos = {x: i for i, x in enumerate(keep)}
    for x in keep:
        if C.d[x] not in pos or C.r[x] not in pos:
            raise AlgebraError("NOT_A_SUBCATEGORY", "missing identity", C.label(x))
    comp = {}
    for x in keep:
        for y in keep:
            z = C.comp.get((x, y))
            if z is None:
                continue
            if z not in pos:
                raise AlgebraError("NOT_A_SUBCATEGORY", "not closed", (C.label(x), C.label(y)))
            comp[(pos[x], pos[y])] = pos[z]
    sub = CategoryTable(tuple(C.arrows[x] for x in keep),
                        tuple(pos[e] for e in C.identities if e in pos),
                        tuple(pos[C.d[x]] for x in keep), tuple(pos[C.r[x]] for x in keep), comp)
    return sub, tuple(keep)


def composition_closure(C: CategoryTable, arrows: Iterable[int]) -> frozenset[int]:
    """Smallest composition-closed set containing ``arrows`` and every identity."""
    have = set(arrows) | set(C.identities)
    frontier = list(have)
    while frontier:
        new = []
        for x in frontier:
            for y in list(have):
                for z in (C.comp.get((x, y)), C.comp.get((y, x))):
                    if z is not None and z not in have:
                        have.add(z)
                        new.append(z)
        frontier = new
    return frozenset(have)


def disjoint_union(*parts: tuple[str, CategoryTable]) -> CategoryTable:
    """Disjoint union; arrow labels of each part get the given prefix."""
    arrows, ids, d, r, comp = [], [], [], [], {}
    for prefix, C in parts:
        off = len(arrows)
        arrows += [prefix + a for a in C.arrows]
        ids += [off + e for e in C.identities]
        d += [off + v for v in C.d]
        r += [off + v for v in C.r]
        comp.update({(off + x, off + y): off + z for (x, y), z in C.comp.items()})
    return CategoryTable(tuple(arrows), tuple(ids), tuple(d), tuple(r), comp)


# --- local bisections and KB(C) ---------------------------------------------

LocalBisection = frozenset  # a set of arrow indices


def is_local_bisection(C: CategoryTable, xs: Iterable[int]) -> bool:
    xs = list(xs)
    return len({C.d[x] for x in xs}) == len(xs) and len({C.r[x] for x in xs}) == len(xs)


def enumerate_local_bisections(C: CategoryTable, cap: int | None = None) -> list[frozenset[int]]:
    """All local bisections, built as partial matchings one domain fiber at a time.

    Sorted by (cardinality, sorted arrow indices). Raises ``CapExceeded`` once more
    than ``cap`` have been found."""
    objects = list(C.identities)
    fibers = [C.out_of[o] for o in objects]
    found: list[frozenset[int]] = []
    chosen: list[int] = []
    used_r: set[int] = set()

    def walk(i: int):
        if i == len(objects):
            found.append(frozenset(chosen))
            if cap is not None and len(found) > cap:
                raise CapExceeded("local bisections", cap, len(found))
            return
        walk(i + 1)
        for x in fibers[i]:
            if C.r[x] not in used_r:
                used_r.add(C.r[x])
                chosen.append(x)
                walk(i + 1)
                chosen.pop()
                used_r.discard(C.r[x])

    walk(0)
    found.sort(key=lambda s: (len(s), sorted(s)))
    return found


def bisection_label(C: CategoryTable, A: Iterable[int]) -> str:
    return "{" + ",".join(C.label(x) for x in sorted(A)) + "}"


@dataclass(frozen=True, eq=False)
class KBResult:
    category: CategoryTable
    monoid: MonoidTable
    bisections: tuple[frozenset[int], ...]

    @cached_property
    def index(self) -> dict[frozenset[int], int]:
        return {A: i for i, A in enumerate(self.bisections)}

    def element(self, arrows: Iterable[int]) -> int:
        return self.index[frozenset(arrows)]


def kb_monoid(C: CategoryTable, max_arrows: int | None = DEFAULT_MAX_ARROWS,
              max_bisections: int | None = None) -> KBResult:
    """The monoid of all local bisections of a finite (discrete) category."""
    if max_arrows is not None and len(C) > max_arrows:
        raise CapExceeded("arrows", max_arrows, len(C))
    bis = enumerate_local_bisections(C, max_bisections)
    index = {A: i for i, A in enumerate(bis)}
    by_d = [{C.d[x]: x for x in A} for A in bis]
    n = len(bis)
    mult = [[0] * n for _ in range(n)]
    for i, A in enumerate(bis):
        Ad = by_d[i]
        for j, B in enumerate(bis):
            prod = frozenset(C.comp[(Ad[C.r[y]], y)] for y in B if C.r[y] in Ad)
            k = index.get(prod)
            if k is None:
                raise TheoremViolation("product of local bisections is a local bisection", "KB(C)",
                                       (bisection_label(C, A), bisection_label(C, B)))
            mult[i][j] = k
    star = [index[frozenset(C.d[x] for x in A)] for A in bis]
    plus = [index[frozenset(C.r[x] for x in A)] for A in bis]
    labels = tuple(bisection_label(C, A) for A in bis)
    M = MonoidTable(labels, mult, star, plus, index[frozenset()], index[frozenset(C.identities)])
    return KBResult(C, M, tuple(bis))
