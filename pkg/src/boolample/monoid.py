"""Finite monoids with a restriction structure, given by Cayley tables.

Elements are integers ``0..n-1`` in file order; labels are only used at the
edges (I/O and reports). Exhaustive checks are vectorized with numpy; each
axiom also has a scalar form so that reported witnesses can be re-evaluated
independently of the sweep that found them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Callable, Iterable, Mapping, Sequence

import numpy as np

from .errors import AlgebraError, ValidationError


def _frozen(a: Any) -> np.ndarray:
    arr = np.array(a, dtype=np.int64)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class MonoidTable:
    elements: tuple[str, ...]
    mult: np.ndarray
    star: np.ndarray
    plus: np.ndarray
    zero: int
    one: int

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        object.__setattr__(self, "mult", _frozen(self.mult))
        object.__setattr__(self, "star", _frozen(self.star))
        object.__setattr__(self, "plus", _frozen(self.plus))
        object.__setattr__(self, "zero", int(self.zero))
        object.__setattr__(self, "one", int(self.one))

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"MonoidTable(n={len(self)}, elements={list(self.elements)[:8]}{'...' if len(self) > 8 else ''})"

    @cached_property
    def _index(self) -> dict[str, int]:
        return {x: i for i, x in enumerate(self.elements)}

    def index(self, label: str) -> int:
        return self._index[label]

    def label(self, i: int) -> str:
        return self.elements[i]

    def labels(self, xs: Iterable[int]) -> list[str]:
        return [self.elements[x] for x in xs]

    def mul(self, a: int, b: int) -> int:
        return int(self.mult[a, b])

    def product(self, *xs: int) -> int:
        acc = self.one
        for x in xs:
            acc = int(self.mult[acc, x])
        return acc

    def set_product(self, xs: Iterable[int], ys: Iterable[int]) -> frozenset[int]:
        ys = list(ys)
        return frozenset(int(self.mult[x, y]) for x in xs for y in ys)

    @cached_property
    def leq(self) -> np.ndarray:
        """``leq[a, b]`` iff ``a = b a*`` (the natural partial order)."""
        n = len(self)
        out = self.mult[:, self.star].T == np.arange(n)[:, None]
        out.setflags(write=False)
        return out

    @cached_property
    def compat(self) -> np.ndarray:
        m, st, pl = self.mult, self.star, self.plus
        ab_star = m[:, st]
        a_plus_b = m[pl, :]
        out = (ab_star == ab_star.T) & (a_plus_b == a_plus_b.T)
        out.setflags(write=False)
        return out

    @cached_property
    def joins(self) -> np.ndarray:
        """Least upper bounds of compatible pairs; -1 where incompatible or absent."""
        return _join_matrix(self)

    @cached_property
    def projections(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.star.tolist()) | set(self.plus.tolist())))

    @cached_property
    def idempotents(self) -> tuple[int, ...]:
        n = len(self)
        return tuple(int(x) for x in np.flatnonzero(self.mult[np.arange(n), np.arange(n)] == np.arange(n)))

    @cached_property
    def projection_atoms(self) -> tuple[int, ...]:
        """Minimal nonzero projections, i.e. the atoms of Proj(S)."""
        return tuple(p for p in self.projections if p != self.zero
                     and not any(q not in (p, self.zero) and self.leq[q, p] for q in self.projections))

    def upset(self, xs: Iterable[int]) -> frozenset[int]:
        xs = list(xs)
        if not xs:
            return frozenset()
        return frozenset(int(y) for y in np.flatnonzero(self.leq[xs].any(axis=0)))

    def downset(self, x: int) -> frozenset[int]:
        return frozenset(int(y) for y in np.flatnonzero(self.leq[:, x]))

    def to_dict(self) -> dict:
        e = self.elements
        return {
            "elements": list(e),
            "mult": [[e[v] for v in row] for row in self.mult.tolist()],
            "star": [e[v] for v in self.star.tolist()],
            "plus": [e[v] for v in self.plus.tolist()],
            "zero": e[self.zero],
            "one": e[self.one],
        }


def validate_monoid(raw: Mapping[str, Any]) -> MonoidTable:
    """Parse a label-based table description, raising ``ValidationError`` listing every problem."""
    problems: list[tuple[str, Any]] = []
    for key in ("elements", "mult", "star", "plus", "zero", "one"):
        if key not in raw:
            problems.append(("MISSING_FIELD", key))
    if problems:
        raise ValidationError(problems)

    labels = [str(x) for x in raw["elements"]]
    seen: set[str] = set()
    for x in labels:
        if x in seen:
            problems.append(("DUPLICATE_LABEL", x))
        seen.add(x)
    if problems:
        raise ValidationError(problems)
    idx = {x: i for i, x in enumerate(labels)}
    n = len(labels)

    def lookup(v, where):
        if str(v) not in idx:
            problems.append(("UNKNOWN_LABEL", (where, v)))
            return 0
        return idx[str(v)]

    rows = raw["mult"]
    if len(rows) != n or any(len(r) != n for r in rows):
        raise ValidationError([("BAD_SHAPE", "mult must be n x n")])
    if len(raw["star"]) != n or len(raw["plus"]) != n:
        raise ValidationError([("BAD_SHAPE", "star and plus must have n entries")])
    mult = [[lookup(v, ("mult", labels[i], labels[j])) for j, v in enumerate(r)] for i, r in enumerate(rows)]
    star = [lookup(v, ("star", labels[i])) for i, v in enumerate(raw["star"])]
    plus = [lookup(v, ("plus", labels[i])) for i, v in enumerate(raw["plus"])]
    zero = lookup(raw["zero"], ("zero",))
    one = lookup(raw["one"], ("one",))
    if problems:
        raise ValidationError(problems)

    m = np.array(mult, dtype=np.int64)
    ar = np.arange(n)
    bad = np.flatnonzero((m[one, :] != ar) | (m[:, one] != ar))
    if bad.size:
        problems.append(("BAD_IDENTITY", labels[bad[0]]))
    bad = np.flatnonzero((m[zero, :] != zero) | (m[:, zero] != zero))
    if bad.size:
        problems.append(("BAD_ZERO", labels[bad[0]]))
    triple = associativity_violation(m)
    if triple is not None:
        problems.append(("NOT_ASSOCIATIVE", tuple(labels[i] for i in triple)))
    if problems:
        raise ValidationError(problems)
    return MonoidTable(tuple(labels), m, star, plus, zero, one)


def _blocks(n: int, budget: int = 1 << 22):
    step = max(1, budget // max(1, n * n))
    for lo in range(0, n, step):
        yield slice(lo, min(n, lo + step))


def associativity_violation(m: np.ndarray) -> tuple[int, int, int] | None:
    n = m.shape[0]
    for rows in _blocks(n):
        left = m[m[rows]]  # left[a, b, c] = (ab)c
        right = m[np.arange(n)[rows, None, None], m[None, :, :]]
        bad = np.argwhere(left != right)
        if len(bad):
            a, b, c = (int(v) for v in bad[0])
            return a + rows.start, b, c
    return None


# --- axioms (A1)-(A7) -------------------------------------------------------
#
# Each axiom is a list of parts. A part is (arity, scalar test, vectorized test);
# the vectorized test returns a boolean array of shape (n,)*arity that is True
# where the part holds. Ternary tests take a slice of the first index so that
# large tables can be swept in blocks.

def _a1(M):
    st, pl = M.star, M.plus
    return [
        (1, lambda s: st[st[s]] == st[s], lambda: st[st] == st),
        (1, lambda s: pl[pl[s]] == pl[s], lambda: pl[pl] == pl),
        (1, lambda s: pl[st[s]] == st[s], lambda: pl[st] == st),
        (1, lambda s: st[pl[s]] == pl[s], lambda: st[pl] == pl),
    ]


def _a2(M):
    m, st, pl = M.mult, M.star, M.plus
    return [
        (2, lambda s, t: st[m[st[s], st[t]]] == m[st[s], st[t]], lambda: st[m[st][:, st]] == m[st][:, st]),
        (2, lambda s, t: pl[m[pl[s], pl[t]]] == m[pl[s], pl[t]], lambda: pl[m[pl][:, pl]] == m[pl][:, pl]),
    ]


def _a3(M):
    m, st, pl = M.mult, M.star, M.plus
    return [
        (2, lambda s, t: m[st[s], st[t]] == m[st[t], st[s]], lambda: m[st][:, st] == m[st][:, st].T),
        (2, lambda s, t: m[pl[s], pl[t]] == m[pl[t], pl[s]], lambda: m[pl][:, pl] == m[pl][:, pl].T),
    ]


def _a4(M):
    m, st, pl = M.mult, M.star, M.plus
    ar = np.arange(len(M))
    return [
        (1, lambda s: m[s, st[s]] == s, lambda: m[ar, st] == ar),
        (1, lambda s: m[pl[s], s] == s, lambda: m[pl, ar] == ar),
    ]


def _a5(M):
    m, st, pl = M.mult, M.star, M.plus
    return [
        (2, lambda s, t: st[m[s, t]] == st[m[st[s], t]], lambda: st[m] == st[m[st, :]]),
        (2, lambda s, t: pl[m[s, t]] == pl[m[s, pl[t]]], lambda: pl[m] == pl[m[:, pl]]),
    ]


def _a6(M):
    m, st, pl = M.mult, M.star, M.plus
    col = np.arange(len(M))[:, None]

    def first():
        return m[st, :].T == m[col, st[m.T]]

    def second():
        s_tplus = m[:, pl]
        return s_tplus == m[pl[s_tplus], col]

    return [
        (2, lambda s, t: m[st[t], s] == m[s, st[m[t, s]]], first),
        (2, lambda s, t: m[s, pl[t]] == m[pl[m[s, pl[t]]], s], second),
    ]


def _a7(M):
    m, st, pl = M.mult, M.star, M.plus

    def first(rows=slice(None)):
        # [a, b, c]: ac = bc  =>  ac+ = bc+
        hyp = m[rows, None, :] == m[None, :, :]
        mp = m[:, pl]
        return ~hyp | (mp[rows, None, :] == mp[None, :, :])

    def second(rows=slice(None)):
        # [a, b, c]: ca = cb  =>  c*a = c*b
        mt = m.T  # mt[a, c] = ca
        hyp = mt[rows, None, :] == mt[None, :, :]
        ms = m[st, :].T  # ms[a, c] = c*a
        return ~hyp | (ms[rows, None, :] == ms[None, :, :])

    return [
        (3, lambda a, b, c: m[a, c] != m[b, c] or m[a, pl[c]] == m[b, pl[c]], first),
        (3, lambda a, b, c: m[c, a] != m[c, b] or m[st[c], a] == m[st[c], b], second),
    ]


AXIOMS: dict[str, Callable] = {
    "A1": _a1, "A2": _a2, "A3": _a3, "A4": _a4, "A5": _a5, "A6": _a6, "A7": _a7,
}


@dataclass(frozen=True)
class AxiomReport:
    """Per-axiom outcome. ``failures[name] = (part, witness)`` for each failed axiom."""

    failures: dict[str, tuple[int, tuple[int, ...]]] = field(default_factory=dict)

    def passed(self, name: str) -> bool:
        return name not in self.failures

    @property
    def restriction(self) -> bool:
        return all(self.passed(f"A{i}") for i in range(1, 7))

    @property
    def ample(self) -> bool:
        return not self.failures

    def to_dict(self, M: MonoidTable) -> dict:
        return {
            name: ({"pass": True} if self.passed(name) else
                   {"pass": False, "part": self.failures[name][0],
                    "witness": M.labels(self.failures[name][1])})
            for name in AXIOMS
        }


def axiom_holds_at(M: MonoidTable, name: str, part: int, witness: Sequence[int]) -> bool:
    """Scalar re-evaluation of one part of one axiom at a given tuple."""
    _, scalar, _ = AXIOMS[name](M)[part]
    return bool(scalar(*witness))


def _first_failure(vector, arity: int, n: int) -> tuple[int, ...] | None:
    if arity < 3:
        bad = np.argwhere(~vector())
        return tuple(int(v) for v in bad[0]) if len(bad) else None
    for rows in _blocks(n):
        bad = np.argwhere(~vector(rows))
        if len(bad):
            return (int(bad[0][0]) + rows.start,) + tuple(int(v) for v in bad[0][1:])
    return None


def check_axioms(M: MonoidTable, names: Iterable[str] = AXIOMS) -> AxiomReport:
    failures = {}
    for name in names:
        for p, (arity, _, vector) in enumerate(AXIOMS[name](M)):
            w = _first_failure(vector, arity, len(M))
            if w is not None:
                failures[name] = (p, w)
                break
    return AxiomReport(failures)


# --- order, compatibility, joins --------------------------------------------

@dataclass(frozen=True, eq=False)
class OrderRelation:
    monoid: MonoidTable
    leq: np.ndarray

    @property
    def pairs(self) -> list[tuple[int, int]]:
        return [(int(a), int(b)) for a, b in np.argwhere(self.leq)]

    def __contains__(self, pair: tuple[int, int]) -> bool:
        a, b = pair
        return bool(self.leq[a, b])


def partial_order_violation(leq: np.ndarray) -> tuple[str, tuple[int, ...]] | None:
    n = leq.shape[0]
    diag = np.flatnonzero(~leq[np.arange(n), np.arange(n)])
    if diag.size:
        return "reflexivity", (int(diag[0]),)
    anti = np.argwhere(leq & leq.T & ~np.eye(n, dtype=bool))
    if len(anti):
        return "antisymmetry", tuple(int(v) for v in anti[0])
    # a <= b and b <= c but not a <= c
    for rows in _blocks(n):
        trans = np.argwhere(leq[rows, :, None] & leq[None, :, :] & ~leq[rows, None, :])
        if len(trans):
            a, b, c = (int(v) for v in trans[0])
            return "transitivity", (a + rows.start, b, c)
    return None


def natural_order(M: MonoidTable) -> OrderRelation:
    bad = partial_order_violation(M.leq)
    if bad is not None:
        raise AlgebraError("NOT_A_PARTIAL_ORDER", bad[0], M.labels(bad[1]))
    return OrderRelation(M, M.leq)


def compatible(M: MonoidTable, a: int, b: int) -> bool:
    m, st, pl = M.mult, M.star, M.plus
    return bool(m[a, st[b]] == m[b, st[a]] and m[pl[a], b] == m[pl[b], a])


def _join_matrix(M: MonoidTable) -> np.ndarray:
    leq = M.leq
    n = len(M)
    big = n + 1
    below = leq.sum(axis=0)
    out = np.full((n, n), -1, dtype=np.int64)
    for rows in _blocks(n):
        # ub[a, b, x]: a <= x and b <= x
        ub = leq[rows, None, :] & leq[None, :, :]
        cand = np.where(ub, below[None, None, :], big).argmin(axis=2)
        has = ub.any(axis=2)
        # cand must sit below every upper bound
        is_lub = (~ub | leq[cand]).all(axis=2) & has
        out[rows] = np.where(is_lub & M.compat[rows], cand, -1)
    out.setflags(write=False)
    return out


def compatible_join(M: MonoidTable, a: int, b: int) -> int | None:
    """Least upper bound of a compatible pair, or ``None`` if it does not exist."""
    if not compatible(M, a, b):
        raise AlgebraError("NOT_COMPATIBLE", "", M.labels((a, b)))
    j = int(M.joins[a, b])
    return None if j < 0 else j


def join_all(M: MonoidTable, xs: Iterable[int]) -> int | None:
    """Iterated binary compatible join; ``None`` if some partial join is missing."""
    acc = M.zero
    for x in xs:
        if not M.compat[acc, x] or M.joins[acc, x] < 0:
            return None
        acc = int(M.joins[acc, x])
    return acc


# --- Boolean restriction structure -----------------------------------------

@dataclass(frozen=True)
class ClauseReport:
    ok: bool
    clause: str | None = None
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.ok

    def to_dict(self, M: MonoidTable | None = None) -> dict:
        out: dict = {"ok": self.ok}
        if not self.ok:
            out["clause"] = self.clause
            w = self.witness
            if M is not None and w is not None:
                w = [M.label(x) if isinstance(x, int) else x for x in w]
            out["witness"] = list(w) if w is not None else None
        return out


def check_boolean_restriction(M: MonoidTable) -> ClauseReport:
    """Compatible joins exist, multiplication distributes over them, Proj(M) is Boolean."""
    compat, joins, m = M.compat, M.joins, M.mult
    missing = np.argwhere(compat & (joins < 0))
    if len(missing):
        return ClauseReport(False, "joins", tuple(int(v) for v in missing[0]))

    pairs = np.argwhere(compat)
    step = max(1, (1 << 20) // len(M))
    for lo in range(0, len(pairs), step):
        a, b = pairs[lo:lo + step, 0], pairs[lo:lo + step, 1]
        j = joins[a, b]
        # left: c(a v b) = ca v cb, indexed [pair, c]
        ca, cb = m[:, a].T, m[:, b].T
        lhs = m[:, j].T
        bad = np.argwhere(lhs != np.where(compat[ca, cb], joins[ca, cb], -1))
        if len(bad):
            k, c = bad[0]
            return ClauseReport(False, "left distributivity", (int(a[k]), int(b[k]), int(c)))
        ac, bc = m[a, :], m[b, :]
        lhs = m[j, :]
        bad = np.argwhere(lhs != np.where(compat[ac, bc], joins[ac, bc], -1))
        if len(bad):
            k, c = bad[0]
            return ClauseReport(False, "right distributivity", (int(a[k]), int(b[k]), int(c)))

    problem = boolean_algebra_violation(M.leq, list(M.projections), M.zero, M.one)
    if problem is not None:
        name, w = problem
        return ClauseReport(False, f"projections: {name}", w)
    return ClauseReport(True)


def boolean_algebra_violation(leq: np.ndarray, P: list[int], zero: int, one: int):
    """Check that ``P`` with the restriction of ``leq`` is a complemented distributive lattice."""
    if zero not in P or one not in P:
        return "bounds", (zero, one)
    idx = np.array(P)
    L = leq[np.ix_(idx, idx)]
    k = len(P)
    if not (L[P.index(zero)].all() and L[:, P.index(one)].all()):
        return "bounds", (zero, one)
    ub = L[:, None, :] & L[None, :, :]
    lb = L.T[:, None, :] & L.T[None, :, :]
    below = L.sum(axis=0)
    jn = np.where(ub, below[None, None, :], k + 1).argmin(axis=2)
    mt = np.where(lb, -below[None, None, :], k + 1).argmin(axis=2)
    if not ((~ub | L[jn]).all(axis=2)).all():
        x, y = np.argwhere(~(~ub | L[jn]).all(axis=2))[0]
        return "join", (P[x], P[y])
    if not ((~lb | L.T[mt]).all(axis=2)).all():
        x, y = np.argwhere(~(~lb | L.T[mt]).all(axis=2))[0]
        return "meet", (P[x], P[y])
    # x ^ (y v z) = (x ^ y) v (x ^ z)
    r = np.arange(k)
    lhs = mt[r[:, None, None], jn[None, :, :]]
    rhs = jn[mt[:, :, None], mt[:, None, :]]
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        return "distributivity", tuple(P[v] for v in bad[0])
    z, o = P.index(zero), P.index(one)
    has_comp = ((jn == o) & (mt == z)).any(axis=1)
    if not has_comp.all():
        return "complement", (P[int(np.flatnonzero(~has_comp)[0])],)
    return None


# --- classification --------------------------------------------------------

@dataclass(frozen=True)
class Classification:
    restriction: bool
    ample: bool
    inverse: bool
    boolean: bool

    @property
    def name(self) -> str:
        kind = "inverse" if self.inverse else "ample" if self.ample else \
            "restriction" if self.restriction else None
        if kind is None:
            return "not a restriction monoid"
        return f"{'boolean ' if self.boolean else ''}{kind} monoid"


def inverses(M: MonoidTable) -> np.ndarray | None:
    """Generalized inverses ``b`` with ``aba = a, bab = b``, if every element has one and
    idempotents commute; otherwise ``None``."""
    m = M.mult
    n = len(M)
    ar = np.arange(n)
    aba = m[m, ar[:, None]]
    bab = m[m.T, ar[None, :]]
    ok = (aba == ar[:, None]) & (bab == ar[None, :])
    if not ok.any(axis=1).all():
        return None
    E = np.array(M.idempotents)
    EE = m[np.ix_(E, E)]
    if not (EE == EE.T).all():
        return None
    return ok.argmax(axis=1)


def classify(M: MonoidTable) -> Classification:
    rep = check_axioms(M)
    restriction = rep.restriction
    ample = rep.ample
    inverse = False
    if ample:
        inv = inverses(M)
        if inv is not None:
            ar = np.arange(len(M))
            inverse = bool((M.star == M.mult[inv, ar]).all() and (M.plus == M.mult[ar, inv]).all())
    boolean = False
    if restriction and partial_order_violation(M.leq) is None:
        boolean = check_boolean_restriction(M).ok
    return Classification(restriction, ample, inverse, boolean)


# --- homomorphisms ----------------------------------------------------------

@dataclass(frozen=True, eq=False)
class HomomorphismMap:
    source: MonoidTable
    target: MonoidTable
    map: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "map", tuple(int(v) for v in self.map))
        if len(self.map) != len(self.source):
            raise AlgebraError("BAD_MAP", "map must be total on the source")

    @classmethod
    def from_labels(cls, source: MonoidTable, target: MonoidTable, mapping: Mapping[str, str]):
        missing = [x for x in source.elements if x not in mapping]
        if missing:
            raise AlgebraError("BAD_MAP", "map is not total", missing)
        try:
            values = [target.index(mapping[x]) for x in source.elements]
        except KeyError as exc:
            raise AlgebraError("BAD_MAP", "unknown target label", str(exc)) from None
        return cls(source, target, tuple(values))

    @classmethod
    def identity(cls, M: MonoidTable):
        return cls(M, M, tuple(range(len(M))))

    def __call__(self, a: int) -> int:
        return self.map[a]

    def to_dict(self) -> dict:
        return {self.source.label(a): self.target.label(b) for a, b in enumerate(self.map)}


def check_homomorphism(h: HomomorphismMap) -> ClauseReport:
    S, T = h.source, h.target
    f = np.array(h.map)
    if f[S.zero] != T.zero:
        return ClauseReport(False, "zero", (S.label(S.zero),))
    if f[S.one] != T.one:
        return ClauseReport(False, "one", (S.label(S.one),))
    bad = np.argwhere(f[S.mult] != T.mult[np.ix_(f, f)])
    if len(bad):
        return ClauseReport(False, "mult", tuple(S.labels(int(v) for v in bad[0])))
    for name, s_op, t_op in (("star", S.star, T.star), ("plus", S.plus, T.plus)):
        bad = np.flatnonzero(f[s_op] != t_op[f])
        if bad.size:
            return ClauseReport(False, name, (S.label(int(bad[0])),))
    for a, b in np.argwhere(S.compat & (S.joins >= 0)):
        j = S.joins[a, b]
        fa, fb = f[a], f[b]
        if not T.compat[fa, fb] or T.joins[fa, fb] != f[j]:
            return ClauseReport(False, "join", tuple(S.labels((int(a), int(b)))))
    return ClauseReport(True)
