"""Random finite instances: groupoids, wide subcategories, and their KB monoids.

A generated groupoid is a disjoint union of components, each the product of a pair
groupoid on a few objects with a small cyclic group. The subcategory keeps every
identity, each other arrow with probability ``density``, and is then closed under
composition. Fork instances are wide subcategories that are never right reversible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb, factorial
from typing import Iterator

import numpy as np

from .category import (DEFAULT_MAX_ARROWS, CategoryTable, KBResult, composition_closure,
                       disjoint_union, kb_monoid, subcategory)
from .errors import AlgebraError, CapExceeded
from .monoid import MonoidTable

GROUPS = {"trivial": 1, "cyclic-2": 2, "cyclic-3": 3}


@dataclass(frozen=True)
class GeneratorParams:
    seed: int = 0
    components: int = 1
    objects: tuple[int, int] = (1, 3)  # inclusive range per component
    groups: tuple[str, ...] = ("trivial", "cyclic-2", "cyclic-3")
    density: float = 0.5
    max_arrows: int = DEFAULT_MAX_ARROWS

    def validate(self) -> None:
        lo, hi = self.objects
        problems = []
        if self.components < 1:
            problems.append("components must be positive")
        if not 1 <= lo <= hi:
            problems.append("objects must be a range 1 <= lo <= hi")
        if not self.groups or any(g not in GROUPS for g in self.groups):
            problems.append(f"groups must be drawn from {sorted(GROUPS)}")
        if not 0.0 <= self.density <= 1.0:
            problems.append("density must lie in [0, 1]")
        if problems:
            raise AlgebraError("BAD_PARAMS", "; ".join(problems), self.to_dict())

    def to_dict(self) -> dict:
        return {"seed": self.seed, "components": self.components, "objects": list(self.objects),
                "groups": list(self.groups), "density": self.density, "max_arrows": self.max_arrows}


@dataclass(frozen=True, eq=False)
class Instance:
    params: GeneratorParams | None
    groupoid: CategoryTable
    category: CategoryTable
    monoid: MonoidTable
    kb: KBResult = field(repr=False)
    inclusion: tuple[int, ...] = ()  # arrow of the category -> arrow of the groupoid
    kind: str = "generated"

    @property
    def name(self) -> str:
        if self.params is None:
            return self.kind
        return f"{self.kind}-{self.params.seed}"


def pair_groupoid(n: int, order: int = 1) -> CategoryTable:
    """Pair groupoid on objects ``1..n`` times the cyclic group of the given order.

    Arrow ``(i, j, g)`` goes from ``i`` to ``j``; ``(j, k, g)(i, j, h) = (i, k, g + h)``."""
    arrows = [(i, j, g) for i in range(1, n + 1) for j in range(1, n + 1) for g in range(order)]
    ix = {a: k for k, a in enumerate(arrows)}

    def label(i, j, g):
        if i == j and g == 0:
            return f"id_{i}"
        return f"{i}>{j}" + (f"^g{g}" if order > 1 else "")

    comp = {}
    for j, k, g in arrows:
        for i, j2, h in arrows:
            if j2 == j:
                comp[(ix[(j, k, g)], ix[(i, j, h)])] = ix[(i, k, (g + h) % order)]
    return CategoryTable(tuple(label(*a) for a in arrows), tuple(ix[(i, i, 0)] for i in range(1, n + 1)),
                         tuple(ix[(i, i, 0)] for i, _, _ in arrows),
                         tuple(ix[(j, j, 0)] for _, j, _ in arrows), comp)


def kb_size_bound(shapes: list[tuple[int, int]]) -> int:
    """Number of local bisections of the groupoid with the given ``(objects, order)`` components."""
    total = 1
    for n, h in shapes:
        total *= sum(comb(n, k) ** 2 * factorial(k) * h ** k for k in range(n + 1))
    return total


def _shapes(p: GeneratorParams, rng: np.random.Generator) -> list[tuple[int, int]]:
    lo, hi = p.objects
    return [(int(rng.integers(lo, hi + 1)), GROUPS[p.groups[int(rng.integers(len(p.groups)))]])
            for _ in range(p.components)]


def _assemble(shapes: list[tuple[int, int]]) -> CategoryTable:
    parts = [pair_groupoid(n, h) for n, h in shapes]
    if len(parts) == 1:
        return parts[0]
    return disjoint_union(*((f"c{k}.", P) for k, P in enumerate(parts)))


def generate_instance(p: GeneratorParams) -> Instance:
    p.validate()
    rng = np.random.default_rng(p.seed)
    G = _assemble(_shapes(p, rng))
    keep = rng.random(len(G)) < p.density
    chosen = set(G.identities) | {x for x in range(len(G)) if keep[x] and not G.is_identity(x)}
    C, incl = subcategory(G, composition_closure(G, chosen))
    if len(C) > p.max_arrows:
        raise CapExceeded("arrows", p.max_arrows, len(C))
    kb = kb_monoid(C, p.max_arrows)
    return Instance(p, G, C, kb.monoid, kb, incl)


def _fork_in_groupoid(branches: int) -> tuple[CategoryTable, CategoryTable, tuple[int, ...]]:
    G = pair_groupoid(branches + 1)
    wanted = {f"id_{i}" for i in range(1, branches + 2)} | {f"1>{j}" for j in range(2, branches + 2)}
    C, incl = subcategory(G, [G.index(a) for a in sorted(wanted)])
    return G, C, incl


def fork_kb_size(branches: int) -> int:
    # bisections avoiding every branch, plus those using exactly one branch x_i
    # (which excludes id_1 and id_i)
    return 2 ** (branches + 1) + branches * 2 ** (branches - 1)


def fork_instance(seed: int, max_arrows: int = DEFAULT_MAX_ARROWS, extra: bool = True,
                  max_elements: int | None = None) -> Instance:
    """A fork with 2 or 3 branches, optionally beside a small random component.

    The fork part has two arrows with a common domain and no common left multiple,
    so the category is never right reversible."""
    rng = np.random.default_rng(seed)
    branches = int(rng.integers(2, 4))
    G, C, incl = _fork_in_groupoid(branches)
    side_params = GeneratorParams(seed=int(rng.integers(1 << 31)), components=1, objects=(1, 2),
                                  density=float(rng.random()), max_arrows=max_arrows)
    small = max_elements is None or fork_kb_size(branches) * kb_size_bound(
        _shapes(side_params, np.random.default_rng(side_params.seed))) <= max_elements
    if extra and rng.random() < 0.5 and small:
        side = generate_instance(side_params)
        off = len(G)
        G = disjoint_union(("f.", G), ("s.", side.groupoid))
        C = disjoint_union(("f.", C), ("s.", side.category))
        incl = tuple(incl) + tuple(off + v for v in side.inclusion)
    if len(C) > max_arrows:
        raise CapExceeded("arrows", max_arrows, len(C))
    kb = kb_monoid(C, max_arrows)
    return Instance(GeneratorParams(seed=seed, max_arrows=max_arrows), G, C, kb.monoid, kb,
                    tuple(incl), kind="fork")


def random_params(seed: int, max_arrows: int = DEFAULT_MAX_ARROWS) -> GeneratorParams:
    rng = np.random.default_rng([seed, 7])
    components = int(rng.choice([1, 1, 2, 2, 3]))
    hi = 3 if components == 1 else 2
    return GeneratorParams(seed=seed, components=components, objects=(1, hi),
                           density=float(rng.choice([0.0, 0.3, 0.5, 0.7, 1.0])), max_arrows=max_arrows)


def instance_stream(seed: int = 0, count: int | None = None, max_elements: int = 160,
                    fork_every: int = 0, max_arrows: int = DEFAULT_MAX_ARROWS) -> Iterator[Instance]:
    """Deterministic stream of instances.

    Groupoids with more than ``max_arrows`` arrows, or whose full KB monoid would exceed
    ``max_elements``, are skipped before any work is done. With ``fork_every = k > 0``
    every k-th instance is a fork instance."""
    made = 0
    k = 0
    while count is None or made < count:
        s = seed * 100003 + k
        k += 1
        if fork_every and made % fork_every == fork_every - 1:
            try:
                inst = fork_instance(s, max_arrows, max_elements=max_elements)
            except CapExceeded:
                continue
        else:
            p = random_params(s, max_arrows)
            shapes = _shapes(p, np.random.default_rng(p.seed))
            if kb_size_bound(shapes) > max_elements or sum(n * n * h for n, h in shapes) > max_arrows:
                continue
            try:
                inst = generate_instance(p)
            except CapExceeded:
                continue
        made += 1
        yield inst

