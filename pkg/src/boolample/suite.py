"""Property suites over fixtures and generated instances, with a JSON summary.

Each check records ``pass``, ``fail`` (a theorem violation, with its witness bundle),
``expected-negative`` (a recorded failure that the check asked for) or ``error`` (an
unmet precondition such as a size cap). Reports refer to
elements and arrows by label only and carry no timings, so equal configs give equal bytes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable

from . import fixtures
from .category import (DEFAULT_MAX_ARROWS, CategoryTable, check_cancellative, check_groupoid,
                       check_right_reversible, kb_monoid)
from .duality import (factorization_property, iso_category_double_dual, iso_monoid_double_dual,
                      morphism_round_trip, rho_from_theta)
from .errors import AlgebraError, TheoremViolation, ValidationError, _jsonable
from .filters import build_category
from .formats import REPORT_VERSION, load_category, load_homomorphism, load_monoid, read_json
from .generate import Instance, instance_stream
from .iso import find_category_isomorphism, find_monoid_isomorphism
from .monoid import HomomorphismMap, MonoidTable, check_axioms, classify
from .ore import (check_condition_C, check_theorem_twelve, corollary_check, fractions_groupoid,
                  mary_anne_check, verify_fractions_uniqueness)
from .pipeline import au_bd_correspondence, embed_pipeline
from .symbolic import symbolic_ore

EXIT_PASS, EXIT_VIOLATION, EXIT_IO = 0, 1, 2


class SuiteInputError(Exception):
    """A fixture or config could not be read or failed validation."""


@dataclass
class SuiteConfig:
    name: str = "default"
    monoids: list[str] = field(default_factory=lambda: ["B4", "G0", "I2", "S5"])
    categories: list[str] = field(default_factory=lambda: ["ARROW", "PAIR2", "FORK"])
    homomorphisms: list[str] = field(default_factory=lambda: ["S5_TO_I2", "B4_SWAP"])
    embed: list[str] = field(default_factory=lambda: ["S5", "I2", "B4"])
    seed: int = 0
    instances: int = 200
    condc_instances: int = 100
    fork_every: int = 5
    twelve_pairs: int = 50
    embed_instances: int = 30
    max_arrows: int = DEFAULT_MAX_ARROWS
    max_elements: int = 160
    base: Path = field(default=Path("."), repr=False)

    @classmethod
    def from_file(cls, path: str | Path) -> "SuiteConfig":
        try:
            raw = read_json(path)
        except (OSError, json.JSONDecodeError) as exc:
            raise SuiteInputError(f"{path}: {exc}") from exc
        if not isinstance(raw, dict):
            raise SuiteInputError(f"{path}: config must be a JSON object")
        known = {k for k in cls.__dataclass_fields__ if k != "base"}
        unknown = set(raw) - known
        if unknown:
            raise SuiteInputError(f"{path}: unknown keys {sorted(unknown)}")
        return cls(**raw, base=Path(path).parent)


def _resolve(entry: str, base: Path, kind: str):
    """A fixture name, ``kb:<category>``, or a JSON file path."""
    try:
        if entry.startswith("kb:"):
            return kb_monoid(_resolve(entry[3:], base, "category")).monoid
        names = {"monoid": fixtures.MONOIDS, "category": fixtures.CATEGORIES,
                 "homomorphism": fixtures.HOMOMORPHISMS}[kind]
        if entry in names:
            return getattr(fixtures, kind)(entry)
        loader = {"monoid": load_monoid, "category": load_category,
                  "homomorphism": load_homomorphism}[kind]
        return loader(base / entry)
    except (OSError, json.JSONDecodeError, KeyError, ValidationError) as exc:
        raise SuiteInputError(f"{entry}: {exc}") from exc
    except AlgebraError as exc:
        raise SuiteInputError(f"{entry}: {exc}") from exc


@dataclass
class Check:
    name: str
    status: str
    witness: Any = None
    detail: dict | None = None

    def to_dict(self) -> dict:
        out: dict = {"name": self.name, "status": self.status}
        if self.witness is not None:
            out["witness"] = _jsonable(self.witness)
        if self.detail:
            out["detail"] = _jsonable(self.detail)
        return out


@dataclass
class SuiteResult:
    name: str
    checks: list[Check]

    @property
    def exit_code(self) -> int:
        statuses = {c.status for c in self.checks}
        if "fail" in statuses:
            return EXIT_VIOLATION
        return EXIT_IO if "error" in statuses else EXIT_PASS

    def to_dict(self) -> dict:
        return {"suite": self.name, "version": REPORT_VERSION, "checks": [c.to_dict() for c in self.checks]}


def _run(name: str, fn: Callable[[], dict | None], expect: tuple[str, ...] = ()) -> Check:
    """``expect`` lists error codes that count as an expected negative."""
    try:
        detail = fn()
    except TheoremViolation as exc:
        return Check(name, "fail", exc.bundle())
    except AlgebraError as exc:
        if exc.code in expect:
            return Check(name, "expected-negative", {"code": exc.code, "witness": exc.witness})
        return Check(name, "error", {"code": exc.code, "message": exc.message, "witness": exc.witness})
    return Check(name, "pass", None, detail)


def _require(ok: bool, clause: str, tag: str, witness: Any = None) -> None:
    if not ok:
        raise TheoremViolation(clause, tag, witness)


# --- individual suites -------------------------------------------------------

def _duality_generated(insts: list[Instance], max_arrows: int) -> dict:
    for inst in insts:
        try:
            iso_monoid_double_dual(inst.monoid, max_arrows, kb=None)
            iso_category_double_dual(inst.category, max_arrows, kb=inst.kb)
        except TheoremViolation as exc:
            exc.witness = {"instance": inst.name, "witness": exc.witness}
            raise
    return {"instances": len(insts)}


def _prop24(insts: list[Instance], monoids: dict[str, MonoidTable], cats: dict[str, CategoryTable]) -> dict:
    counts = {"cancellative C(S)": 0, "A1-A7 on KB(C)": 0, "groupoid iff inverse": 0}
    for name, M in list(monoids.items()) + [(i.name, i.monoid) for i in insts]:
        cls = classify(M)
        if not cls.boolean or not cls.restriction:
            continue
        C = build_category(M).category
        if cls.ample:
            _require(bool(check_cancellative(C)), "C(S) is cancellative for Boolean ample S", "C(S)", name)
            counts["cancellative C(S)"] += 1
        _require(bool(check_groupoid(C)) == cls.inverse, "C(S) is a groupoid iff S is inverse", "C(S)", name)
        counts["groupoid iff inverse"] += 1
    kbs = [(k, C, None) for k, C in cats.items()] + [(i.name, i.category, i.monoid) for i in insts]
    for name, C, K in kbs:
        if not check_cancellative(C):
            continue
        K = K or kb_monoid(C).monoid
        rep = check_axioms(K)
        _require(rep.ample and classify(K).boolean, "KB(C) is Boolean ample for cancellative C", "KB(C)",
                 {"category": name, "axioms": rep.to_dict(K)})
        counts["A1-A7 on KB(C)"] += 1
    return counts


def _condc(insts: list[Instance], monoids: dict[str, MonoidTable]) -> dict:
    negatives = 0
    forks = 0
    for name, M in list(monoids.items()) + [(i.name, i.monoid) for i in insts]:
        if not classify(M).ample:
            continue
        rep = mary_anne_check(M)
        if not rep.condition_c:
            negatives += 1
        if name.startswith("fork-"):
            forks += 1
            _require(not rep.condition_c and rep.counterexample is not None,
                     "fork instances fail condition (C) with a counterexample", "condition (C)", name)
    return {"checked": len(monoids) + len(insts), "negatives": negatives, "fork_negatives": forks}


def _corollary(insts: list[Instance], monoids: dict[str, MonoidTable]) -> dict:
    n = 0
    for M in list(monoids.values()) + [i.monoid for i in insts]:
        if not classify(M).ample:
            continue
        rep = check_condition_C(M)
        if rep.holds:
            corollary_check(M, rep)
            n += 1
    return {"instances_with_condition_c": n}


def _fractions_arrow() -> dict:
    C, P = fixtures.ARROW(), fixtures.PAIR2()
    g0 = fractions_groupoid(C, 0)
    g1 = fractions_groupoid(C, 1)
    _require(g0.labels == P.arrows, "fraction labels match the pair groupoid fixture", "fractions",
             {"got": g0.labels, "want": P.arrows})
    iso = find_category_isomorphism(g0.groupoid, P, {g0.iota[x]: P.index(C.label(x)) for x in range(len(C))})
    _require(iso is not None, "fractions of ARROW are PAIR2", "fractions", None)
    verify_fractions_uniqueness(C, g0, g1)
    return {"classes": len(g0.classes), "equivalence_witnesses": len(g0.equivalence_witnesses)}


def _twelve(insts: list[Instance], wanted: int) -> dict:
    rep = check_theorem_twelve(fixtures.PAIR2(), ["id_e", "id_f", "a"])
    _require(rep.hypotheses and rep.iso is not None and rep.cinv_c, "fractions(ARROW) ~ PAIR2", "converse", None)
    found, orientation_differs = 0, 0
    for inst in insts:
        if found >= wanted:
            break
        r = check_theorem_twelve(inst.groupoid, inst.inclusion)
        if not r.hypotheses:
            continue
        _require(r.iso is not None, "fractions(C) ~ G", "converse", inst.name)
        found += 1
        orientation_differs += r.c_cinv != r.cinv_c
    _require(found >= wanted, f"at least {wanted} generated pairs meet the hypotheses", "converse",
             {"found": found})
    return {"pairs": found + 1, "cinv_c_differs": orientation_differs}


def _homs(homs: dict[str, HomomorphismMap], monoids: dict[str, MonoidTable]) -> dict[str, HomomorphismMap]:
    out = {f"id:{k}": HomomorphismMap.identity(M) for k, M in monoids.items()}
    out.update(homs)
    return out


def _morphism(h: HomomorphismMap) -> dict:
    r = morphism_round_trip(h)
    _require(r.ok, "theta_rho_theta = theta", "morphism duality", r.witness)
    f = factorization_property(rho_from_theta(h))
    _require(f.ok, "factorization", "morphism duality", f.witness)
    return {}


def _kudryavtseva(h: HomomorphismMap) -> dict:
    rho = rho_from_theta(h)  # decomposes every target filter and checks each class
    return {"target_filters": len(rho.decomposition),
            "classes": sum(len(v) for v in rho.decomposition.values())}


def _embed(M: MonoidTable) -> dict:
    res = embed_pipeline(M)
    au_bd_correspondence(res)
    return {"target_size": len(res.target), "max_fractions_per_join": res.max_cover}


def _embed_generated(insts: list[Instance], wanted: int, max_arrows: int) -> dict:
    n = 0
    for inst in insts:
        if n >= wanted:
            break
        if not check_right_reversible(inst.category):
            continue
        res = embed_pipeline(inst.monoid, max_arrows)
        T2 = kb_monoid(fractions_groupoid(inst.category).groupoid, max_arrows).monoid
        _require(find_monoid_isomorphism(res.target, T2) is not None,
                 "T ~ KB(fractions(C))", "embedding", inst.name)
        n += 1
    return {"instances": n}


def _flagship() -> dict:
    res = embed_pipeline(fixtures.S5())
    I2 = fixtures.I2()
    _require(len(res.target) == 7 and find_monoid_isomorphism(res.target, I2) is not None,
             "target is I2", "flagship", len(res.target))
    _require(res.ok and res.max_cover <= 2, "full embedding with joins of at most 2 fractions", "flagship",
             res.to_dict())
    return {"certificates": res.certificates, "max_fractions_per_join": res.max_cover}


def run_suite(config: SuiteConfig | None = None) -> SuiteResult:
    cfg = config or SuiteConfig()
    monoids = {e: _resolve(e, cfg.base, "monoid") for e in cfg.monoids}
    cats = {e: _resolve(e, cfg.base, "category") for e in cfg.categories}
    homs = {e: _resolve(e, cfg.base, "homomorphism") for e in cfg.homomorphisms}
    embeds = {e: _resolve(e, cfg.base, "monoid") for e in cfg.embed}

    gen = list(instance_stream(cfg.seed, cfg.instances, cfg.max_elements, 0, cfg.max_arrows))
    mixed = list(instance_stream(cfg.seed + 1, cfg.condc_instances, cfg.max_elements, cfg.fork_every,
                                 cfg.max_arrows))
    checks = [_run("flagship embedding S5", _flagship)]
    for k, M in monoids.items():
        checks.append(_run(f"duality.monoid:{k}",
                           lambda M=M: {"verified": iso_monoid_double_dual(M, cfg.max_arrows).verified}))
    for k, C in cats.items():
        checks.append(_run(f"duality.category:{k}",
                           lambda C=C: {"verified": iso_category_double_dual(C, cfg.max_arrows).verified}))
    checks.append(_run(f"duality.generated[{len(gen)}]", lambda: _duality_generated(gen, cfg.max_arrows)))
    checks.append(_run(f"structure.generated[{len(gen)}]", lambda: _prop24(gen, monoids, cats)))
    checks.append(_run(f"condition-c.equivalence[{len(mixed)}]", lambda: _condc(mixed, monoids)))
    checks.append(_run("fractions:ARROW", _fractions_arrow))
    checks.append(_run(f"converse.generated[{cfg.twelve_pairs}]", lambda: _twelve(gen, cfg.twelve_pairs)))
    checks.append(_run("corollary", lambda: _corollary(gen + mixed, monoids)))
    for k, h in _homs(homs, monoids).items():
        checks.append(_run(f"morphism:{k}", lambda h=h: _morphism(h)))
        checks.append(_run(f"kudryavtseva:{k}", lambda h=h: _kudryavtseva(h)))
    checks.append(_run("symbolic:N2", lambda: symbolic_ore().to_dict()))
    for k, M in embeds.items():
        checks.append(_run(f"embed:{k}", lambda M=M: _embed(M), expect=("CONDITION_C_FAILS",)))
    checks.append(_run(f"embed.generated[{cfg.embed_instances}]",
                       lambda: _embed_generated(gen, cfg.embed_instances, cfg.max_arrows)))
    return SuiteResult(cfg.name, checks)
