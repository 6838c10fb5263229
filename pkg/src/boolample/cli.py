"""Command line front end. Exit codes: 0 ok, 1 theorem violation, 2 usage or I/O error."""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any

from .category import (DEFAULT_MAX_ARROWS, check_cancellative, check_groupoid, check_right_reversible,
                       kb_monoid)
from .duality import iso_category_double_dual, iso_monoid_double_dual, morphism_round_trip, rho_from_theta
from .errors import AlgebraError, TheoremViolation
from .filters import build_category, stone_space
from .formats import REPORT_VERSION, dumps, load_category, load_homomorphism, load_monoid
from .generate import GeneratorParams, generate_instance
from .monoid import check_axioms, check_boolean_restriction, classify
from .ore import check_condition_C, fractions_groupoid
from .pipeline import au_bd_correspondence, embed_pipeline
from .suite import SuiteConfig, SuiteInputError, run_suite


def _cmd_check(a) -> dict:
    if a.monoid:
        M = load_monoid(a.monoid)
        return {"kind": "monoid", "size": len(M), "class": classify(M).name,
                "axioms": check_axioms(M).to_dict(M), "boolean": check_boolean_restriction(M).to_dict(M)}
    C = load_category(a.category)
    out: dict[str, Any] = {"kind": "category", "arrows": len(C)}
    for name, fn in (("cancellative", check_cancellative), ("groupoid", check_groupoid),
                     ("right_reversible", check_right_reversible)):
        v = fn(C)
        out[name] = v.holds
        if not v.holds and v.witness is not None:
            w = v.witness
            out[name + "_witness"] = C.label(w) if isinstance(w, int) else \
                [C.label(x) if isinstance(x, int) else x for x in w]
    return out


def _cmd_filters(a) -> dict:
    M = load_monoid(a.monoid)
    pfc = build_category(M)
    st = stone_space(M, pfc)
    return {"prime_filters": {F.label(M): M.labels(sorted(F.carrier)) for F in pfc.filters},
            "stone_points": [M.label(p.atom) for p in st.points]}


def _cmd_category(a) -> dict:
    return build_category(load_monoid(a.monoid)).category.to_dict()


def _cmd_kb(a) -> dict:
    return kb_monoid(load_category(a.category), a.cap_arrows).monoid.to_dict()


def _cmd_duality(a) -> dict:
    if a.hom:
        h = load_homomorphism(a.hom)
        rho = rho_from_theta(h)
        return {"rho": rho.to_dict(), "round_trip": morphism_round_trip(h).ok}
    if a.monoid:
        cert = iso_monoid_double_dual(load_monoid(a.monoid), a.cap_arrows)
    else:
        cert = iso_category_double_dual(load_category(a.category), a.cap_arrows)
    return {"forward": cert.forward, "verified": list(cert.verified)}


def _cmd_condc(a) -> dict:
    M = load_monoid(a.monoid)
    rep = check_condition_C(M)
    out = rep.to_dict()
    C = build_category(M).category
    out["right_reversible"] = check_right_reversible(C).holds
    return out


def _cmd_fractions(a) -> dict:
    C = load_category(a.category)
    fg = fractions_groupoid(C, a.seed)
    return {"groupoid": fg.groupoid.to_dict(),
            "classes": {fg.labels[k]: [C.labels(p) for p in ms] for k, ms in enumerate(fg.classes)},
            "iota": {C.label(x): fg.labels[g] for x, g in enumerate(fg.iota)}}


def _cmd_embed(a) -> dict:
    res = embed_pipeline(load_monoid(a.monoid), a.cap_arrows, a.seed)
    out = res.to_dict()
    out["correspondence"] = au_bd_correspondence(res).to_dict(res.pfc, build_category(res.target))
    return out


def _cmd_generate(a) -> dict:
    p = GeneratorParams(seed=a.seed, components=a.components, objects=(a.min_objects, a.max_objects),
                        groups=tuple(a.groups), density=a.density, max_arrows=a.cap_arrows)
    inst = generate_instance(p)
    return {"params": p.to_dict(), "groupoid": inst.groupoid.to_dict(),
            "category": inst.category.to_dict(), "monoid": inst.monoid.to_dict()}


def _scalar_list(v: Any) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def _human(obj: Any, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for k, v in obj.items():
            if isinstance(v, dict) and v or isinstance(v, list) and not _scalar_list(v):
                lines += [f"{pad}{k}:", _human(v, indent + 1)]
            else:
                lines.append(f"{pad}{k}: {', '.join(map(str, v)) if isinstance(v, list) else v}")
        return "\n".join(lines)
    if isinstance(obj, list):
        return "\n".join(f"{pad}- {', '.join(map(str, v)) if _scalar_list(v) else v}"
                         if not isinstance(v, dict) else _human(v, indent) for v in obj)
    return f"{pad}{obj}"


def _suite_human(report: dict) -> str:
    lines = [f"suite {report['suite']} (report version {report['version']})"]
    for c in report["checks"]:
        lines.append(f"  {c['status']:>17}  {c['name']}")
        if c["status"] != "pass" and "witness" in c:
            lines.append(f"                     {json.dumps(c['witness'], sort_keys=True)}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="boolample", description=__doc__)
    parser.add_argument("--cap-arrows", type=int, default=DEFAULT_MAX_ARROWS,
                        help="largest category whose local bisections are enumerated")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--format", choices=("human", "json"), default="human")
    sub = parser.add_subparsers(dest="command", required=True)

    def source(p, monoid=True, category=True, hom=False):
        g = p.add_mutually_exclusive_group(required=True)
        if monoid:
            g.add_argument("--monoid", metavar="FILE")
        if category:
            g.add_argument("--category", metavar="FILE")
        if hom:
            g.add_argument("--hom", metavar="FILE")

    source(sub.add_parser("check", help="classify a monoid or test a category"))
    source(sub.add_parser("filters", help="prime filters and Stone space"), category=False)
    source(sub.add_parser("category", help="category of prime filters C(S)"), category=False)
    source(sub.add_parser("kb", help="monoid of local bisections KB(C)"), monoid=False)
    source(sub.add_parser("duality", help="double-dual isomorphisms or morphism round trip"), hom=True)
    source(sub.add_parser("condc", help="condition (C) and right reversibility"), category=False)
    p = sub.add_parser("fractions", help="groupoid of fractions")
    source(p, monoid=False)
    p.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    p = sub.add_parser("embed", help="full embedding into a Boolean inverse monoid")
    source(p, category=False)
    p = sub.add_parser("generate", help="random groupoid, subcategory and KB monoid")
    p.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    p.add_argument("--components", type=int, default=1)
    p.add_argument("--min-objects", type=int, default=1)
    p.add_argument("--max-objects", type=int, default=3)
    p.add_argument("--groups", nargs="+", default=["trivial", "cyclic-2", "cyclic-3"])
    p.add_argument("--density", type=float, default=0.5)
    p = sub.add_parser("suite", help="run the property suites")
    p.add_argument("--config", metavar="FILE")
    p.add_argument("--output", metavar="FILE", help="also write the JSON report here")
    return parser


COMMANDS = {"check": _cmd_check, "filters": _cmd_filters, "category": _cmd_category, "kb": _cmd_kb,
            "duality": _cmd_duality, "condc": _cmd_condc, "fractions": _cmd_fractions,
            "embed": _cmd_embed, "generate": _cmd_generate}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "suite":
            cfg = SuiteConfig.from_file(args.config) if args.config else SuiteConfig()
            if args.seed:
                cfg.seed = args.seed
            cfg.max_arrows = args.cap_arrows
            res = run_suite(cfg)
            report = res.to_dict()
            if args.output:
                with open(args.output, "w", encoding="utf-8") as fh:
                    fh.write(dumps(report))
            if args.format == "json":
                print(dumps(report), end="")
            else:
                print(_suite_human(report))
            return res.exit_code
        out = COMMANDS[args.command](args)
    except TheoremViolation as exc:
        print(dumps({"version": REPORT_VERSION, "error": exc.bundle()}), file=sys.stderr, end="")
        return 1
    except (AlgebraError, SuiteInputError, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"boolample: error: {exc}", file=sys.stderr)
        return 2
    if args.format == "json":
        print(dumps({"version": REPORT_VERSION, "command": args.command, "result": out}), end="")
    else:
        print(_human(out))
    return 0
