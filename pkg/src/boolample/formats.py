"""JSON file formats for monoids, categories and homomorphisms."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .category import CategoryTable, validate_category
from .monoid import HomomorphismMap, MonoidTable, validate_monoid

REPORT_VERSION = "1"


def read_json(path: str | Path) -> Any:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def load_monoid(path: str | Path) -> MonoidTable:
    return validate_monoid(read_json(path))


def load_category(path: str | Path) -> CategoryTable:
    return validate_category(read_json(path))


def load_homomorphism(path: str | Path) -> HomomorphismMap:
    """Source and target paths are resolved relative to the homomorphism file."""
    path = Path(path)
    raw = read_json(path)
    source = load_monoid(path.parent / raw["source"])
    target = load_monoid(path.parent / raw["target"])
    return HomomorphismMap.from_labels(source, target, raw["map"])


def dumps(obj: Any) -> str:
    # key order and separators are fixed so reports are byte-reproducible
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def dump_monoid(M: MonoidTable) -> str:
    return dumps(M.to_dict())


def dump_category(C: CategoryTable) -> str:
    return dumps(C.to_dict())
