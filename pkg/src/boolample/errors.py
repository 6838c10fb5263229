"""Exception types shared by the workbench.

Input problems (bad tables, unmet preconditions) raise ``AlgebraError``.
A ``TheoremViolation`` means a check that the theory guarantees has failed;
it carries a witness bundle that can be serialized for inspection.
"""

from __future__ import annotations

from typing import Any


class AlgebraError(Exception):
    """An error with a stable machine-readable code."""

    def __init__(self, code: str, message: str = "", witness: Any = None):
        self.code = code
        self.message = message
        self.witness = witness
        super().__init__(f"{code}: {message}" if message else code)


class ValidationError(AlgebraError):
    """A table description is not well formed; ``violations`` lists every problem found."""

    def __init__(self, violations: list[tuple[str, Any]]):
        self.violations = violations
        code, witness = violations[0]
        detail = "; ".join(f"{c} {w!r}" for c, w in violations)
        super().__init__(code, detail, witness)


class CapExceeded(AlgebraError):
    def __init__(self, what: str, cap: int, reached: int):
        self.cap = cap
        self.reached = reached
        super().__init__("CAP_EXCEEDED", f"{what}: at least {reached} > cap {cap}", reached)


class TheoremViolation(AlgebraError):
    """A guaranteed property failed. ``tag`` names the axiom or result involved."""

    def __init__(self, clause: str, tag: str, witness: Any = None, code: str = "THEOREM_VIOLATION"):
        self.clause = clause
        self.tag = tag
        super().__init__(code, f"{clause} [{tag}]", witness)

    def bundle(self) -> dict:
        return {"code": self.code, "clause": self.clause, "tag": self.tag,
                "witness": _jsonable(self.witness)}


def _jsonable(x: Any) -> Any:
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = [_jsonable(v) for v in x]
        return sorted(items, key=repr) if isinstance(x, (set, frozenset)) else items
    if isinstance(x, (str, int, float, bool)) or x is None:
        return x
    return str(x)
