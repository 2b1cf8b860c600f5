"""Check records and verification reports, with text, CSV and JSON-tree output."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional

SCHEMA = "narayana.report/1"
PASS = "pass"
FAIL = "fail"


def _plain(value: Any) -> Any:
    """Make a value JSON-friendly: big ints stay ints, rationals become 'p/q' strings."""
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value


@dataclass
class CheckRecord:
    check_id: str
    params: dict
    status: str = PASS
    counterexample: Optional[dict] = None
    cells_checked: int = 0
    elapsed_ns: int = 0

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def fail(self, inputs: dict, lhs: Any, rhs: Any, **extra) -> None:
        """Mark failed, keeping only the first counterexample."""
        if self.counterexample is None:
            self.status = FAIL
            self.counterexample = {"inputs": dict(inputs), "lhs": lhs, "rhs": rhs, **extra}

    def to_tree(self, with_timing: bool = True) -> dict:
        out = {
            "check_id": self.check_id,
            "params": _plain(self.params),
            "status": self.status,
            "cells_checked": self.cells_checked,
            "counterexample": _plain(self.counterexample),
        }
        if with_timing:
            out["elapsed_ns"] = self.elapsed_ns
        return out

    def to_line(self) -> str:
        tokens = [self.status.upper(), self.check_id]
        tokens += [f"{k}={_plain(v)}" for k, v in self.params.items()]
        tokens.append(f"cells={self.cells_checked}")
        line = " ".join(tokens)
        if self.counterexample is not None:
            ce = self.counterexample
            inputs = " ".join(f"{k}={_plain(v)}" for k, v in ce["inputs"].items())
            line += f" | first counterexample: {inputs} lhs={_plain(ce['lhs'])} rhs={_plain(ce['rhs'])}"
        return line


@dataclass
class VerificationReport:
    records: list[CheckRecord] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    @property
    def status(self) -> str:
        return PASS if self.passed else FAIL

    def failures(self) -> list[CheckRecord]:
        return [r for r in self.records if not r.passed]

    def extend(self, records) -> None:
        self.records.extend(records)

    def to_tree(self, with_timing: bool = True) -> dict:
        return {
            "schema": SCHEMA,
            "status": self.status,
            "records": [r.to_tree(with_timing) for r in self.records],
        }

    def to_json(self, with_timing: bool = True) -> str:
        return json.dumps(self.to_tree(with_timing), indent=2)

    def to_text(self) -> str:
        lines = [r.to_line() for r in self.records]
        lines.append(f"overall: {self.status.upper()} ({len(self.records)} checks, {len(self.failures())} failed)")
        return "\n".join(lines)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["check_id", "params", "status", "cells_checked", "elapsed_ns", "counterexample"])
        for r in self.records:
            ce = "" if r.counterexample is None else json.dumps(_plain(r.counterexample), sort_keys=True)
            w.writerow(
                [r.check_id, json.dumps(_plain(r.params), sort_keys=True), r.status, r.cells_checked, r.elapsed_ns, ce]
            )
        return buf.getvalue()
