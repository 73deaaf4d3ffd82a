"""Pass/fail records produced by every checker."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

from .linalg import LinearMap, multi_index


@dataclass(frozen=True)
class Check:
    id: str
    passed: bool
    detail: str = ""
    witness: dict | None = None

    def to_dict(self) -> dict:
        d = {"id": self.id, "status": "pass" if self.passed else "fail"}
        if self.detail:
            d["detail"] = self.detail
        if self.witness is not None:
            d["witness"] = self.witness
        return d


@dataclass
class Report:
    suite: str
    checks: list[Check] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def __bool__(self):
        return self.ok

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    @property
    def n_passed(self) -> int:
        return sum(c.passed for c in self.checks)

    def add(self, check: Check) -> Check:
        self.checks.append(check)
        return check

    def extend(self, other: "Report", prefix: str = "") -> "Report":
        for c in other.checks:
            self.checks.append(Check(prefix + c.id, c.passed, c.detail, c.witness))
        return self

    def require(self, check_id: str, condition: bool, detail: str = "") -> Check:
        return self.add(Check(check_id, bool(condition), "" if condition else detail))

    def sorted(self) -> "Report":
        return Report(self.suite, sorted(self.checks, key=lambda c: c.id), self.wall_time)

    def to_dict(self, timing: bool = True) -> dict:
        rep = self.sorted()
        d = {
            "suite": rep.suite,
            "passed": rep.n_passed,
            "failed": len(rep.checks) - rep.n_passed,
            "checks": [c.to_dict() for c in rep.checks],
        }
        if timing:
            d["wall_time"] = round(self.wall_time, 6)
        return d

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), indent=2, sort_keys=True)

    def to_text(self) -> str:
        rep = self.sorted()
        width = max([len(c.id) for c in rep.checks] + [5])
        lines = [f"suite: {rep.suite}", f"{'check':<{width}}  status"]
        for c in rep.checks:
            line = f"{c.id:<{width}}  {'pass' if c.passed else 'FAIL'}"
            if not c.passed:
                extra = c.detail
                if c.witness:
                    extra += " " + json.dumps(c.witness, sort_keys=True)
                line += "  " + extra.strip()
            lines.append(line)
        lines.append(f"passed {rep.n_passed}/{len(rep.checks)}  time {self.wall_time:.3f}s")
        return "\n".join(lines)

    def __str__(self):
        return self.to_text()


def compare(check_id: str, lhs: LinearMap, rhs: LinearMap,
            target_dims: Sequence[int] | None = None,
            source_dims: Sequence[int] | None = None) -> Check:
    """Exact matrix equality with a witness naming the first differing entry."""
    if lhs.shape != rhs.shape:
        return Check(check_id, False, f"shape {lhs.shape} != {rhs.shape}")
    diff = lhs.first_difference(rhs)
    if diff is None:
        return Check(check_id, True)
    r, c, a, b = diff
    fmt = lhs.field.format
    witness = {"row": r, "col": c, "lhs": fmt(a), "rhs": fmt(b)}
    if target_dims:
        witness["row_indices"] = list(multi_index(r, target_dims))
    if source_dims:
        witness["col_indices"] = list(multi_index(c, source_dims))
    return Check(check_id, False, "matrices differ", witness)


def merge(suite: str, reports: Sequence[Report]) -> Report:
    out = Report(suite)
    for r in reports:
        out.checks.extend(r.checks)
        out.wall_time += r.wall_time
    return out


def report_from_dict(d: dict) -> Report:
    """Inverse of :meth:`Report.to_dict`."""
    checks = [Check(c["id"], c["status"] == "pass", c.get("detail", ""), c.get("witness"))
              for c in d["checks"]]
    return Report(d["suite"], checks, d.get("wall_time", 0.0))
