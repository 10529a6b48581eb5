"""Check records and verdict reports shared by the verification suites.

Reports are flat arrays of records so external tooling can diff them.  The
deterministic part of a report (everything except wall-clock timings) is
byte-identical across runs for identical configuration; timings live in a
separate field that consumers exclude from comparisons.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional


@dataclass
class CheckRecord:
    check_id: str
    params: dict
    passed: bool
    residual: str = "0"

    def to_dict(self) -> dict:
        return {"id": self.check_id, "params": self.params,
                "pass": self.passed, "residual": self.residual}


@dataclass
class VerdictReport:
    suite: str
    config: dict
    records: list = field(default_factory=list)
    timings: dict = field(default_factory=dict)

    def add(self, record: CheckRecord, seconds: Optional[float] = None):
        self.records.append(record)
        if seconds is not None:
            self.timings[record.check_id] = seconds

    def extend(self, other: "VerdictReport"):
        self.records.extend(other.records)
        self.timings.update(other.timings)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    def finalize(self) -> "VerdictReport":
        self.records.sort(key=lambda r: r.check_id)
        return self

    def to_json_dict(self, include_timings: bool = True) -> dict:
        self.finalize()
        out = {
            "suite": self.suite,
            "config": self.config,
            "pass": self.passed,
            "records": [r.to_dict() for r in self.records],
        }
        if include_timings:
            out["timings"] = {k: round(v, 6)
                              for k, v in sorted(self.timings.items())}
        return out

    def to_json(self, include_timings: bool = True) -> str:
        return json.dumps(self.to_json_dict(include_timings),
                          sort_keys=True, indent=1)

    def summary(self) -> str:
        n_pass = sum(1 for r in self.records if r.passed)
        verdict = "PASS" if self.passed else "FAIL"
        return f"{self.suite}: {n_pass}/{len(self.records)} checks pass [{verdict}]"
