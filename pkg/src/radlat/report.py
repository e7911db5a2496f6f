"""Structured pass/fail reports with replayable witnesses."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

SCHEMA = "radlat.report/1"

PASS = "pass"
FAIL = "fail"
SKIP = "skip"


@dataclass
class Clause:
    cid: str
    description: str
    status: str
    witness: object = None

    def to_json_obj(self):
        obj = {"clause": self.cid, "description": self.description, "status": self.status}
        if self.witness is not None:
            obj["witness"] = _plain(self.witness)
        return obj


@dataclass
class VerdictReport:
    suite: str
    clauses: list[Clause] = field(default_factory=list)
    elapsed: float = 0.0

    def add(self, cid, description, ok, witness=None):
        status = PASS if ok else FAIL
        self.clauses.append(Clause(cid, description, status, None if ok else witness))
        return ok

    def skip(self, cid, description, reason=None):
        self.clauses.append(Clause(cid, description, SKIP, reason))

    def extend(self, other: "VerdictReport", prefix=""):
        for cl in other.clauses:
            cid = f"{prefix}{cl.cid}" if prefix else cl.cid
            self.clauses.append(Clause(cid, cl.description, cl.status, cl.witness))

    @property
    def passed(self):
        return all(cl.status != FAIL for cl in self.clauses)

    @property
    def counts(self):
        out = {PASS: 0, FAIL: 0, SKIP: 0}
        for cl in self.clauses:
            out[cl.status] += 1
        return out

    def failures(self):
        return [cl for cl in self.clauses if cl.status == FAIL]

    def first_failure(self):
        fails = self.failures()
        return fails[0] if fails else None

    def to_json_lines(self):
        """One JSON object per clause plus a summary line, sorted by clause
        id so merged reports serialize identically regardless of evaluation
        order. Timing is deliberately excluded.
        """
        lines = [json.dumps({"schema": SCHEMA, "suite": self.suite}, sort_keys=True)]
        for cl in sorted(self.clauses, key=lambda c: c.cid):
            obj = cl.to_json_obj()
            obj["suite"] = self.suite
            lines.append(json.dumps(obj, sort_keys=True))
        summary = {"suite": self.suite, "summary": self.counts}
        lines.append(json.dumps(summary, sort_keys=True))
        return "\n".join(lines) + "\n"

    def to_text(self):
        lines = [f"suite {self.suite}: " + ("PASS" if self.passed else "FAIL")]
        for cl in self.clauses:
            mark = {PASS: "ok  ", FAIL: "FAIL", SKIP: "skip"}[cl.status]
            line = f"  [{mark}] {cl.cid}: {cl.description}"
            if cl.status == FAIL and cl.witness is not None:
                line += f"  witness={_plain(cl.witness)}"
            lines.append(line)
        c = self.counts
        lines.append(f"  {c[PASS]} passed, {c[FAIL]} failed, {c[SKIP]} skipped ({self.elapsed:.2f}s)")
        return "\n".join(lines) + "\n"


def _plain(value):
    """Coerce witnesses into JSON-serializable plain data."""
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, (set, frozenset)):
        return sorted(_plain(v) for v in value)
    if hasattr(value, "item") and not isinstance(value, (str, bytes)):
        try:
            return value.item()
        except (AttributeError, ValueError):
            pass
    if isinstance(value, (int, float, str, bool)) or value is None:
        return value
    return repr(value)
