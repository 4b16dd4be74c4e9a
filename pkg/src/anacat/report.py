"""Deterministic pass/fail reporting shared by all checkers."""

from dataclasses import dataclass


@dataclass
class CheckRow:
    law: str
    status: str  # "pass" | "fail" | "skipped"
    instances: int = 0
    bound: int = None
    witness: str = None
    reason: str = None

    def to_dict(self):
        d = {"law": self.law, "status": self.status, "instances": self.instances}
        if self.bound is not None:
            d["bound"] = self.bound
        if self.witness is not None:
            d["witness"] = self.witness
        if self.reason is not None:
            d["reason"] = self.reason
        return d

    def line(self):
        extra = f" (instances={self.instances}"
        if self.bound is not None:
            extra += f", bound={self.bound}"
        extra += ")"
        if self.status == "pass":
            return f"PASS {self.law}{extra}"
        if self.status == "skipped":
            return f"SKIP {self.law}: {self.reason}"
        return f"FAIL {self.law}{extra}: {self.witness}"


class VerificationReport:
    """An ordered list of check rows; serialization is deterministic."""

    def __init__(self, title=""):
        self.title = title
        self.rows = []

    def add(self, law, status, instances=0, bound=None, witness=None, reason=None):
        self.rows.append(CheckRow(law, status, instances, bound, witness, reason))

    def ok(self, law, instances=0, bound=None):
        self.add(law, "pass", instances=instances, bound=bound)

    def fail(self, law, witness, instances=0, bound=None):
        self.add(law, "fail", instances=instances, bound=bound, witness=str(witness))

    def skip(self, law, reason):
        self.add(law, "skipped", reason=str(reason))

    def merge(self, other):
        self.rows.extend(other.rows)
        return self

    def passed(self):
        return all(r.status != "fail" for r in self.rows)

    def failures(self):
        return [r for r in self.rows if r.status == "fail"]

    def to_dict(self):
        return {"title": self.title, "rows": [r.to_dict() for r in self.rows]}

    def text(self):
        lines = []
        if self.title:
            lines.append(f"== {self.title} ==")
        lines.extend(r.line() for r in self.rows)
        verdict = "OK" if self.passed() else "FAILED"
        lines.append(f"{verdict}: {len(self.rows)} checks, {len(self.failures())} failures")
        return "\n".join(lines)
