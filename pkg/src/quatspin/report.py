"""Structured pass/fail bookkeeping for identity verification runs."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class CheckEntry:
    """One verified identity: a stable id, the subject it ran on, and status."""

    check_id: str
    subject: str
    status: str  # "pass" | "fail" | "info"
    residual: str = "0"
    note: str = ""

    def as_dict(self):
        return {
            "check_id": self.check_id,
            "subject": self.subject,
            "status": self.status,
            "residual": self.residual,
            "note": self.note,
        }


def residual_entry(check_id, subject, residual, tol=None, note=""):
    """Entry whose status is decided by a residual matrix being (exactly) zero."""
    if residual.is_zero(tol):
        return CheckEntry(check_id, subject, "pass", "0", note)
    return CheckEntry(check_id, subject, "fail",
                      f"{residual.max_abs():.6e}", note)


def info_entry(check_id, subject, note):
    return CheckEntry(check_id, subject, "info", "0", note)


@dataclass
class VerificationReport:
    """A list of check entries with aggregate status."""

    entries: list = field(default_factory=list)

    def add(self, entry):
        self.entries.append(entry)

    def extend(self, entries):
        self.entries.extend(entries)

    @property
    def ok(self):
        return all(e.status != "fail" for e in self.entries)

    def counts(self):
        out = {"pass": 0, "fail": 0, "info": 0}
        for e in self.entries:
            out[e.status] = out.get(e.status, 0) + 1
        return out

    def failures(self):
        return [e for e in self.entries if e.status == "fail"]

    def sorted_entries(self):
        return sorted(self.entries, key=lambda e: (e.check_id, e.subject))
