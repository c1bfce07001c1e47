"""Shared reporting types for the verification suites."""

from __future__ import annotations

from dataclasses import dataclass

__all__ = ["CheckResult", "PropertyViolation", "all_ok", "failures"]


@dataclass
class CheckResult:
    name: str
    ok: bool
    witness: str = ""

    def as_json(self) -> dict:
        out = {"check": self.name, "status": "ok" if self.ok else "fail"}
        if not self.ok:
            out["witness"] = self.witness
        return out


class PropertyViolation(Exception):
    """A structural identity the construction relies on failed to hold."""

    def __init__(self, name: str, witness: str = ""):
        super().__init__("%s violated%s" % (name, ": " + witness if witness else ""))
        self.name = name
        self.witness = witness


def all_ok(results) -> bool:
    return all(r.ok for r in results)


def failures(results) -> list[CheckResult]:
    return [r for r in results if not r.ok]
