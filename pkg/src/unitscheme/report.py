"""Verification reports: named checks with status, reference and witness."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Callable

from . import __version__

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped-vacuous"


@dataclass
class Check:
    name: str
    ref: str
    status: str
    witness: tuple[str, str] | None = None
    note: str = ""
    elapsed: float = 0.0

    def canonical(self) -> dict:
        out = {"name": self.name, "ref": self.ref, "status": self.status}
        if self.witness is not None:
            out["witness"] = {"lhs": self.witness[0], "rhs": self.witness[1]}
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class VerificationReport:
    suite: str
    prime: int
    lambda_mode: str = "generic"
    seed: int = 0
    checks: list[Check] = field(default_factory=list)

    # -- recording ----------------------------------------------------------
    def record(self, name: str, ref: str, ok: bool, lhs=None, rhs=None, note: str = "",
               elapsed: float = 0.0) -> bool:
        witness = None
        if not ok:
            witness = (str(lhs), str(rhs))
        self.checks.append(Check(name, ref, PASS if ok else FAIL, witness, note, elapsed))
        return ok

    def equal(self, name: str, ref: str, lhs, rhs, note: str = "") -> bool:
        start = time.perf_counter()
        ok = lhs == rhs
        return self.record(name, ref, ok, lhs, rhs, note, time.perf_counter() - start)

    def run(self, name: str, ref: str, fn: Callable[[], object], note: str = "") -> bool:
        """Run ``fn``; a truthy result passes, a ``(lhs, rhs)`` pair passes
        when equal, and an exception fails with its message as witness."""
        start = time.perf_counter()
        try:
            result = fn()
        except Exception as exc:  # noqa: BLE001 - reported, never swallowed silently
            return self.record(name, ref, False, f"{type(exc).__name__}: {exc}", "no exception",
                               note, time.perf_counter() - start)
        elapsed = time.perf_counter() - start
        if isinstance(result, tuple) and len(result) == 2:
            lhs, rhs = result
            return self.record(name, ref, lhs == rhs, lhs, rhs, note, elapsed)
        return self.record(name, ref, bool(result), result, True, note, elapsed)

    def skip(self, name: str, ref: str, note: str) -> None:
        self.checks.append(Check(name, ref, SKIPPED, None, note))

    def extend(self, other: "VerificationReport") -> None:
        self.checks.extend(other.checks)

    # -- inspection -----------------------------------------------------------
    @property
    def ok(self) -> bool:
        return all(c.status != FAIL for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.status == FAIL]

    def by_name(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def sorted_checks(self) -> list[Check]:
        return sorted(self.checks, key=lambda c: c.name)

    # -- rendering --------------------------------------------------------------
    def to_dict(self) -> dict:
        return {
            "tool_version": __version__,
            "suite": self.suite,
            "prime": self.prime,
            "lambda_mode": self.lambda_mode,
            "seed": self.seed,
            "checks": [c.canonical() for c in self.sorted_checks()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=2, sort_keys=True) + "\n"

    def to_text(self) -> str:
        lines = [f"suite={self.suite} p={self.prime} lambda={self.lambda_mode} seed={self.seed}"]
        for c in self.sorted_checks():
            tag = {PASS: "PASS", FAIL: "FAIL", SKIPPED: "SKIP"}[c.status]
            lines.append(f"[{tag}] {c.name}  ({c.ref})  {c.elapsed:.3f}s")
            if c.note:
                lines.append(f"       note: {c.note}")
            if c.witness is not None:
                lines.append(f"       lhs: {c.witness[0]}")
                lines.append(f"       rhs: {c.witness[1]}")
        n_fail = len(self.failures())
        lines.append(f"{len(self.checks)} checks, {n_fail} failed")
        return "\n".join(lines) + "\n"
