"""Check reports and their JSON serialization.

A CheckReport is one verdict; a RunReport is the envelope the CLI emits.
Reports are deterministic for a fixed config and seed except for the
timing fields, which are excluded from the determinism contract.
"""

from __future__ import annotations

import json
import time


class CheckReport:
    __slots__ = ("check", "m", "n", "mode", "status", "witness", "millis", "seed", "notes")

    def __init__(self, check, m, n, mode, status, witness=None, millis=0, seed=None, notes=None):
        self.check = check
        self.m = m
        self.n = n
        self.mode = mode
        self.status = status
        self.witness = witness
        self.millis = millis
        self.seed = seed
        self.notes = notes

    @property
    def passed(self):
        return self.status == "pass"

    def to_dict(self):
        d = {
            "check": self.check,
            "space": {"m": self.m, "n": self.n},
            "mode": self.mode,
            "status": self.status,
            "millis": self.millis,
        }
        if self.witness is not None:
            d["witness"] = self.witness
        if self.seed is not None:
            d["seed"] = self.seed
        if self.notes is not None:
            d["notes"] = self.notes
        return d

    def __repr__(self):
        return f"CheckReport({self.check}@({self.m}|{self.n}) {self.status})"


class Timer:
    def __enter__(self):
        self.t0 = time.monotonic()
        return self

    def __exit__(self, *exc):
        self.millis = int((time.monotonic() - self.t0) * 1000)
        return False


def make_report(check, space, mode, ok, witness=None, millis=0, seed=None, notes=None):
    return CheckReport(check, space.m, space.n, mode,
                       "pass" if ok else "fail", witness, millis, seed, notes)


def witness_from_difference(diff):
    """Uniform witness payload from a first_difference tuple."""
    if diff is None:
        return None
    rm, cm, lhs, rhs = diff
    return {
        "row": list(rm) if isinstance(rm, tuple) else rm,
        "col": list(cm) if isinstance(cm, tuple) else cm,
        "lhs": _render(lhs),
        "rhs": _render(rhs),
    }


def _render(v):
    if v is None:
        return "0"
    from .scalars import KScalar, kscalar_str
    from .zring import ZPoly, ZRat, zpoly_str, zrat_str
    if isinstance(v, KScalar):
        return kscalar_str(v)
    if isinstance(v, ZRat):
        return zrat_str(v)
    if isinstance(v, ZPoly):
        return zpoly_str(v)
    return str(v)


class RunReport:
    VERSION = "0.1.0"

    def __init__(self, config: dict, checks, total_millis=0):
        self.config = config
        self.checks = list(checks)
        self.total_millis = total_millis

    def summary(self):
        passed = sum(1 for c in self.checks if c.passed)
        return {"total": len(self.checks), "passed": passed,
                "failed": len(self.checks) - passed}

    def all_passed(self):
        return all(c.passed for c in self.checks)

    def to_dict(self):
        return {
            "tool": "ospr",
            "version": self.VERSION,
            "config": self.config,
            "checks": [c.to_dict() for c in sorted(self.checks, key=lambda c: (c.check, c.m, c.n))],
            "summary": self.summary(),
            "total_millis": self.total_millis,
        }

    def to_json(self) -> bytes:
        return (json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n").encode()

    def to_text(self) -> str:
        lines = []
        for c in sorted(self.checks, key=lambda c: (c.check, c.m, c.n)):
            flag = "PASS" if c.passed else "FAIL"
            extra = f"  [{c.notes}]" if c.notes else ""
            lines.append(f"{flag}  {c.check}  (m={c.m}, n={c.n}, {c.mode}, {c.millis} ms){extra}")
        s = self.summary()
        lines.append(f"{s['passed']}/{s['total']} checks passed")
        return "\n".join(lines) + "\n"
