"""Report data structures and JSON/CSV emission.

Reports are reproducible given the same seed and configuration; the wall
time is recorded in a separate field that comparison helpers ignore.
"""

from __future__ import annotations

import csv
import json
import time
from dataclasses import dataclass, field
from fractions import Fraction


@dataclass
class SuiteConfig:
    seed: int = 0
    bounds: dict = field(default_factory=dict)
    strict: bool = False
    parallelism: int = 1
    output_path: str = ""

    def bound(self, name, default):
        return int(self.bounds.get(name, default))


@dataclass
class CheckResult:
    claim_id: str
    claim: str
    verdict: str                 # "pass" | "fail" | "flagged"
    certificate: object = None
    explanation: str = ""

    def as_dict(self):
        return {
            "claim_id": self.claim_id,
            "claim": self.claim,
            "verdict": self.verdict,
            "certificate": jsonable(self.certificate),
            "explanation": self.explanation,
        }


@dataclass
class SuiteReport:
    suite: str
    seed: int
    bounds: dict
    checks: list
    wall_time: float = 0.0

    @property
    def passed(self):
        return all(c.verdict != "fail" for c in self.checks)

    def strict_passed(self):
        return all(c.verdict == "pass" for c in self.checks)

    def as_dict(self):
        return {
            "suite": self.suite,
            "seed": self.seed,
            "bounds": {k: v for k, v in sorted(self.bounds.items())},
            "checks": [c.as_dict() for c in self.checks],
            "wall_time": self.wall_time,
        }

    def payload_json(self):
        """Deterministic body (excludes wall_time)."""
        d = self.as_dict()
        d.pop("wall_time")
        return json.dumps(d, sort_keys=True, indent=2)


def jsonable(x):
    if x is None or isinstance(x, (bool, int, str, float)):
        return x
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}" if x.denominator != 1 \
            else str(x.numerator)
    if hasattr(x, "serialize"):
        return x.serialize()
    if hasattr(x, "rows"):
        return [[jsonable(v) for v in r] for r in x.rows]
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set)):
        return [jsonable(v) for v in x]
    return str(x)


def write_reports(reports, path, fmt="json"):
    if fmt == "json":
        body = {
            "reports": [r.as_dict() for r in reports],
            "all_passed": all(r.passed for r in reports),
        }
        with open(path, "w") as fh:
            json.dump(body, fh, sort_keys=True, indent=2)
            fh.write("\n")
    elif fmt == "csv":
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["suite", "claim_id", "verdict", "claim",
                        "certificate", "explanation"])
            for r in reports:
                for c in r.checks:
                    w.writerow([r.suite, c.claim_id, c.verdict, c.claim,
                                json.dumps(jsonable(c.certificate),
                                           sort_keys=True),
                                c.explanation])
    else:
        raise ValueError(f"unknown format {fmt!r}")


class Recorder:
    """Collects check results for one suite run."""

    def __init__(self, suite, config):
        self.suite = suite
        self.config = config
        self.checks = []
        self.t0 = time.time()

    def check(self, claim_id, claim, ok, certificate=None, explanation=""):
        self.checks.append(CheckResult(
            claim_id, claim, "pass" if ok else "fail", certificate,
            explanation))
        return ok

    def flag(self, claim_id, claim, certificate=None, explanation=""):
        self.checks.append(CheckResult(
            claim_id, claim, "flagged", certificate, explanation))

    def report(self):
        return SuiteReport(self.suite, self.config.seed,
                           dict(self.config.bounds), self.checks,
                           time.time() - self.t0)
