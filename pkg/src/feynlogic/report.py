"""
Run reports.

Every CLI command builds a RunReport: a list of named pass/fail checks plus
named value records (amplitudes, tables, reconstructed objects). Reports
render as human-readable text or as line-delimited JSON with sorted keys.
JSON output omits wall-clock timings unless asked for, so two identical
invocations produce byte-identical reports.
"""

from __future__ import annotations

import logging
import time
from contextlib import contextmanager
from typing import Any, Dict, Iterator, List, Optional

import numpy as np
import orjson
from pydantic import BaseModel, Field

from .constants import SCHEMA_VERSION
from .utils import _json_serializer

logger = logging.getLogger(__name__)


class CheckResult(BaseModel):
    """Outcome of one named check."""

    name: str
    passed: bool
    residual: Optional[float] = None
    tolerance: Optional[float] = None
    witness: Optional[Dict[str, Any]] = None
    details: Dict[str, Any] = Field(default_factory=dict)
    elapsed: Optional[float] = None

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"


class ValueRecord(BaseModel):
    """A named block of computed values."""

    name: str
    values: Dict[str, Any] = Field(default_factory=dict)


class RunReport(BaseModel):
    """Checks and values produced by one command."""

    command: str
    config: Optional[str] = None
    seed: Optional[int] = None
    checks: List[CheckResult] = Field(default_factory=list)
    records: List[ValueRecord] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def add(self, check: CheckResult) -> CheckResult:
        self.checks.append(check)
        log = logger.debug if check.passed else logger.warning
        log(f"{self.command}: {check.name} {check.status} (residual={check.residual})")
        return check

    def check(
        self,
        name: str,
        residual: float,
        tolerance: float,
        witness: Optional[Dict[str, Any]] = None,
        **details: Any,
    ) -> CheckResult:
        """Record a residual-against-tolerance check; passes iff residual <= tolerance."""
        residual = float(residual)
        passed = bool(np.isfinite(residual) and residual <= tolerance)
        return self.add(
            CheckResult(
                name=name,
                passed=passed,
                residual=residual,
                tolerance=tolerance,
                witness=witness,
                details=details,
            )
        )

    def record(self, name: str, **values: Any) -> ValueRecord:
        rec = ValueRecord(name=name, values=values)
        self.records.append(rec)
        return rec

    def extend(self, checks) -> None:
        for c in checks:
            self.add(c)

    @contextmanager
    def timed(self) -> Iterator[List[float]]:
        """
        Time a block and stamp the elapsed seconds onto the checks added inside it.

        Yields:
            A one-element list that receives the elapsed time on exit
        """
        start = time.perf_counter()
        first = len(self.checks)
        box: List[float] = []
        try:
            yield box
        finally:
            elapsed = time.perf_counter() - start
            box.append(elapsed)
            for c in self.checks[first:]:
                if c.elapsed is None:
                    c.elapsed = elapsed

    # ------------------------------------------------------------------
    # Rendering
    # ------------------------------------------------------------------

    def to_jsonl(self, timings: bool = False) -> bytes:
        """
        Render as line-delimited JSON.

        Args:
            timings: Include per-check elapsed seconds

        Returns:
            UTF-8 bytes, one record per line, keys sorted
        """
        option = orjson.OPT_SORT_KEYS | orjson.OPT_APPEND_NEWLINE | orjson.OPT_NON_STR_KEYS
        lines = [
            orjson.dumps(
                {
                    "record": "run",
                    "schema_version": SCHEMA_VERSION,
                    "command": self.command,
                    "config": self.config,
                    "seed": self.seed,
                },
                option=option,
            )
        ]
        for rec in self.records:
            payload = {"record": "value", **rec.model_dump()}
            lines.append(orjson.dumps(payload, default=_json_serializer, option=option))
        for c in self.checks:
            payload = {"record": "check", "status": c.status, **c.model_dump()}
            if not timings:
                payload.pop("elapsed")
            lines.append(orjson.dumps(payload, default=_json_serializer, option=option))
        lines.append(
            orjson.dumps(
                {
                    "record": "verdict",
                    "verdict": self.verdict,
                    "checks": len(self.checks),
                    "failed": sum(not c.passed for c in self.checks),
                },
                option=option,
            )
        )
        return b"".join(lines)

    def to_text(self, timings: bool = True) -> str:
        out = [f"feynlogic {self.command}" + (f" [{self.config}]" if self.config else "")]
        if self.seed is not None:
            out.append(f"seed: {self.seed}")
        for rec in self.records:
            out.append(f"\n{rec.name}")
            for key, value in rec.values.items():
                out.append(f"  {key}: {_format_value(value)}")
        if self.checks:
            out.append("\nchecks")
        for c in self.checks:
            line = f"  [{c.status.upper()}] {c.name}"
            if c.residual is not None:
                line += f"  residual={c.residual:.3e}"
            if c.tolerance is not None:
                line += f" tol={c.tolerance:.1e}"
            if timings and c.elapsed is not None:
                line += f"  ({c.elapsed:.3f}s)"
            out.append(line)
            if not c.passed and c.witness:
                out.append(f"      witness: {_format_value(c.witness)}")
        failed = sum(not c.passed for c in self.checks)
        out.append(f"\nverdict: {self.verdict.upper()} ({len(self.checks) - failed}/{len(self.checks)} checks passed)")
        return "\n".join(out) + "\n"


def _format_value(value: Any) -> str:
    if isinstance(value, (complex, np.complexfloating)):
        return f"{value.real:.12g}{value.imag:+.12g}j"
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.12g}"
    if isinstance(value, np.ndarray):
        return np.array2string(value, precision=6, suppress_small=True, max_line_width=120)
    if isinstance(value, dict):
        return "{" + ", ".join(f"{k}: {_format_value(v)}" for k, v in value.items()) + "}"
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_format_value(v) for v in value) + "]"
    return str(value)
