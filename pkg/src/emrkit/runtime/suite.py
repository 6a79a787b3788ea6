"""Whole-suite evaluation: every EMR against every source input."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Sequence

from ..dsl.ast import EmrAst
from .errors import AdapterFailure
from .evaluate import SessionFactory, evaluate_emr
from .values import ActionSequence, StubBindings, Verdict, VerdictValue

VERDICT_ORDER = [v.value for v in VerdictValue] + ["Error"]


@dataclass
class SuiteEntry:
    emr_id: str
    input_index: int
    input_name: str
    verdict: Verdict | None
    error: str | None = None

    @property
    def outcome(self) -> str:
        return self.verdict.value.value if self.verdict else "Error"

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "emr": self.emr_id,
            "input_index": self.input_index,
            "input": self.input_name,
            "outcome": self.outcome,
        }
        if self.verdict is not None:
            out["failing_bindings"] = [b.to_json() for b in self.verdict.failing_bindings]
            out["stubs"] = self.verdict.stubs
        if self.error is not None:
            out["error"] = self.error
        return out


@dataclass
class SuiteReport:
    entries: list[SuiteEntry] = field(default_factory=list)

    def counts_for(self, emr_id: str) -> dict[str, int]:
        counts = {name: 0 for name in VERDICT_ORDER}
        for entry in self.entries:
            if entry.emr_id == emr_id:
                counts[entry.outcome] += 1
        return {name: n for name, n in counts.items() if n}

    @property
    def emr_ids(self) -> list[str]:
        seen: list[str] = []
        for entry in self.entries:
            if entry.emr_id not in seen:
                seen.append(entry.emr_id)
        return seen

    @property
    def has_failures(self) -> bool:
        return any(e.outcome == "Fail" for e in self.entries)

    @property
    def has_errors(self) -> bool:
        return any(e.outcome == "Error" for e in self.entries)

    @property
    def not_executable_stubs(self) -> list[str]:
        stubs: list[str] = []
        for e in self.entries:
            if e.verdict is not None:
                for name in e.verdict.stubs:
                    if name not in stubs:
                        stubs.append(name)
        return stubs

    def to_json(self) -> dict[str, Any]:
        return {
            "per_emr": {emr: self.counts_for(emr) for emr in self.emr_ids},
            "results": [e.to_json() for e in self.entries],
        }

    def to_text(self) -> str:
        lines = []
        header = f"{'EMR':<24}" + "".join(f"{name:>14}" for name in VERDICT_ORDER)
        lines.append(header)
        lines.append("-" * len(header))
        for emr in self.emr_ids:
            counts = self.counts_for(emr)
            row = f"{emr:<24}" + "".join(f"{counts.get(name, 0):>14}" for name in VERDICT_ORDER)
            lines.append(row)
        failing = [e for e in self.entries if e.outcome == "Fail"]
        if failing:
            lines.append("")
            lines.append("failing bindings:")
            for entry in failing:
                assert entry.verdict is not None
                for b in entry.verdict.failing_bindings:
                    bound = ", ".join(f"{k}={v}" for k, v in b.bindings.items()) or "<none>"
                    lines.append(
                        f"  {entry.emr_id} on {entry.input_name}: line {b.line} with {bound}"
                    )
        return "\n".join(lines)


def run_suite(
    emrs: Sequence[EmrAst],
    inputs: Sequence[ActionSequence],
    session_factory: SessionFactory,
    stubs: StubBindings | None = None,
    input_names: Sequence[str] | None = None,
) -> SuiteReport:
    """Evaluate every (EMR, input) pair sequentially and in order.

    Adapter failures are recorded per pair and never abort the suite.
    """
    names = list(input_names) if input_names else [f"input{i + 1}" for i in range(len(inputs))]
    report = SuiteReport()
    for ast in emrs:
        for i, source in enumerate(inputs):
            try:
                verdict = evaluate_emr(ast, source, session_factory, stubs)
                report.entries.append(SuiteEntry(ast.id, i, names[i], verdict))
            except AdapterFailure as exc:
                report.entries.append(SuiteEntry(ast.id, i, names[i], None, error=str(exc)))
    return report
