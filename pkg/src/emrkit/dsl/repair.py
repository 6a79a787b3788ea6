"""Source-level auto-repair for recurring generation defects.

The rule table currently holds one rule, WLC-AMP: a defect pattern where
the two sides of an IMPLIES are joined with a single ``&`` instead of the
separating comma. The repair splits exactly that case; sources it cannot
fix pass through unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DslError
from .tokens import Token, tokenize

WLC_AMP = "WLC-AMP"


@dataclass
class RepairEntry:
    line: int
    rule: str
    before: str
    after: str

    def to_json(self) -> dict:
        return {
            "rule": self.rule,
            "line": self.line,
            "before": self.before,
            "after": self.after,
            "message": f"replaced {self.before!r} with {self.after!r}",
        }


@dataclass
class RepairLog:
    entries: list[RepairEntry] = field(default_factory=list)

    def __bool__(self) -> bool:
        return bool(self.entries)


def _implies_single_arg_amps(tokens: list[Token]) -> list[Token]:
    """The '&' tokens joining the two halves of one-argument IMPLIES calls."""
    fixes: list[Token] = []
    for i, tok in enumerate(tokens):
        if tok.kind != "identifier" or tok.lexeme != "IMPLIES":
            continue
        if i + 1 >= len(tokens) or not tokens[i + 1].is_punct("("):
            continue
        depth = 0
        commas = 0
        amps: list[Token] = []
        for t in tokens[i + 1 :]:
            if t.is_punct("("):
                depth += 1
            elif t.is_punct(")"):
                depth -= 1
                if depth == 0:
                    break
            elif depth == 1 and t.is_punct(","):
                commas += 1
            elif depth == 1 and t.is_punct("&"):
                amps.append(t)
        if commas == 0 and len(amps) == 1:
            fixes.append(amps[0])
    return fixes


def repair(source: str) -> tuple[str, RepairLog]:
    """Apply the repair rule table to ``source``.

    Returns the (possibly unchanged) source and a log with one entry per
    applied fix. Idempotent; sources that don't lex are returned as-is.
    """
    log = RepairLog()
    try:
        tokens = tokenize(source)
    except DslError:
        return source, log

    fixes = _implies_single_arg_amps(tokens)
    if not fixes:
        return source, log

    lines = source.split("\n")
    # Right-to-left so earlier column positions stay valid.
    for tok in sorted(fixes, key=lambda t: (t.line, t.column), reverse=True):
        text = lines[tok.line - 1]
        col = tok.column - 1  # 0-based index of the '&'
        prefix = text[:col].rstrip()
        before = text[len(prefix) : col + 1]
        lines[tok.line - 1] = prefix + "," + text[col + 1 :]
        log.entries.append(RepairEntry(tok.line, WLC_AMP, before, ","))

    log.entries.sort(key=lambda e: e.line)
    return "\n".join(lines), log
