"""Simple/Complex statement classification.

A statement is Complex when it contains at least one invocation of a
non-construct function or method; statements built purely from DSL
constructs, literals, and identifiers are Simple. Classification runs over
the canonical statement enumeration, so every statement gets exactly one
class.
"""

from __future__ import annotations

import enum

from .ast import EmrAst
from .printer import Unit, canonical_units


class StatementClass(enum.Enum):
    SIMPLE = "Simple"
    COMPLEX = "Complex"


def classify_unit(unit: Unit) -> StatementClass:
    return StatementClass.COMPLEX if unit.is_complex else StatementClass.SIMPLE


def classify_statements(ast: EmrAst) -> list[tuple[int, StatementClass]]:
    """(statement index, class) for every canonical statement of the EMR."""
    return [(u.index, classify_unit(u)) for u in canonical_units(ast)]


def statement_classes_by_line(ast: EmrAst) -> dict[int, StatementClass]:
    """Classes keyed by canonical line number (the annotation key)."""
    return {u.line: classify_unit(u) for u in canonical_units(ast)}
