"""Errors shared by the evaluator and SUT adapters."""

from __future__ import annotations


class EvalError(Exception):
    """EMR evaluation failed for a structural reason (not a SUT fault)."""


class TypeMismatch(EvalError):
    """A boolean operator received a non-boolean operand."""


class MissingStub(EvalError):
    def __init__(self, name: str):
        super().__init__(f"no binding for stub function '{name}'")
        self.name = name


class AdapterFailure(Exception):
    """The SUT session failed to execute an action."""
