"""Semantic validation of EMR ASTs against an API catalog.

Construct misuse (arity, obviously non-boolean operands) is an error.
Calls to functions known neither as constructs nor in the catalog are
*stubs*, not errors: the EMR is still well-formed, it just needs those
functions bound before it can run. Method names outside the small set the
runtime understands are warnings.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

from .ast import (
    BoolChain,
    BoolLit,
    Call,
    Continue,
    CONSTRUCT_ARITY,
    EmrAst,
    Expr,
    ExprStmt,
    ForEach,
    If,
    IntLit,
    MethodCall,
    Not,
    Stmt,
    StringLit,
    VarDecl,
    walk_exprs,
)

if TYPE_CHECKING:
    from ..sut.catalog import ApiCatalog

# Methods the evaluator resolves natively on runtime values.
RUNTIME_METHODS = frozenset({"actions", "getPosition", "getKind", "getParameter"})


@dataclass
class Diagnostic:
    severity: str  # "error" | "warning" | "stub"
    message: str
    line: int
    symbol: str | None = None

    def to_json(self) -> dict:
        out = {"severity": self.severity, "line": self.line, "message": self.message}
        if self.symbol is not None:
            out["symbol"] = self.symbol
        return out


def validate(ast: EmrAst, catalog: "ApiCatalog | None" = None) -> list[Diagnostic]:
    """Check constructs and resolve call names; never raises.

    No diagnostics means the EMR can run without binding any stubs.
    """
    known = set() if catalog is None else set(catalog.names())
    arities = {} if catalog is None else {e.name: len(e.parameters) for e in catalog.entries}
    diags: list[Diagnostic] = []
    seen_stubs: set[str] = set()

    def boolean_position(e: Expr, context: str) -> None:
        if isinstance(e, (IntLit, StringLit)):
            diags.append(
                Diagnostic("error", f"{context} must be a boolean expression", e.pos.line)
            )

    def integer_position(e: Expr, context: str) -> None:
        if isinstance(e, (StringLit, BoolLit)):
            diags.append(
                Diagnostic("error", f"{context} must be an integer", e.pos.line)
            )

    def check_construct(call: Call) -> None:
        accepted = CONSTRUCT_ARITY[call.name]
        if len(call.args) not in accepted:
            expected = " or ".join(str(a) for a in accepted)
            diags.append(
                Diagnostic(
                    "error",
                    f"{call.name} expects {expected} argument{'s' if accepted != (1,) else ''}",
                    call.pos.line,
                    symbol=call.name,
                )
            )
            return
        if call.name == "Input":
            integer_position(call.args[0], "Input index")
        elif call.name == "Output":
            if len(call.args) == 1:
                integer_position(call.args[0], "Output index")
            else:
                integer_position(call.args[1], "Output position")
                if isinstance(call.args[0], (IntLit, StringLit, BoolLit)):
                    diags.append(
                        Diagnostic(
                            "error",
                            "two-argument Output takes an input sequence first",
                            call.pos.line,
                            symbol="Output",
                        )
                    )
        elif call.name == "CREATE":
            target = call.args[0]
            if not (isinstance(target, Call) and target.name == "Input"):
                diags.append(
                    Diagnostic(
                        "error",
                        "CREATE target must be an Input(k) expression",
                        call.pos.line,
                        symbol="CREATE",
                    )
                )
        elif call.name in ("IMPLIES", "OR", "AND"):
            for arg in call.args:
                boolean_position(arg, f"{call.name} operand")
        elif call.name == "NOT":
            boolean_position(call.args[0], "NOT operand")

    def check_expr(root: Expr) -> None:
        for e in walk_exprs(root):
            if isinstance(e, Call):
                if e.is_construct:
                    check_construct(e)
                elif e.name in known:
                    if e.name in arities and len(e.args) != arities[e.name]:
                        diags.append(
                            Diagnostic(
                                "error",
                                f"{e.name} expects {arities[e.name]} argument(s), got {len(e.args)}",
                                e.pos.line,
                                symbol=e.name,
                            )
                        )
                elif e.name not in seen_stubs:
                    seen_stubs.add(e.name)
                    diags.append(
                        Diagnostic(
                            "stub",
                            f"unresolved function '{e.name}'; bind it or add it to the API catalog",
                            e.pos.line,
                            symbol=e.name,
                        )
                    )
            elif isinstance(e, MethodCall) and e.name not in RUNTIME_METHODS:
                diags.append(
                    Diagnostic(
                        "warning",
                        f"method '{e.name}' is not provided by the runtime",
                        e.pos.line,
                        symbol=e.name,
                    )
                )
            elif isinstance(e, Not):
                boolean_position(e.operand, "'!' operand")
            elif isinstance(e, BoolChain):
                for op in e.operands:
                    boolean_position(op, f"'{e.op}' operand")

    def check_stmts(stmts: tuple[Stmt, ...], in_loop: bool) -> None:
        for st in stmts:
            if isinstance(st, ForEach):
                check_expr(st.iterable)
                check_stmts(st.body, True)
            elif isinstance(st, If):
                boolean_position(st.cond, "if condition")
                check_expr(st.cond)
                check_stmts(st.body, in_loop)
            elif isinstance(st, Continue):
                if not in_loop:
                    diags.append(Diagnostic("error", "continue outside of a loop", st.pos.line))
            elif isinstance(st, VarDecl):
                check_expr(st.init)
            elif isinstance(st, ExprStmt):
                check_expr(st.expr)

    check_stmts(ast.statements, False)
    return diags


def stub_names(diags: list[Diagnostic]) -> list[str]:
    return [d.symbol for d in diags if d.severity == "stub" and d.symbol]


def has_errors(diags: list[Diagnostic]) -> bool:
    return any(d.severity == "error" for d in diags)
