"""Render programs back to L source (used by ``tracematch normalize``)."""

from __future__ import annotations

from typing import List

from ..lang.ast import (
    ArrayLit, Assign, Binary, Break, Builtin, Call, CallStmt, CoverFun, CoverVar,
    Expr, If, Index, IndexAssign, Lit, Observe, ObserveFun, Program, Return, Skip,
    Stmt, Unary, Var, While, Wild,
)
from ..lang.values import render

_PREC = {"||": 1, "&&": 2, "==": 3, "!=": 3, "<": 3, "<=": 3, ">": 3, ">=": 3,
         "+": 4, "-": 4, "*": 5, "/": 5, "%": 5}


def expr_text(e: Expr, prec: int = 0) -> str:
    if isinstance(e, Lit):
        return render(e.value)
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Wild):
        return "_"
    if isinstance(e, Unary):
        if e.op == "len":
            return "|" + expr_text(e.operand) + "|"
        return e.op + expr_text(e.operand, 6)
    if isinstance(e, Binary):
        p = _PREC[e.op]
        text = f"{expr_text(e.left, p)} {e.op} {expr_text(e.right, p + 1)}"
        return f"({text})" if p < prec else text
    if isinstance(e, Index):
        return f"{expr_text(e.base, 7)}[{expr_text(e.index)}]"
    if isinstance(e, ArrayLit):
        return "[" + ", ".join(expr_text(x) for x in e.items) + "]"
    if isinstance(e, (Builtin, Call)):
        return f"{e.name}(" + ", ".join(expr_text(x) for x in e.args) + ")"
    raise TypeError(f"cannot print {e!r}")


def _fun(name, args, eq) -> str:
    inner = "" if args is None else ", ".join(expr_text(a) for a in args)
    return f"{name}({inner})" + (f", {eq}" if eq else "")


def _stmts(stmts, depth: int, out: List[str]) -> None:
    for s in stmts:
        _stmt(s, depth, out)


def _stmt(s: Stmt, depth: int, out: List[str]) -> None:
    pad = "  " * depth
    tag = f"  // {s.loc}"
    if isinstance(s, Assign):
        out.append(f"{pad}{s.target} := {expr_text(s.expr)};{tag}")
    elif isinstance(s, IndexAssign):
        out.append(f"{pad}{s.target}[{expr_text(s.index)}] := {expr_text(s.expr)};{tag}")
    elif isinstance(s, CallStmt):
        out.append(f"{pad}{expr_text(s.call)};{tag}")
    elif isinstance(s, While):
        if s.prelude:
            out.append(f"{pad}// condition prelude, re-run before each test")
            _stmts(s.prelude, depth, out)
        out.append(f"{pad}while ({expr_text(s.cond)}) {{{tag}")
        _stmts(s.body, depth + 1, out)
        out.append(pad + "}")
    elif isinstance(s, If):
        out.append(f"{pad}if ({expr_text(s.cond)}) {{")
        _stmts(s.then, depth + 1, out)
        if s.orelse:
            out.append(pad + "} else {")
            _stmts(s.orelse, depth + 1, out)
        out.append(pad + "}")
    elif isinstance(s, Skip):
        out.append(pad + "skip;")
    elif isinstance(s, Break):
        out.append(pad + "break;")
    elif isinstance(s, Return):
        out.append(pad + ("return;" if s.expr is None else f"return {expr_text(s.expr)};"))
    elif isinstance(s, Observe):
        eq = f", {s.eq}" if s.eq else ""
        out.append(f"{pad}observe({expr_text(s.expr)}{eq});{tag}")
    elif isinstance(s, ObserveFun):
        out.append(f"{pad}observeFun({_fun(s.fname, s.args, s.eq)});{tag}")
    elif isinstance(s, CoverFun):
        out.append(f"{pad}cover({_fun(s.fname, s.args, s.eq)});{tag}")
    elif isinstance(s, CoverVar):
        out.append(f"{pad}cover({expr_text(s.expr)});{tag}")
    else:
        raise TypeError(f"cannot print {s!r}")


def program_text(p: Program) -> str:
    out: List[str] = []
    for fn in p.functions.values():
        nd = f" nondet({', '.join(fn.nondet)})" if fn.nondet else ""
        out.append(f"{fn.name}({', '.join(fn.params)}){nd} {{")
        _stmts(fn.body, 1, out)
        out.append("}")
    return "\n".join(out) + "\n"
