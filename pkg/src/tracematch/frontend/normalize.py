"""Lowering of nested expressions into three-address form.

Every operator, index, builtin and call ends up applied to atoms only.
Each extracted subexpression is assigned to a fresh temporary ``$tN``;
temporaries are numbered per program in left-to-right evaluation order.
Short-circuit ``&&``/``||`` become explicit ``if`` statements so nothing
is evaluated that the source would not evaluate.
"""

from __future__ import annotations

import dataclasses
from typing import List, Tuple

from ..lang.ast import (
    ArrayLit, Assign, Binary, Builtin, Call, CallStmt, CoverFun, CoverVar, Expr,
    If, Index, IndexAssign, Location, Observe, ObserveFun, Program, Return,
    Stmt, Unary, Var, While, Wild, is_atom, is_simple,
)
from .locate import relocate


class _Lowerer:
    def __init__(self) -> None:
        self.counter = 0

    def fresh(self) -> str:
        self.counter += 1
        return f"$t{self.counter}"

    # expressions ---------------------------------------------------------

    def atom(self, e: Expr, loc: Location, out: List[Stmt]) -> Expr:
        """Reduce ``e`` to a variable or literal, emitting temporaries."""
        if is_atom(e):
            return e
        rhs = self.rhs(e, loc, out)
        if is_atom(rhs):
            return rhs
        tmp = self.fresh()
        out.append(Assign(loc, tmp, rhs))
        return Var(tmp)

    def rhs(self, e: Expr, loc: Location, out: List[Stmt]) -> Expr:
        """Reduce ``e`` to a single operation over atoms."""
        if is_atom(e):
            return e
        if isinstance(e, Binary) and e.op in ("&&", "||"):
            return self.short_circuit(e, loc, out)
        if isinstance(e, Unary):
            return Unary(e.op, self.atom(e.operand, loc, out))
        if isinstance(e, Binary):
            left = self.atom(e.left, loc, out)
            return Binary(e.op, left, self.atom(e.right, loc, out))
        if isinstance(e, Index):
            base = self.atom(e.base, loc, out)
            return Index(base, self.atom(e.index, loc, out))
        if isinstance(e, ArrayLit):
            return ArrayLit(tuple(self.atom(x, loc, out) for x in e.items))
        if isinstance(e, Builtin):
            return Builtin(e.name, tuple(self.atom(x, loc, out) for x in e.args))
        if isinstance(e, Call):
            return Call(e.name, tuple(self.atom(x, loc, out) for x in e.args))
        raise TypeError(f"cannot lower {e!r}")

    def short_circuit(self, e: Binary, loc: Location, out: List[Stmt]) -> Expr:
        left = self.rhs(e.left, loc, out)
        tmp = self.fresh()
        out.append(Assign(loc, tmp, left))
        second: List[Stmt] = []
        second.append(Assign(loc, tmp, self.rhs(e.right, loc, second)))
        if e.op == "&&":
            out.append(If(loc, Var(tmp), tuple(second), ()))
        else:
            out.append(If(loc, Var(tmp), (), tuple(second)))
        return Var(tmp)

    def condition(self, e: Expr, loc: Location, out: List[Stmt]) -> Expr:
        """Conditions may stay a single simple operation (never a call)."""
        rhs = self.rhs(e, loc, out)
        if isinstance(rhs, Call):
            return self.atom(rhs, loc, out)
        return rhs

    # statements ----------------------------------------------------------

    def block(self, stmts: Tuple[Stmt, ...]) -> Tuple[Stmt, ...]:
        out: List[Stmt] = []
        for s in stmts:
            self.stmt(s, out)
        return tuple(out)

    def stmt(self, s: Stmt, out: List[Stmt]) -> None:
        loc = s.loc
        if isinstance(s, Assign):
            out.append(Assign(loc, s.target, self.rhs(s.expr, loc, out)))
        elif isinstance(s, IndexAssign):
            index = self.atom(s.index, loc, out)
            value = self.rhs(s.expr, loc, out)
            if isinstance(value, Call):
                value = self.atom(value, loc, out)
            out.append(IndexAssign(loc, s.target, index, value))
        elif isinstance(s, CallStmt):
            out.append(CallStmt(loc, self.rhs(s.call, loc, out)))
        elif isinstance(s, While):
            prelude: List[Stmt] = []
            cond = self.condition(s.cond, loc, prelude)
            out.append(While(loc, cond, self.block(s.body), tuple(prelude)))
        elif isinstance(s, If):
            cond = self.condition(s.cond, loc, out)
            out.append(If(loc, cond, self.block(s.then), self.block(s.orelse)))
        elif isinstance(s, Return):
            expr = None if s.expr is None else self.atom(s.expr, loc, out)
            out.append(Return(loc, expr))
        elif isinstance(s, Observe):
            out.append(Observe(loc, self.atom(s.expr, loc, out), s.eq))
        elif isinstance(s, (ObserveFun, CoverFun)):
            args = s.args
            if args is not None:
                args = tuple(a if isinstance(a, Wild) else self.atom(a, loc, out) for a in args)
            out.append(dataclasses.replace(s, args=args))
        elif isinstance(s, CoverVar):
            out.append(CoverVar(loc, self.atom(s.expr, loc, out)))
        else:
            out.append(s)


def normalize_three_address(p: Program) -> Program:
    """Return ``p`` in three-address form, with locations renumbered.

    Already-normalized programs come back structurally unchanged.
    """
    low = _Lowerer()
    functions = {
        name: dataclasses.replace(fn, body=low.block(fn.body))
        for name, fn in p.functions.items()
    }
    functions = relocate(p.name, functions)
    return dataclasses.replace(p, functions=functions)


def is_three_address(p: Program) -> bool:
    """Check the three-address invariant on every statement."""
    for s in p.statements():
        if isinstance(s, (Assign,)) and not is_simple(s.expr):
            return False
        if isinstance(s, IndexAssign) and not (is_atom(s.index) and is_simple(s.expr)):
            return False
        if isinstance(s, CallStmt) and not is_simple(s.call):
            return False
        if isinstance(s, (While, If)) and not is_simple(s.cond):
            return False
        if isinstance(s, (Observe, CoverVar)) and not is_atom(s.expr):
            return False
        if isinstance(s, Return) and s.expr is not None and not is_atom(s.expr):
            return False
    return True


__all__ = ["normalize_three_address", "is_three_address"]
