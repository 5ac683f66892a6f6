"""Recursive-descent parser for L.

Concrete syntax::

    Puzzle(s, t) nondet(nd1) {      // entry function; nondet(...) in specs only
      i := 0;
      while (i < |s|) { c := s[i]; observe(c); i := i + 1; }
      if (nd1) observeFun(Split(_, c)); else skip;
      cover(256);
      return i;
    }

Expressions may nest; :func:`normalize_three_address` lowers them.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Tuple

from ..errors import LangSyntaxError, RoleViolation
from ..lang.ast import (
    BUILTINS, ArrayLit, Assign, Binary, Break, Builtin, Call, CallStmt, CoverFun,
    CoverVar, Expr, Function, If, Index, IndexAssign, Lit, Location, Observe,
    ObserveFun, Program, Return, Skip, Stmt, Unary, Var, While, Wild, walk,
)
from ..lang.values import Char
from .lexer import Token, tokenize
from .locate import relocate

COMPARISONS = ("==", "!=", "<", "<=", ">", ">=")
SPEC_KEYWORDS = ("observe", "observeFun", "cover")


class Parser:
    def __init__(self, src: str, *, name: str = "program", role: str = "implementation",
                 line_offset: int = 0, source: str = "") -> None:
        self.toks = tokenize(src, first_line=1 + line_offset, source=source)
        self.pos = 0
        self.name = name
        self.role = role
        self.offset = line_offset
        self.source = source

    # -------------------------------------------------------------- helpers

    @property
    def tok(self) -> Token:
        return self.toks[self.pos]

    def peek(self, k: int = 1) -> Token:
        return self.toks[min(self.pos + k, len(self.toks) - 1)]

    def error(self, msg: str, tok: Optional[Token] = None) -> LangSyntaxError:
        tok = tok or self.tok
        return LangSyntaxError(msg, tok.line, tok.col, self.source)

    def at(self, text: str) -> bool:
        return self.tok.kind in ("sym", "kw") and self.tok.text == text

    def accept(self, text: str) -> bool:
        if self.at(text):
            self.pos += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        if not self.at(text):
            found = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")
        tok = self.tok
        self.pos += 1
        return tok

    def ident(self) -> str:
        if self.tok.kind != "ident":
            raise self.error(f"expected identifier, found {self.tok.text or 'end of input'!r}")
        word = self.tok.text
        self.pos += 1
        return word

    def loc(self, tok: Token) -> Location:
        rel = tok.line - self.offset
        return Location(self.name, 0, (), rel, tok.col, rel)

    def spec_only(self, tok: Token, what: str) -> None:
        if self.role != "specification":
            raise RoleViolation(f"{what} in implementation", tok.line, tok.col, self.source)

    # -------------------------------------------------------------- program

    def program(self, entry: Optional[str] = None) -> Program:
        functions: Dict[str, Function] = {}
        while self.tok.kind != "eof":
            fn = self.function()
            if fn.name in functions:
                raise self.error(f"function {fn.name!r} defined twice")
            functions[fn.name] = fn
        if not functions:
            raise self.error("program defines no function")
        entry = entry or next(iter(functions))
        if entry not in functions:
            raise LangSyntaxError(f"entry function {entry!r} not defined", 0, 0, self.source)
        for fn in functions.values():
            if fn.nondet and fn.name != entry:
                raise LangSyntaxError(f"nondet variables declared on non-entry function {fn.name!r}",
                                      fn.line + self.offset, 1, self.source)
            for st in walk(fn.body):
                if isinstance(st, (Assign, IndexAssign)) and st.target in fn.nondet:
                    raise LangSyntaxError(f"nondeterministic variable {st.target!r} is read-only",
                                          st.loc.line + self.offset, st.loc.col, self.source)
        functions = relocate(self.name, functions)
        return Program(self.name, self.role, functions, entry, self.offset)

    def function(self) -> Function:
        head = self.tok
        name = self.ident()
        self.expect("(")
        params: List[str] = []
        if not self.at(")"):
            params.append(self.ident())
            while self.accept(","):
                params.append(self.ident())
        self.expect(")")
        nondet: List[str] = []
        if self.at("nondet"):
            kw = self.tok
            self.spec_only(kw, "nondet variables")
            self.pos += 1
            self.expect("(")
            nondet.append(self.ident())
            while self.accept(","):
                nondet.append(self.ident())
            self.expect(")")
        dup = {p for p in params + nondet if (params + nondet).count(p) > 1}
        if dup:
            raise self.error(f"duplicate parameter {sorted(dup)[0]!r}", head)
        body = self.block()
        return Function(name, tuple(params), body, tuple(nondet), head.line - self.offset)

    def block(self) -> Tuple[Stmt, ...]:
        self.expect("{")
        stmts: List[Stmt] = []
        while not self.at("}"):
            if self.tok.kind == "eof":
                raise self.error("unterminated block")
            stmts.append(self.statement())
        self.expect("}")
        return tuple(stmts)

    def body(self) -> Tuple[Stmt, ...]:
        if self.at("{"):
            return self.block()
        return (self.statement(),)

    # ------------------------------------------------------------ statements

    def statement(self) -> Stmt:
        tok = self.tok
        loc = self.loc(tok)
        if self.accept("while"):
            self.expect("(")
            cond = self.expr()
            self.expect(")")
            return While(loc, cond, self.body())
        if self.accept("if"):
            self.expect("(")
            cond = self.expr()
            self.expect(")")
            then = self.body()
            orelse: Tuple[Stmt, ...] = ()
            if self.accept("else"):
                orelse = self.body()
            return If(loc, cond, then, orelse)
        if self.accept("skip"):
            self.expect(";")
            return Skip(loc)
        if self.accept("break"):
            self.expect(";")
            return Break(loc)
        if self.accept("return"):
            expr = None if self.at(";") else self.expr()
            self.expect(";")
            return Return(loc, expr)
        if self.at("observe"):
            self.spec_only(tok, "observe")
            self.pos += 1
            self.expect("(")
            expr = self.expr()
            eq = self.ident() if self.accept(",") else None
            self.expect(")")
            self.expect(";")
            return Observe(loc, expr, eq)
        if self.at("observeFun"):
            self.spec_only(tok, "observeFun")
            self.pos += 1
            self.expect("(")
            fname, args = self.fun_pattern()
            eq = self.ident() if self.accept(",") else None
            self.expect(")")
            self.expect(";")
            return ObserveFun(loc, fname, args, eq)
        if self.at("cover"):
            self.spec_only(tok, "cover")
            self.pos += 1
            self.expect("(")
            if (self.tok.kind == "ident" and self.peek().text == "("
                    and self.tok.text not in BUILTINS):
                fname, args = self.fun_pattern()
                eq = self.ident() if self.accept(",") else None
                self.expect(")")
                self.expect(";")
                return CoverFun(loc, fname, args, eq)
            expr = self.expr()
            self.expect(")")
            self.expect(";")
            return CoverVar(loc, expr)
        if self.tok.kind == "ident":
            name = self.tok.text
            nxt = self.peek()
            if nxt.text == ":=":
                self.pos += 2
                expr = self.expr()
                self.expect(";")
                return Assign(loc, name, expr)
            if nxt.text == "[":
                self.pos += 2
                index = self.expr()
                self.expect("]")
                self.expect(":=")
                expr = self.expr()
                self.expect(";")
                return IndexAssign(loc, name, index, expr)
            if nxt.text == "(":
                if name in BUILTINS:
                    raise self.error(f"builtin {name!r} used as a statement")
                self.pos += 1
                call = Call(name, self.call_args())
                self.expect(";")
                return CallStmt(loc, call)
            if nxt.text == "=":
                raise self.error("use ':=' for assignment", nxt)
        raise self.error(f"expected statement, found {tok.text or 'end of input'!r}")

    def fun_pattern(self) -> Tuple[str, Optional[Tuple[Expr, ...]]]:
        fname = self.ident()
        self.expect("(")
        if self.accept(")"):
            return fname, None
        args: List[Expr] = [self.pattern_arg()]
        while self.accept(","):
            args.append(self.pattern_arg())
        self.expect(")")
        return fname, tuple(args)

    def pattern_arg(self) -> Expr:
        if self.tok.kind == "ident" and self.tok.text == "_":
            self.pos += 1
            return Wild()
        return self.expr()

    def call_args(self) -> Tuple[Expr, ...]:
        self.expect("(")
        args: List[Expr] = []
        if not self.at(")"):
            args.append(self.expr())
            while self.accept(","):
                args.append(self.expr())
        self.expect(")")
        return tuple(args)

    # ----------------------------------------------------------- expressions

    def expr(self) -> Expr:
        left = self.conj()
        while self.accept("||"):
            left = Binary("||", left, self.conj())
        return left

    def conj(self) -> Expr:
        left = self.comparison()
        while self.accept("&&"):
            left = Binary("&&", left, self.comparison())
        return left

    def comparison(self) -> Expr:
        left = self.additive()
        if self.tok.kind == "sym" and self.tok.text in COMPARISONS:
            op = self.tok.text
            self.pos += 1
            left = Binary(op, left, self.additive())
            if self.tok.kind == "sym" and self.tok.text in COMPARISONS:
                raise self.error("comparisons do not chain; add parentheses")
        return left

    def additive(self) -> Expr:
        left = self.term()
        while self.tok.kind == "sym" and self.tok.text in ("+", "-"):
            op = self.tok.text
            self.pos += 1
            left = Binary(op, left, self.term())
        return left

    def term(self) -> Expr:
        left = self.unary()
        while self.tok.kind == "sym" and self.tok.text in ("*", "/", "%"):
            op = self.tok.text
            self.pos += 1
            left = Binary(op, left, self.unary())
        return left

    def unary(self) -> Expr:
        if self.accept("-"):
            operand = self.unary()
            if isinstance(operand, Lit) and type(operand.value) is int:
                return Lit(-operand.value)
            return Unary("-", operand)
        if self.accept("!"):
            return Unary("!", self.unary())
        return self.postfix()

    def postfix(self) -> Expr:
        e = self.primary()
        while self.accept("["):
            idx = self.expr()
            self.expect("]")
            e = Index(e, idx)
        return e

    def primary(self) -> Expr:
        tok = self.tok
        if tok.kind == "int":
            self.pos += 1
            return Lit(tok.value)
        if tok.kind == "char":
            self.pos += 1
            return Lit(Char(tok.value))
        if tok.kind == "str":
            self.pos += 1
            return Lit(tok.value)
        if self.accept("true"):
            return Lit(True)
        if self.accept("false"):
            return Lit(False)
        if self.accept("("):
            e = self.expr()
            self.expect(")")
            return e
        if self.accept("|"):
            e = self.expr()
            self.expect("|")
            return Unary("len", e)
        if self.accept("["):
            items: List[Expr] = []
            if not self.at("]"):
                items.append(self.expr())
                while self.accept(","):
                    items.append(self.expr())
            self.expect("]")
            return ArrayLit(tuple(items))
        if tok.kind == "ident":
            if tok.text == "_":
                raise self.error("'_' is only allowed as an argument of observeFun/cover")
            self.pos += 1
            if self.at("("):
                args = self.call_args()
                if tok.text in BUILTINS:
                    if len(args) != BUILTINS[tok.text]:
                        raise self.error(f"{tok.text} takes {BUILTINS[tok.text]} argument(s)", tok)
                    return Builtin(tok.text, args)
                return Call(tok.text, args)
            return Var(tok.text)
        raise self.error(f"expected expression, found {tok.text or 'end of input'!r}")


def parse_program(text: str, *, name: str = "program", role: str = "implementation",
                  entry: Optional[str] = None, line_offset: int = 0, source: str = "") -> Program:
    """Parse L source into a located (not yet three-address) program."""
    if role not in ("implementation", "specification"):
        raise ValueError(f"unknown role {role!r}")
    return Parser(text, name=name, role=role, line_offset=line_offset, source=source).program(entry)
