"""Located AST for the language L.

The parser produces these nodes with arbitrarily nested expressions; the
normalizer rewrites them into three-address form, where every operator,
index or call takes only atoms (variables or literals). Both forms run on
the same interpreter.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Tuple


@dataclass(frozen=True, order=True)
class Location:
    """A program point.

    Identity is ``(program, id, context)``. ``id`` numbers statements in
    program order. ``context`` is the chain of call-site ids through which
    a callee statement was reached (empty in the entry function), so every
    call site gets its own copy of the callee's locations.
    """

    program: str
    id: int
    context: Tuple[int, ...] = ()
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)
    end_line: int = field(default=0, compare=False)
    label: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        # locations are hashed constantly during matching; compute once
        object.__setattr__(self, "_hash", hash((self.program, self.id, self.context)))

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other: object) -> bool:
        if other is self:
            return True
        if type(other) is not Location:
            return NotImplemented
        return (self._hash == other._hash and self.id == other.id
                and self.program == other.program and self.context == other.context)

    def __str__(self) -> str:
        return self.label or f"ℓ#{self.id}"

    def __repr__(self) -> str:
        return f"<{self.program}:{self}>"

    @property
    def static(self) -> "Location":
        if not self.context:
            return self
        return Location(self.program, self.id, (), self.line, self.col, self.end_line,
                        self.label.split("@", 1)[0])


NOWHERE = Location("", 0)


# ----------------------------------------------------------------- expressions


class Expr:
    __slots__ = ()


@dataclass(frozen=True)
class Lit(Expr):
    value: Any


@dataclass(frozen=True)
class Var(Expr):
    name: str


@dataclass(frozen=True)
class Unary(Expr):
    op: str  # "-", "!", "len"
    operand: Expr


@dataclass(frozen=True)
class Binary(Expr):
    op: str
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Index(Expr):
    base: Expr
    index: Expr


@dataclass(frozen=True)
class ArrayLit(Expr):
    items: Tuple[Expr, ...]


@dataclass(frozen=True)
class Builtin(Expr):
    """Primitive operators written in call syntax (``ord``, ``chr``, ``array``)."""

    name: str
    args: Tuple[Expr, ...]


@dataclass(frozen=True)
class Call(Expr):
    """Library call or user-function call, resolved by name at run time."""

    name: str
    args: Tuple[Expr, ...]


@dataclass(frozen=True)
class Wild(Expr):
    """An elided ``_`` argument inside ``observeFun``/``cover``."""


BUILTINS = {"ord": 1, "chr": 1, "array": 2}


def is_atom(e: Expr) -> bool:
    return isinstance(e, (Var, Lit))


def is_simple(e: Expr) -> bool:
    """True when ``e`` is a single operation over atoms (three-address RHS)."""
    if is_atom(e):
        return True
    if isinstance(e, Unary):
        return is_atom(e.operand)
    if isinstance(e, Binary):
        return e.op not in ("&&", "||") and is_atom(e.left) and is_atom(e.right)
    if isinstance(e, Index):
        return is_atom(e.base) and is_atom(e.index)
    if isinstance(e, (ArrayLit, Builtin, Call)):
        args = e.items if isinstance(e, ArrayLit) else e.args
        return all(is_atom(a) for a in args)
    return False


# ------------------------------------------------------------------ statements


class Stmt:
    __slots__ = ()
    loc: Location


@dataclass(frozen=True)
class Assign(Stmt):
    loc: Location
    target: str
    expr: Expr


@dataclass(frozen=True)
class IndexAssign(Stmt):
    loc: Location
    target: str
    index: Expr
    expr: Expr


@dataclass(frozen=True)
class CallStmt(Stmt):
    loc: Location
    call: Call


@dataclass(frozen=True)
class While(Stmt):
    """``while (cond) body``; ``prelude`` recomputes condition temporaries
    before every test."""

    loc: Location
    cond: Expr
    body: Tuple[Stmt, ...]
    prelude: Tuple[Stmt, ...] = ()


@dataclass(frozen=True)
class If(Stmt):
    loc: Location
    cond: Expr
    then: Tuple[Stmt, ...]
    orelse: Tuple[Stmt, ...] = ()


@dataclass(frozen=True)
class Skip(Stmt):
    loc: Location


@dataclass(frozen=True)
class Return(Stmt):
    loc: Location
    expr: Optional[Expr] = None


@dataclass(frozen=True)
class Break(Stmt):
    loc: Location


@dataclass(frozen=True)
class Observe(Stmt):
    loc: Location
    expr: Expr
    eq: Optional[str] = None


@dataclass(frozen=True)
class ObserveFun(Stmt):
    """``observeFun(f(a, _, ...))``. ``args`` is ``None`` for ``f()``,
    meaning every argument is elided."""

    loc: Location
    fname: str
    args: Optional[Tuple[Expr, ...]]
    eq: Optional[str] = None


@dataclass(frozen=True)
class CoverFun(Stmt):
    loc: Location
    fname: str
    args: Optional[Tuple[Expr, ...]]
    eq: Optional[str] = None


@dataclass(frozen=True)
class CoverVar(Stmt):
    loc: Location
    expr: Expr


SPEC_ONLY = (Observe, ObserveFun, CoverFun, CoverVar)


@dataclass(frozen=True)
class Function:
    name: str
    params: Tuple[str, ...]
    body: Tuple[Stmt, ...]
    nondet: Tuple[str, ...] = ()
    line: int = 0


@dataclass(frozen=True)
class Program:
    name: str
    role: str  # "implementation" | "specification"
    functions: Dict[str, Function]
    entry: str
    line_offset: int = 0

    def __hash__(self) -> int:
        return hash((self.name, self.role, self.entry))

    @property
    def main(self) -> Function:
        return self.functions[self.entry]

    @property
    def params(self) -> Tuple[str, ...]:
        return self.main.params

    @property
    def nondet_vars(self) -> Tuple[str, ...]:
        return self.main.nondet

    @property
    def is_specification(self) -> bool:
        return self.role == "specification"

    def statements(self):
        """Every statement of every function, in program order."""
        for fn in self.functions.values():
            yield from walk(fn.body)

    def observed_locations(self):
        return [s.loc for s in self.statements() if isinstance(s, SPEC_ONLY)]


def children(s: Stmt):
    if isinstance(s, While):
        yield from s.prelude
        yield from s.body
    elif isinstance(s, If):
        yield from s.then
        yield from s.orelse


def walk(stmts):
    for s in stmts:
        yield s
        yield from walk(tuple(children(s)))
