"""Tree-walking interpreter with role-specific trace recording.

Implementations record every assignment (the assigned variable's new
value; the whole array for an element assignment), every library call
(a :class:`LibRecord` of its arguments, carrying the result), and a loop
marker each time a loop body is entered. Specifications record only their
``observe``/``observeFun``/``cover`` statements. The ``silent`` role
records nothing and is used for custom equality functions.

User functions run inline. A statement inside a callee is located with
the chain of call sites that reached it, so two call sites of the same
helper produce distinct locations. A recursive call reuses the context of
the activation it recurses into, which keeps the location set finite.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

from ..errors import (
    ArithmeticFault, CallDepthExceeded, CustomEqualityError, IndexOutOfBounds,
    RuntimeFault, RuntimeTypeError, StepBudgetExceeded, UndefinedName,
)
from ..lang.ast import (
    ArrayLit, Assign, Binary, Break, Builtin, Call, CallStmt, CoverFun, CoverVar,
    Expr, If, Index, IndexAssign, Lit, Location, Observe, ObserveFun, Program,
    Return, Skip, Stmt, Unary, Var, While, Wild,
)
from ..lang.trace import Trace, TraceEntry
from ..lang.values import (
    DONT_CARE, LOOP, Char, LibRecord, contains_dont_care, kind_of, structurally_equal,
)
from .library import STANDARD, LibraryRegistry

DEFAULT_STEP_BUDGET = 10_000_000
DEFAULT_MAX_DEPTH = 256

ROLES = ("implementation", "specification", "silent")


@dataclass(frozen=True)
class Execution:
    """Outcome of one run: the trace, the entry function's return value
    and its final store."""

    trace: Trace
    returned: Any
    store: Mapping[str, Any]
    steps: int


class _Break(Exception):
    pass


class _Return(Exception):
    def __init__(self, value: Any) -> None:
        self.value = value


class _Frame:
    __slots__ = ("fname", "store", "context")

    def __init__(self, fname: str, store: Dict[str, Any], context: Tuple[int, ...]) -> None:
        self.fname, self.store, self.context = fname, store, context


def _ensure_recursion_headroom(depth: int) -> None:
    # each L call nests a handful of Python frames per block level
    needed = 1000 + depth * 40
    if sys.getrecursionlimit() < needed:
        sys.setrecursionlimit(needed)


class Executor:
    def __init__(self, program: Program, role: Optional[str] = None, *,
                 registry: LibraryRegistry = STANDARD,
                 step_budget: int = DEFAULT_STEP_BUDGET,
                 max_depth: int = DEFAULT_MAX_DEPTH) -> None:
        self.program = program
        self.role = role or program.role
        if self.role not in ROLES:
            raise ValueError(f"unknown role {self.role!r}")
        self.registry = registry
        self.step_budget = step_budget
        self.max_depth = max_depth
        self.record_impl = self.role == "implementation"
        self.record_spec = self.role == "specification"
        self._site_labels = {s.loc.id: s.loc.label for s in program.statements()}
        self._loc_cache: Dict[Tuple[int, Tuple[int, ...]], Location] = {}
        self._dispatch = {
            Assign: self._assign, IndexAssign: self._index_assign, CallStmt: self._call_stmt,
            While: self._while, If: self._if, Skip: self._skip, Return: self._return,
            Break: self._break, Observe: self._observe, ObserveFun: self._observe_fun,
            CoverFun: self._observe_fun, CoverVar: self._cover_var,
        }

    # ------------------------------------------------------------- driving

    def run(self, inputs: Mapping[str, Any], nondet: Optional[Mapping[str, bool]] = None) -> Execution:
        main = self.program.main
        store: Dict[str, Any] = {}
        for p in main.params:
            if p not in inputs:
                raise UndefinedName(f"input {p!r} is not bound")
            store[p] = inputs[p]
        nondet = dict(nondet or {})
        for v in main.nondet:
            if v not in nondet:
                raise UndefinedName(f"nondeterministic variable {v!r} is not bound")
            if type(nondet[v]) is not bool:
                raise RuntimeTypeError(f"nondeterministic variable {v!r} must be Bool")
            store[v] = nondet[v]
        self._reset()
        frame = _Frame(main.name, store, ())
        self._stack.append(frame)
        _ensure_recursion_headroom(self.max_depth)
        returned = None
        try:
            self._block(main.body, frame)
        except _Return as r:
            returned = r.value
        except _Break:
            raise RuntimeTypeError("break outside a loop") from None
        finally:
            self._stack.pop()
        return Execution(Trace(tuple(self._entries)), returned, dict(store), self._steps)

    def call(self, fname: str, args: Sequence[Any]) -> Any:
        """Invoke a function of the program directly (no trace kept)."""
        self._reset()
        _ensure_recursion_headroom(self.max_depth)
        return self._call_user(fname, list(args), 0, _Frame("", {}, ()))

    def _reset(self) -> None:
        self._entries: List[TraceEntry] = []
        self._steps = 0
        self._stack: List[_Frame] = []

    def _tick(self) -> None:
        self._steps += 1
        if self._steps > self.step_budget:
            raise StepBudgetExceeded(
                f"{self.program.name}: step budget of {self.step_budget} exhausted")

    # ------------------------------------------------------------ locations

    def _loc(self, stmt: Stmt, frame: _Frame) -> Location:
        ctx = frame.context
        if not ctx:
            return stmt.loc
        key = (stmt.loc.id, ctx)
        loc = self._loc_cache.get(key)
        if loc is None:
            base = stmt.loc
            label = base.label + "".join("@" + self._site_labels[s].lstrip("ℓ") for s in reversed(ctx))
            loc = Location(base.program, base.id, ctx, base.line, base.col, base.end_line, label)
            self._loc_cache[key] = loc
        return loc

    def _emit(self, stmt: Stmt, frame: _Frame, value: Any, **extra: Any) -> None:
        self._entries.append(TraceEntry(self._loc(stmt, frame), value, **extra))

    # ------------------------------------------------------------- statements

    def _block(self, stmts: Tuple[Stmt, ...], frame: _Frame) -> None:
        dispatch = self._dispatch
        for s in stmts:
            self._tick()
            dispatch[type(s)](s, frame)

    def _assign(self, s: Assign, frame: _Frame) -> None:
        e = s.expr
        if isinstance(e, Call):
            value = self._invoke(e, s, frame, record=True)
            if value is None:
                raise RuntimeTypeError(f"{e.name} returned no value")
            frame.store[s.target] = data_of(value)
            if self.record_impl and type(value) is not LibRecord:
                self._emit(s, frame, value)
            return
        value = self._eval(e, frame, s)
        frame.store[s.target] = value
        if self.record_impl:
            self._emit(s, frame, value)

    def _index_assign(self, s: IndexAssign, frame: _Frame) -> None:
        arr = self._lookup(s.target, frame)
        if type(arr) is not tuple:
            raise RuntimeTypeError(f"cannot assign an element of {kind_of(arr)} {s.target!r}")
        i = self._eval(s.index, frame, s)
        _check_index(arr, i, s.target)
        value = self._eval(s.expr, frame, s)
        arr = arr[:i] + (value,) + arr[i + 1:]
        frame.store[s.target] = arr
        if self.record_impl:
            self._emit(s, frame, arr)

    def _call_stmt(self, s: CallStmt, frame: _Frame) -> None:
        self._invoke(s.call, s, frame, record=True)

    def _while(self, s: While, frame: _Frame) -> None:
        prelude = s.prelude
        while True:
            if prelude:
                self._block(prelude, frame)
            self._tick()
            if not self._truth(self._eval(s.cond, frame, s), "while"):
                return
            if self.record_impl:
                self._emit(s, frame, LOOP)
            try:
                self._block(s.body, frame)
            except _Break:
                return

    def _if(self, s: If, frame: _Frame) -> None:
        if self._truth(self._eval(s.cond, frame, s), "if"):
            self._block(s.then, frame)
        else:
            self._block(s.orelse, frame)

    def _skip(self, s: Skip, frame: _Frame) -> None:
        pass

    def _return(self, s: Return, frame: _Frame) -> None:
        raise _Return(None if s.expr is None else self._eval(s.expr, frame, s))

    def _break(self, s: Break, frame: _Frame) -> None:
        raise _Break()

    def _observe(self, s: Observe, frame: _Frame) -> None:
        value = self._eval(s.expr, frame, s)
        if self.record_spec:
            self._emit(s, frame, value)

    def _observe_fun(self, s, frame: _Frame) -> None:
        if s.fname not in self.registry:
            raise UndefinedName(f"unknown library function {s.fname!r}")
        if s.args is None:
            args = (DONT_CARE,) * self.registry.default_arity(s.fname)
        else:
            args = tuple(DONT_CARE if isinstance(a, Wild) else self._eval(a, frame, s) for a in s.args)
        if self.record_spec:
            self._emit(s, frame, LibRecord(s.fname, args), optional=isinstance(s, CoverFun))

    def _cover_var(self, s: CoverVar, frame: _Frame) -> None:
        bound = self._eval(s.expr, frame, s)
        if type(bound) is not int or bound < 0:
            raise RuntimeTypeError(f"cover bound must be a non-negative Int, got {bound!r}")
        if self.record_spec:
            self._emit(s, frame, DONT_CARE, optional=True, bound=bound)

    # ---------------------------------------------------------------- calls

    def _invoke(self, call: Call, s: Stmt, frame: _Frame, record: bool) -> Any:
        args = [self._eval(a, frame, s) for a in call.args]
        if call.name in self.program.functions:
            return self._call_user(call.name, args, s.loc.id, frame)
        if call.name not in self.registry:
            raise UndefinedName(f"unknown function {call.name!r}")
        fn = self.registry[call.name]
        if any(contains_dont_care(a) for a in args):
            if not fn.accepts(len(args)):
                raise RuntimeTypeError(f"{fn.name} called with {len(args)} arguments")
            result = DONT_CARE
        else:
            result = fn(*args)
        rec = LibRecord(call.name, tuple(args), result)
        if record and self.record_impl:
            self._emit(s, frame, rec)
        return rec

    def _call_user(self, fname: str, args: List[Any], site: int, frame: _Frame) -> Any:
        fn = self.program.functions[fname]
        if len(args) != len(fn.params):
            raise RuntimeTypeError(f"{fname} expects {len(fn.params)} arguments, got {len(args)}")
        if len(self._stack) >= self.max_depth:
            raise CallDepthExceeded(f"call depth limit {self.max_depth} reached in {fname}")
        context = None
        for active in reversed(self._stack):
            if active.fname == fname:
                context = active.context
                break
        if context is None:
            context = frame.context + (site,) if site else frame.context
        callee = _Frame(fname, dict(zip(fn.params, args)), context)
        self._stack.append(callee)
        try:
            self._block(fn.body, callee)
        except _Return as r:
            return r.value
        except _Break:
            raise RuntimeTypeError("break outside a loop") from None
        finally:
            self._stack.pop()
        return None

    # ---------------------------------------------------------- expressions

    def _lookup(self, name: str, frame: _Frame) -> Any:
        try:
            return frame.store[name]
        except KeyError:
            raise UndefinedName(f"variable {name!r} used before assignment") from None

    def _truth(self, v: Any, what: str) -> bool:
        if type(v) is not bool:
            raise RuntimeTypeError(f"{what} condition must be Bool, got {kind_of(v)}")
        return v

    def _eval(self, e: Expr, frame: _Frame, s: Stmt) -> Any:
        t = type(e)
        if t is Var:
            return self._lookup(e.name, frame)
        if t is Lit:
            return e.value
        if t is Binary:
            if e.op == "&&":
                return self._truth(self._eval(e.left, frame, s), "&&") and \
                    self._truth(self._eval(e.right, frame, s), "&&")
            if e.op == "||":
                return self._truth(self._eval(e.left, frame, s), "||") or \
                    self._truth(self._eval(e.right, frame, s), "||")
            return binary(e.op, self._eval(e.left, frame, s), self._eval(e.right, frame, s))
        if t is Index:
            return index(self._eval(e.base, frame, s), self._eval(e.index, frame, s))
        if t is Unary:
            return unary(e.op, self._eval(e.operand, frame, s))
        if t is Builtin:
            return builtin(e.name, [self._eval(a, frame, s) for a in e.args])
        if t is ArrayLit:
            return tuple(self._eval(x, frame, s) for x in e.items)
        if t is Call:
            # calls nested in expressions only occur before normalization
            value = self._invoke(e, s, frame, record=False)
            if value is None:
                raise RuntimeTypeError(f"{e.name} returned no value")
            return data_of(value)
        raise RuntimeTypeError(f"cannot evaluate {e!r}")


# ------------------------------------------------------------ value semantics


def data_of(v: Any) -> Any:
    return v.result if type(v) is LibRecord else v


def _check_index(seq: Any, i: Any, what: str) -> None:
    if type(i) is not int:
        raise RuntimeTypeError(f"index into {what} must be Int, got {kind_of(i)}")
    if not 0 <= i < len(seq):
        raise IndexOutOfBounds(f"index {i} outside {what} of length {len(seq)}")


def index(base: Any, i: Any) -> Any:
    if type(base) is str:
        _check_index(base, i, "Str")
        return Char(base[i])
    if type(base) is tuple:
        _check_index(base, i, "Array")
        return base[i]
    raise RuntimeTypeError(f"cannot index {kind_of(base)}")


def unary(op: str, v: Any) -> Any:
    if op == "-":
        if type(v) is not int:
            raise RuntimeTypeError(f"unary - needs Int, got {kind_of(v)}")
        return -v
    if op == "!":
        if type(v) is not bool:
            raise RuntimeTypeError(f"! needs Bool, got {kind_of(v)}")
        return not v
    if op == "len":
        if type(v) not in (str, tuple):
            raise RuntimeTypeError(f"|.| needs Str or Array, got {kind_of(v)}")
        return len(v)
    raise RuntimeTypeError(f"unknown unary operator {op!r}")


def _ints(op: str, a: Any, b: Any) -> None:
    if type(a) is not int or type(b) is not int:
        raise RuntimeTypeError(f"{op} needs Int operands, got {kind_of(a)} and {kind_of(b)}")


def _text(v: Any) -> str:
    return v.ch if type(v) is Char else v


def binary(op: str, a: Any, b: Any) -> Any:
    if op == "==":
        return structurally_equal(a, b)
    if op == "!=":
        return not structurally_equal(a, b)
    if op == "+":
        ta, tb = type(a), type(b)
        if ta is int and tb is int:
            return a + b
        if (ta is str or tb is str) and ta in (str, Char) and tb in (str, Char):
            return _text(a) + _text(b)
        if ta is tuple and tb is tuple:
            return a + b
        raise RuntimeTypeError(f"+ cannot combine {kind_of(a)} and {kind_of(b)}")
    if op in ("<", "<=", ">", ">="):
        ta = type(a)
        if ta is not type(b) or ta not in (int, Char, str):
            raise RuntimeTypeError(f"{op} needs two Ints, Chars or Strs, got {kind_of(a)} and {kind_of(b)}")
        if op == "<":
            return a < b
        if op == "<=":
            return a <= b
        if op == ">":
            return a > b
        return a >= b
    _ints(op, a, b)
    if op == "-":
        return a - b
    if op == "*":
        return a * b
    if op in ("/", "%"):
        if b == 0:
            raise ArithmeticFault("division by zero")
        q = abs(a) // abs(b)
        if (a < 0) != (b < 0):
            q = -q
        return q if op == "/" else a - b * q
    raise RuntimeTypeError(f"unknown operator {op!r}")


def builtin(name: str, args: List[Any]) -> Any:
    if name == "ord":
        (c,) = args
        if type(c) is not Char:
            raise RuntimeTypeError(f"ord needs Char, got {kind_of(c)}")
        return ord(c.ch)
    if name == "chr":
        (n,) = args
        if type(n) is not int or not 0 <= n <= 0x10FFFF:
            raise RuntimeTypeError(f"chr needs a code point, got {n!r}")
        return Char(chr(n))
    if name == "array":
        n, v = args
        if type(n) is not int or n < 0:
            raise RuntimeTypeError(f"array size must be a non-negative Int, got {n!r}")
        return (v,) * n
    raise RuntimeTypeError(f"unknown builtin {name!r}")


# ------------------------------------------------------------ public helpers


def execute_implementation(p: Program, inputs: Mapping[str, Any], **kw: Any) -> Trace:
    if p.is_specification:
        raise ValueError(f"{p.name} is a specification")
    return Executor(p, "implementation", **kw).run(inputs).trace


def execute_specification(p: Program, inputs: Mapping[str, Any],
                          nondet: Optional[Mapping[str, bool]] = None, **kw: Any) -> Trace:
    if not p.is_specification:
        raise ValueError(f"{p.name} is not a specification")
    return Executor(p, "specification", **kw).run(inputs, nondet).trace


def eval_equality_fn(program: Program, fname: str, x: Any, y: Any, *,
                     step_budget: int = 100_000, registry: LibraryRegistry = STANDARD) -> bool:
    """Run a two-parameter L predicate without recording anything."""
    if fname not in program.functions:
        raise CustomEqualityError(f"equality function {fname!r} is not defined")
    ex = Executor(program, "silent", registry=registry, step_budget=step_budget)
    try:
        result = ex.call(fname, [x, y])
    except RuntimeFault as exc:
        raise CustomEqualityError(f"{fname} failed: {exc}") from exc
    if type(result) is not bool:
        raise CustomEqualityError(f"{fname} returned {result!r}, expected Bool")
    return result
