"""Computation domain of the language.

Values are plain immutable Python objects:

* ``int``            arbitrary-precision integers
* ``bool``           booleans (kept distinct from ints by kind)
* :class:`Char`      single unicode characters
* ``str``            strings
* ``tuple``          arrays (value semantics, nesting allowed)
* :data:`DONT_CARE`  the wildcard ``?`` that equals anything
* :class:`LibRecord` a library call ``f(args)`` recorded in a trace

Loop-iteration markers (:data:`LOOP`) live in traces but are not values.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Tuple, Union


class Char:
    """A single character; never equal to a one-letter string."""

    __slots__ = ("ch",)

    def __init__(self, ch: str) -> None:
        if len(ch) != 1:
            raise ValueError(f"Char needs exactly one character, got {ch!r}")
        object.__setattr__(self, "ch", ch)

    def __setattr__(self, name: str, value: Any) -> None:
        raise AttributeError("Char is immutable")

    def __eq__(self, other: object) -> bool:
        return type(other) is Char and other.ch == self.ch

    def __ne__(self, other: object) -> bool:
        return not self.__eq__(other)

    def __lt__(self, other: "Char") -> bool:
        return self.ch < other.ch

    def __le__(self, other: "Char") -> bool:
        return self.ch <= other.ch

    def __gt__(self, other: "Char") -> bool:
        return self.ch > other.ch

    def __ge__(self, other: "Char") -> bool:
        return self.ch >= other.ch

    def __hash__(self) -> int:
        return hash(("Char", self.ch))

    def __repr__(self) -> str:
        return f"Char({self.ch!r})"


class _DontCare:
    __slots__ = ()
    _instance = None

    def __new__(cls) -> "_DontCare":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "?"

    def __reduce__(self):
        return (_DontCare, ())


DONT_CARE = _DontCare()


class _LoopMarker:
    __slots__ = ()
    _instance = None

    def __new__(cls) -> "_LoopMarker":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "⊥"

    def __reduce__(self):
        return (_LoopMarker, ())


LOOP = _LoopMarker()


@dataclass(frozen=True)
class LibRecord:
    """A recorded library call.

    ``args`` is the compared payload. ``result`` is what the call returned
    (``None`` for records built by a specification, which never runs the
    call); it takes no part in record-to-record equality.
    """

    name: str
    args: Tuple[Any, ...]
    result: Any = field(default=None, compare=False)


Value = Union[int, bool, Char, str, tuple, _DontCare, LibRecord]


def kind_of(v: Any) -> str:
    """Name of the value's kind, as used in error messages."""
    if v is DONT_CARE:
        return "?"
    t = type(v)
    if t is bool:
        return "Bool"
    if t is int:
        return "Int"
    if t is Char:
        return "Char"
    if t is str:
        return "Str"
    if t is tuple:
        return "Array"
    if t is LibRecord:
        return "LibRecord"
    raise TypeError(f"not a language value: {v!r}")


def is_value(v: Any) -> bool:
    t = type(v)
    if t in (int, bool, Char, str) or v is DONT_CARE:
        return True
    if t is tuple:
        return all(is_value(x) for x in v)
    if t is LibRecord:
        return all(is_value(x) for x in v.args)
    return False


def contains_dont_care(v: Any) -> bool:
    if v is DONT_CARE:
        return True
    if type(v) is tuple:
        return any(contains_dont_care(x) for x in v)
    if type(v) is LibRecord:
        return any(contains_dont_care(x) for x in v.args)
    return False


def structurally_equal(x: Any, y: Any) -> bool:
    """Kind-exact structural equality on data values (no wildcard)."""
    tx = type(x)
    if tx is not type(y):
        return False
    if tx is tuple:
        return len(x) == len(y) and all(structurally_equal(a, b) for a, b in zip(x, y))
    if tx is LibRecord:
        return (
            x.name == y.name
            and len(x.args) == len(y.args)
            and all(structurally_equal(a, b) for a, b in zip(x.args, y.args))
        )
    return x == y


def values_equal_default(x: Any, y: Any) -> bool:
    """The default equality relation.

    ``?`` matches anything. Plain data compare structurally within a kind.
    Two records are equal when names and arity agree and arguments are
    pairwise default-equal. A record compared with plain data stands for
    the value it returned.
    """
    if x is DONT_CARE or y is DONT_CARE:
        return True
    tx, ty = type(x), type(y)
    if tx is LibRecord and ty is not LibRecord:
        return x.result is not None and values_equal_default(x.result, y)
    if ty is LibRecord and tx is not LibRecord:
        return y.result is not None and values_equal_default(x, y.result)
    if tx is not ty:
        return False
    if tx is tuple:
        if len(x) != len(y):
            return False
        for a, b in zip(x, y):
            if not values_equal_default(a, b):
                return False
        return True
    if tx is LibRecord:
        if x.name != y.name or len(x.args) != len(y.args):
            return False
        for a, b in zip(x.args, y.args):
            if not values_equal_default(a, b):
                return False
        return True
    return x == y


def data_view(x: Any) -> Any:
    """Strip a record down to its result, leaving other values alone."""
    if type(x) is LibRecord and x.result is not None:
        return x.result
    return x


_CHAR_ESCAPES = {"\\": "\\\\", "\n": "\\n", "\t": "\\t", "\r": "\\r", "\0": "\\0"}


def _escape(s: str, quote: str) -> str:
    out = []
    for ch in s:
        if ch in _CHAR_ESCAPES:
            out.append(_CHAR_ESCAPES[ch])
        elif ch == quote:
            out.append("\\" + quote)
        elif ord(ch) < 0x20 or ord(ch) == 0x7F:
            out.append(f"\\x{ord(ch):02x}")
        else:
            out.append(ch)
    return "".join(out)


def render(v: Any) -> str:
    """Canonical text of a value; bit-exact and kind-preserving."""
    if v is DONT_CARE:
        return "?"
    if v is LOOP:
        return "⊥"
    t = type(v)
    if t is bool:
        return "true" if v else "false"
    if t is int:
        return str(v)
    if t is Char:
        return "'" + _escape(v.ch, "'") + "'"
    if t is str:
        return '"' + _escape(v, '"') + '"'
    if t is tuple:
        return "[" + ",".join(render(x) for x in v) + "]"
    if t is LibRecord:
        head = v.name + "(" + ",".join(render(x) for x in v.args) + ")"
        if v.result is not None:
            head += "=" + render(v.result)
        return head
    raise TypeError(f"cannot render {v!r}")
