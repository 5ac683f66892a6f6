"""Library functions callable from L.

Every entry is a pure, deterministic function over language values. The
reference behaviour follows the usual .NET string/array methods that the
anagram programs rely on, restricted to immutable values: ``Sort`` and
``Reverse`` return new arrays instead of sorting in place.

Sequences are either ``Str`` or arrays (tuples). Where a method treats a
string as a sequence of characters, its elements are :class:`Char`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Dict, Iterable, Tuple

from ..errors import IndexOutOfBounds, RuntimeTypeError
from ..lang.values import Char, kind_of, structurally_equal as _same


@dataclass(frozen=True)
class LibraryFunction:
    name: str
    impl: Callable[..., Any]
    min_arity: int
    max_arity: int
    default_arity: int
    doc: str = ""

    def accepts(self, n: int) -> bool:
        return self.min_arity <= n <= self.max_arity

    def __call__(self, *args: Any) -> Any:
        if not self.accepts(len(args)):
            raise RuntimeTypeError(
                f"{self.name} takes {self.min_arity}..{self.max_arity} arguments, got {len(args)}")
        return self.impl(*args)


class LibraryRegistry:
    """Name-indexed set of library functions (the identifier set F)."""

    def __init__(self, functions: Iterable[LibraryFunction] = ()) -> None:
        self._fns: Dict[str, LibraryFunction] = {}
        for fn in functions:
            self.register(fn)

    def register(self, fn: LibraryFunction) -> None:
        if fn.name in self._fns:
            raise ValueError(f"library function {fn.name!r} registered twice")
        self._fns[fn.name] = fn

    def __contains__(self, name: str) -> bool:
        return name in self._fns

    def __getitem__(self, name: str) -> LibraryFunction:
        return self._fns[name]

    def names(self) -> Tuple[str, ...]:
        return tuple(sorted(self._fns))

    def default_arity(self, name: str) -> int:
        return self._fns[name].default_arity


# ------------------------------------------------------------------ helpers


def _elements(seq: Any, who: str) -> tuple:
    if type(seq) is str:
        return tuple(Char(c) for c in seq)
    if type(seq) is tuple:
        return seq
    raise RuntimeTypeError(f"{who} expects Str or Array, got {kind_of(seq)}")


def _rebuild(like: Any, items: tuple) -> Any:
    """Return ``items`` in the same kind as ``like`` (string or array)."""
    if type(like) is str:
        return "".join(x.ch for x in items)
    return tuple(items)


def _need(value: Any, kind: type, who: str) -> Any:
    if type(value) is not kind:
        expected = {int: "Int", str: "Str", Char: "Char", tuple: "Array", bool: "Bool"}[kind]
        raise RuntimeTypeError(f"{who} expects {expected}, got {kind_of(value)}")
    return value


def _text(value: Any, who: str) -> str:
    """A Str, or a Char promoted to a one-letter string."""
    if type(value) is Char:
        return value.ch
    return _need(value, str, who)


def _index(seq: Any, pos: int, who: str, *, inclusive_end: bool = False) -> int:
    _need(pos, int, who)
    limit = len(seq) + (1 if inclusive_end else 0)
    if not 0 <= pos < limit:
        raise IndexOutOfBounds(f"{who}: index {pos} outside 0..{limit - 1}")
    return pos


def _sortable(items: tuple, who: str) -> None:
    kinds = {type(x) for x in items}
    if len(kinds) > 1 or kinds - {int, Char, str}:
        raise RuntimeTypeError(f"{who} needs elements of one ordered kind")


# --------------------------------------------------------------- functions


def split(s, sep):
    """``s.Split(sep)``: array of the pieces between separators."""
    sep = _text(sep, "Split")
    if not sep:
        raise RuntimeTypeError("Split: empty separator")
    return tuple(_need(s, str, "Split").split(sep))


def index_of(seq, item, start=0):
    """First position of ``item`` at or after ``start``, else -1."""
    if type(seq) is str:
        _index(seq, start, "IndexOf", inclusive_end=True)
        return seq.find(_text(item, "IndexOf"), start)
    items = _elements(seq, "IndexOf")
    _index(items, start, "IndexOf", inclusive_end=True)
    for i in range(start, len(items)):
        if _same(items[i], item):
            return i
    return -1


def last_index_of(seq, item):
    if type(seq) is str:
        return seq.rfind(_text(item, "LastIndexOf"))
    items = _elements(seq, "LastIndexOf")
    for i in range(len(items) - 1, -1, -1):
        if _same(items[i], item):
            return i
    return -1


def remove(seq, start, count=None):
    """``Remove(start)`` drops the tail; ``Remove(start, count)`` a slice."""
    items = _elements(seq, "Remove")
    _index(items, start, "Remove", inclusive_end=count is not None)
    if count is None:
        return _rebuild(seq, items[:start])
    _need(count, int, "Remove")
    if count < 0 or start + count > len(items):
        raise IndexOutOfBounds(f"Remove: range {start}+{count} outside length {len(items)}")
    return _rebuild(seq, items[:start] + items[start + count:])


def substring(seq, start, length=None):
    items = _elements(seq, "Substring")
    _index(items, start, "Substring", inclusive_end=True)
    if length is None:
        return _rebuild(seq, items[start:])
    _need(length, int, "Substring")
    if length < 0 or start + length > len(items):
        raise IndexOutOfBounds(f"Substring: range {start}+{length} outside length {len(items)}")
    return _rebuild(seq, items[start:start + length])


def sort(seq):
    items = _elements(seq, "Sort")
    _sortable(items, "Sort")
    return _rebuild(seq, tuple(sorted(items)))


def reverse(seq):
    return _rebuild(seq, _elements(seq, "Reverse")[::-1])


def to_char_array(s):
    return tuple(Char(c) for c in _need(s, str, "ToCharArray"))


def to_upper(x):
    if type(x) is Char:
        return Char(x.ch.upper()) if len(x.ch.upper()) == 1 else x
    return _need(x, str, "ToUpper").upper()


def join(sep, seq):
    parts = []
    for x in _elements(seq, "Join"):
        if type(x) is Char:
            parts.append(x.ch)
        elif type(x) is str:
            parts.append(x)
        elif type(x) in (int, bool):
            parts.append(str(x).lower() if type(x) is bool else str(x))
        else:
            raise RuntimeTypeError(f"Join cannot render {kind_of(x)}")
    return _text(sep, "Join").join(parts)


def length(seq):
    return len(_elements(seq, "Length"))


def count(seq, item=None):
    """Number of elements, or of elements equal to ``item``."""
    items = _elements(seq, "Count")
    if item is None:
        return len(items)
    return sum(1 for x in items if _same(x, item))


def sequence_equal(a, b):
    return _same(_elements(a, "SequenceEqual"), _elements(b, "SequenceEqual"))


def insert(seq, pos, item):
    items = _elements(seq, "Insert")
    _index(items, pos, "Insert", inclusive_end=True)
    if type(seq) is str:
        return seq[:pos] + _text(item, "Insert") + seq[pos:]
    return items[:pos] + (item,) + items[pos:]


def char_to_int(c):
    return ord(_need(c, Char, "CharToInt").ch)


def int_to_char(n):
    _need(n, int, "IntToChar")
    if not 0 <= n <= 0x10FFFF:
        raise RuntimeTypeError(f"IntToChar: {n} is not a code point")
    return Char(chr(n))


def is_letter(c):
    return _need(c, Char, "IsLetter").ch.isalpha()


def to_array(seq):
    return _elements(seq, "ToArray")


def contains(seq, item):
    if type(seq) is str:
        return _text(item, "Contains") in seq
    return any(_same(x, item) for x in _elements(seq, "Contains"))


def kind(x):
    """Kind name of a value: Int, Bool, Char, Str or Array."""
    return kind_of(x)


def _fn(name, impl, lo, hi=None, default=None, doc=None):
    hi = lo if hi is None else hi
    return LibraryFunction(name, impl, lo, hi, lo if default is None else default,
                           doc if doc is not None else (impl.__doc__ or "").strip())


STANDARD = LibraryRegistry([
    _fn("Split", split, 2),
    _fn("IndexOf", index_of, 2, 3),
    _fn("LastIndexOf", last_index_of, 2),
    _fn("Remove", remove, 2, 3, default=3),
    _fn("Substring", substring, 2, 3),
    _fn("Sort", sort, 1, doc="New sequence with the elements in ascending order."),
    _fn("Reverse", reverse, 1, doc="New sequence with the elements reversed."),
    _fn("ToCharArray", to_char_array, 1, doc="Array of the string's characters."),
    _fn("ToUpper", to_upper, 1, doc="Upper-case string or character."),
    _fn("Join", join, 2, doc="Concatenate elements with a separator."),
    _fn("Length", length, 1, doc="Number of elements."),
    _fn("Count", count, 1, 2),
    _fn("SequenceEqual", sequence_equal, 2, doc="Element-wise equality of two sequences."),
    _fn("Insert", insert, 3, doc="New sequence with an element inserted at a position."),
    _fn("CharToInt", char_to_int, 1, doc="Code point of a character."),
    _fn("IntToChar", int_to_char, 1, doc="Character with the given code point."),
    _fn("IsLetter", is_letter, 1, doc="Whether a character is alphabetic."),
    _fn("ToArray", to_array, 1, doc="Array of a sequence's elements."),
    _fn("Contains", contains, 2, doc="Whether a sequence contains an element."),
    _fn("KindOf", kind, 1),
])
