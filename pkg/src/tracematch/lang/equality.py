from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Optional

from .ast import Location
from .values import DONT_CARE, LibRecord, data_view, values_equal_default


@dataclass(frozen=True)
class Relation:
    """A named equality relation over values."""

    name: str
    test: Callable[[Any, Any], bool] = field(compare=False)

    def __call__(self, x: Any, y: Any) -> bool:
        return self.test(x, y)


DEFAULT = Relation("default", values_equal_default)


def lift_custom(name: str, fn: Callable[[Any, Any], bool]) -> Relation:
    """Wrap a user equality function so it sees data, not call records,
    when one side is a record and the other is not. ``?`` still matches
    anything without consulting the function."""

    def test(x: Any, y: Any) -> bool:
        if x is DONT_CARE or y is DONT_CARE:
            return True
        if (type(x) is LibRecord) != (type(y) is LibRecord):
            x, y = data_view(x), data_view(y)
        return fn(x, y)

    return Relation(name, test)


@dataclass
class ComparisonFunction:
    """Maps specification locations to equality relations.

    Keyed by static statement id, so every calling context of a statement
    shares its relation. Unlisted locations use :data:`DEFAULT`.
    """

    relations: Dict[int, Relation] = field(default_factory=dict)

    def __call__(self, loc: Location) -> Relation:
        return self.relations.get(loc.id, DEFAULT)

    def name_at(self, loc: Location) -> str:
        return self(loc).name

    def with_relation(self, loc: Location, rel: Relation) -> "ComparisonFunction":
        rels = dict(self.relations)
        rels[loc.id] = rel
        return ComparisonFunction(rels)


IDENTITY = ComparisonFunction()


def values_equal(delta: Optional[ComparisonFunction], loc: Location, x: Any, y: Any) -> bool:
    rel = DEFAULT if delta is None else delta(loc)
    return rel(x, y)
