from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterable, Iterator, Optional, Tuple

from .ast import Location
from .values import LOOP, render


@dataclass(frozen=True)
class TraceEntry:
    """One ``(location, value)`` pair.

    ``optional`` marks entries produced by ``cover`` statements, whose
    location a witness may leave unmapped. ``bound`` carries the iteration
    budget of a ``cover(v)`` occurrence.
    """

    loc: Location
    value: Any
    optional: bool = False
    bound: Optional[int] = None

    @property
    def is_marker(self) -> bool:
        return self.value is LOOP

    def render(self) -> str:
        text = render(self.value)
        if self.bound is not None:
            text += f" [cover<={self.bound}]"
        elif self.optional:
            text += " [cover]"
        return f"{self.loc}\t{text}"


@dataclass(frozen=True)
class Trace:
    entries: Tuple[TraceEntry, ...] = ()

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[TraceEntry]:
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def restrict(self, locs: Iterable[Location]) -> "Trace":
        keep = frozenset(locs)
        return Trace(tuple(e for e in self.entries if e.loc in keep))

    def without_markers(self) -> "Trace":
        return Trace(tuple(e for e in self.entries if e.value is not LOOP))

    def locations(self) -> list:
        """Distinct non-marker locations in first-occurrence order."""
        seen = {}
        for e in self.entries:
            if e.value is not LOOP and e.loc not in seen:
                seen[e.loc] = None
        return list(seen)

    def values(self) -> list:
        return [e.value for e in self.entries]

    def pairs(self) -> list:
        return [(e.loc, e.value) for e in self.entries]

    def dump(self, markers: bool = False) -> str:
        """Canonical text form: one ``label<TAB>value`` line per entry."""
        lines = [e.render() for e in self.entries if markers or e.value is not LOOP]
        return "".join(line + "\n" for line in lines)
