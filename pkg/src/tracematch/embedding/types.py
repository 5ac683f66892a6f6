from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Mapping, Optional, Tuple

from ..lang.ast import Location

# A witness maps each mapped specification location to a non-empty set of
# implementation locations; a singleton set is the ordinary one-to-one case.
MappingFunction = Mapping[Location, FrozenSet[Location]]


class Criterion(str, enum.Enum):
    PARTIAL = "partial"
    FULL = "full"

    @classmethod
    def parse(cls, text: str) -> "Criterion":
        try:
            return cls(text.strip().lower())
        except ValueError:
            raise ValueError(f"matching criterion must be 'partial' or 'full', got {text!r}") from None

    def __str__(self) -> str:
        return self.value


def one_to_one(pairs: Mapping[Location, Location]) -> Dict[Location, FrozenSet[Location]]:
    return {a: frozenset((b,)) for a, b in pairs.items()}


def mapping_text(pi: MappingFunction) -> Tuple[Tuple[str, str], ...]:
    """Stable, human-readable form of a witness: ``(spec label, impl labels)``."""
    rows = []
    for spec_loc in sorted(pi):
        image = sorted(pi[spec_loc])
        rows.append((str(spec_loc), "+".join(str(l) for l in image)))
    return tuple(rows)


@dataclass(frozen=True)
class EmbeddingResult:
    found: bool
    witness: Optional[Dict[Location, FrozenSet[Location]]] = None
    explored: int = 0
    # spec location -> impl candidates that individually embed on every input
    candidates: Dict[Location, Tuple[FrozenSet[Location], ...]] = field(default_factory=dict)
    note: str = ""
