"""Source units: program text plus its pragma header.

A file may open with a run of ``#key value`` lines::

    #name CS
    #criterion partial
    #feedback Count characters once, in a preprocessing pass.
    #input s=aba,t=baa
    #equality CompareLetterString=cde.l

Program line 1 is the first line after that run, so the header never
shifts the line numbers used in location labels.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Tuple

ROLES = ("implementation", "specification")
ROLE_ALIASES = {"impl": "implementation", "implementation": "implementation",
                "spec": "specification", "specification": "specification"}


def split_header(text: str) -> Tuple[List[Tuple[str, str]], str, int]:
    """Return ``(pragmas, body, header_line_count)``."""
    lines = text.split("\n")
    pragmas: List[Tuple[str, str]] = []
    n = 0
    for line in lines:
        stripped = line.strip()
        if not stripped.startswith("#"):
            break
        key, _, value = stripped[1:].partition(" ")
        pragmas.append((key.strip(), value.strip()))
        n += 1
    return pragmas, "\n".join(lines[n:]), n


@dataclass(frozen=True)
class SourceUnit:
    role: str
    text: str
    name: str = "program"
    source: str = ""
    pragmas: Tuple[Tuple[str, str], ...] = field(default=())

    def __post_init__(self) -> None:
        if self.role not in ROLES:
            object.__setattr__(self, "role", ROLE_ALIASES.get(self.role, self.role))
        if self.role not in ROLES:
            raise ValueError(f"unknown role {self.role!r}")

    @classmethod
    def from_text(cls, text: str, role: str, name: Optional[str] = None,
                  source: str = "") -> "SourceUnit":
        pragmas, _, _ = split_header(text)
        named = [v for k, v in pragmas if k == "name"]
        return cls(role, text, name or (named[-1] if named else "program"), source, tuple(pragmas))

    def pragma(self, key: str) -> Optional[str]:
        vals = self.pragma_all(key)
        return vals[-1] if vals else None

    def pragma_all(self, key: str) -> List[str]:
        return [v for k, v in self.pragmas if k == key]
