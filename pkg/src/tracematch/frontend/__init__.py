"""Parsing, three-address normalization and location assignment."""

from __future__ import annotations

from typing import Optional

from ..lang.ast import Program
from .normalize import is_three_address, normalize_three_address
from .parser import parse_program
from .printer import program_text
from .source import SourceUnit, split_header


def parse(unit: SourceUnit) -> Program:
    """Parse a source unit (header pragmas stripped) into a located AST."""
    _, body, offset = split_header(unit.text)
    return parse_program(body, name=unit.name, role=unit.role, entry=unit.pragma("entry"),
                         line_offset=offset, source=unit.source)


def load_program(text: str, role: str = "implementation", name: Optional[str] = None,
                 source: str = "") -> Program:
    """Parse and normalize in one step."""
    return normalize_three_address(parse(SourceUnit.from_text(text, role, name, source)))


__all__ = [
    "SourceUnit", "is_three_address", "load_program", "normalize_three_address",
    "parse", "parse_program", "program_text", "split_header",
]
