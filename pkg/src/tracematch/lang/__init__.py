"""Values, located AST, traces and equality relations shared by every stage."""

from .ast import Location, Program
from .equality import DEFAULT, ComparisonFunction, Relation, values_equal
from .trace import Trace, TraceEntry
from .values import DONT_CARE, LOOP, Char, LibRecord, render, values_equal_default

__all__ = [
    "Char", "ComparisonFunction", "DEFAULT", "DONT_CARE", "LOOP", "LibRecord",
    "Location", "Program", "Relation", "Trace", "TraceEntry", "render",
    "values_equal", "values_equal_default",
]
