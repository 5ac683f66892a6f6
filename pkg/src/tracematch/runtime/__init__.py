"""Execution of L programs and the library-function registry."""

from .interp import (
    DEFAULT_MAX_DEPTH, DEFAULT_STEP_BUDGET, Execution, Executor, eval_equality_fn,
    execute_implementation, execute_specification,
)
from .library import STANDARD, LibraryFunction, LibraryRegistry

__all__ = [
    "DEFAULT_MAX_DEPTH", "DEFAULT_STEP_BUDGET", "Execution", "Executor", "LibraryFunction",
    "LibraryRegistry", "STANDARD", "eval_equality_fn", "execute_implementation",
    "execute_specification",
]
