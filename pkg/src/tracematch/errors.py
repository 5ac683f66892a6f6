from __future__ import annotations


class TraceMatchError(Exception):
    """Base class for every error raised by this package."""


class LangSyntaxError(TraceMatchError):
    def __init__(self, message: str, line: int = 0, col: int = 0, source: str = "") -> None:
        self.line, self.col, self.source = line, col, source
        where = f"{source}:" if source else ""
        super().__init__(f"{where}{line}:{col}: {message}")


class RoleViolation(TraceMatchError):
    """A specification-only construct appeared in an implementation."""

    def __init__(self, message: str, line: int = 0, col: int = 0, source: str = "") -> None:
        self.line, self.col = line, col
        where = f"{source}:" if source else ""
        super().__init__(f"{where}{line}:{col}: {message}")


class RuntimeFault(TraceMatchError):
    """Raised while executing a program."""

    program: str = ""


class StepBudgetExceeded(RuntimeFault):
    pass


class RuntimeTypeError(RuntimeFault):
    pass


class IndexOutOfBounds(RuntimeFault):
    pass


class UndefinedName(RuntimeFault):
    pass


class CustomEqualityError(TraceMatchError):
    pass


class EnumerationBudgetExceeded(TraceMatchError):
    def __init__(self, explored: int, budget: int) -> None:
        self.explored, self.budget = explored, budget
        super().__init__(f"explored {explored} candidate mappings, budget is {budget}")


class ExecutionError(TraceMatchError):
    """A runtime fault tagged with the program that caused it."""

    def __init__(self, which: str, cause: Exception) -> None:
        self.which, self.cause = which, cause
        super().__init__(f"{which} failed: {type(cause).__name__}: {cause}")


class BundleError(TraceMatchError):
    pass


class ArithmeticFault(RuntimeFault):
    """Division or remainder by zero."""


class CallDepthExceeded(RuntimeFault):
    pass
