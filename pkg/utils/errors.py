"""
Exception types raised by fairconf
"""


class FairConfError(ValueError):
    """Base class for every domain error"""


class StructuralError(FairConfError):
    """Shapes or indices that cannot describe an instance, schedule or partial schedule"""


class ValidationError(FairConfError):
    """
    An instance failed validation.

    Args:
        violations: The full violation report (list of Violation)
    """

    def __init__(self, violations):
        self.violations = list(violations)
        summary = "; ".join(v.message for v in self.violations[:5])
        more = len(self.violations) - 5
        if more > 0:
            summary += f"; ... {more} more"
        super().__init__(f"instance failed validation: {summary}")


class SizeLimitError(FairConfError):
    """Exhaustive enumeration would exceed the configured cap"""


class InstanceFormatError(FairConfError):
    """
    A JSON document could not be read as an instance or schedule.

    Args:
        message: What was wrong
        line: 1-based line of the parse failure, when known
        column: 1-based column of the parse failure, when known
    """

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(f"{message}{where}")
