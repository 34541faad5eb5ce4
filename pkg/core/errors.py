"""
Exception hierarchy for the semifield toolkit.
"""


class SemifieldError(Exception):
    """Base class for every error raised by the core modules."""


class NonPrimeError(SemifieldError, ValueError):
    pass


class TooLargeError(SemifieldError, ValueError):
    pass


class NoPrimitivePolynomialError(SemifieldError):
    pass


class DivisionByZeroError(SemifieldError, ZeroDivisionError):
    pass


class NotABasisError(SemifieldError, ValueError):
    pass


class NoSolutionError(SemifieldError):
    """Inconsistent linear system; `deficiency` is n - rank of the coefficient matrix."""

    def __init__(self, message: str, deficiency: int = 0):
        super().__init__(message)
        self.deficiency = deficiency


class SingularMapError(SemifieldError, ValueError):
    pass


class NotASemifieldError(SemifieldError):
    pass


class NotBilinearError(SemifieldError, ValueError):
    pass


class SizeMismatchError(SemifieldError, ValueError):
    pass


class NotASubfieldError(SemifieldError, ValueError):
    pass


class BudgetInvalidError(SemifieldError, ValueError):
    pass


class SearchSpaceTooLargeError(SemifieldError):
    pass


class DegenerateUError(SemifieldError):
    pass


class DegenerateWError(SemifieldError):
    pass


class TooManySpreadElementsError(SemifieldError):
    pass


class NoValidCError(SemifieldError):
    pass


class InvalidCError(SemifieldError, ValueError):
    pass


class ParseError(SemifieldError):
    """Malformed input file; `line` is 1-based, 0 when the whole file is at fault."""

    def __init__(self, message: str, line: int = 0):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line
