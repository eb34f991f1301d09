"""Exception hierarchy.

Every error raised on purpose derives from :class:`SplithadError`, and most
also derive from the closest builtin so callers can catch ``ValueError``.
"""


class SplithadError(Exception):
    pass


# finite fields
class NonPrimeCharacteristic(SplithadError, ValueError):
    pass


class DegreeZero(SplithadError, ValueError):
    pass


class DivisionByZero(SplithadError, ZeroDivisionError):
    pass


class EvenCharacteristic(SplithadError, ValueError):
    pass


# matrices and shapes
class DimensionMismatch(SplithadError, ValueError):
    pass


class ShapeMismatch(DimensionMismatch):
    pass


class IndexOutOfRange(SplithadError, IndexError):
    pass


class BudgetExceeded(SplithadError, RuntimeError):
    pass


# constructions
class BadResidueClass(SplithadError, ValueError):
    pass


class NotPrimePower(SplithadError, ValueError):
    pass


class NotHadamard(SplithadError, ValueError):
    pass


class InvalidOA(SplithadError, ValueError):
    pass


class InvalidCore(SplithadError, ValueError):
    pass


# decomposition / regularity
class NotMultiSplittable(SplithadError, ValueError):
    pass


class ClassSizeViolation(NotMultiSplittable):
    pass


class RegularityFailure(NotMultiSplittable):
    pass


class EmbeddingFailure(SplithadError, RuntimeError):
    pass


class NotRegular(SplithadError, ValueError):
    pass


class BadParameters(SplithadError, ValueError):
    pass


class BadSelectionSize(SplithadError, ValueError):
    pass


# files
class ParseError(SplithadError, ValueError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class KindMismatch(SplithadError, ValueError):
    pass
