"""Exception types shared across the package."""


class ComputadError(Exception):
    """Base class for all errors raised by this package."""


class InvalidGraph(ComputadError):
    pass


class NotConnected(ComputadError):
    pass


class NotMaximalWeakTree(ComputadError):
    pass


class SizeLimitExceeded(ComputadError):
    pass


class NotComposable(ComputadError):
    pass


class InvalidTable(ComputadError):
    pass


class UnknownGenerator(ComputadError):
    pass


class InvalidComputad(ComputadError):
    pass


class NotSubcomputad(ComputadError):
    pass


class InfiniteFreeCategory(ComputadError):
    pass


class ObjectNotFound(ComputadError):
    pass


class NotStrictlyIncreasing(ComputadError):
    pass


class NotMonotoneError(ComputadError):
    pass


class InvalidTwoCellWord(ComputadError):
    pass


class MultipleZeroCells(ComputadError):
    pass


class NotFcsTriple(ComputadError):
    pass


class ChainComplexError(ComputadError):
    pass


class ParseError(ComputadError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.message = message


class UnresolvedReference(ParseError):
    def __init__(self, line: int, name: str, what: str = "reference"):
        super().__init__(line, f"unresolved {what} {name!r}")
        self.name = name
