"""Exception types shared across the toolkit."""


class DialignError(Exception):
    """Base class for all toolkit errors."""


class UnknownSymbol(DialignError):
    def __init__(self, position, char):
        self.position = position
        self.char = char
        super().__init__(f"unknown symbol {char!r} at position {position}")


class EmptyInput(DialignError):
    pass


class IncompatibleTables(DialignError):
    pass


class ZeroLength(DialignError):
    pass


class CapExceeded(DialignError):
    pass


class EmptyCorpus(DialignError):
    pass


class RoleMismatch(DialignError):
    pass


class ParseError(DialignError):
    def __init__(self, line, reason):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")


class DuplicateRecord(DialignError):
    pass


class UnmappedLocation(DialignError):
    pass


class DegenerateContrast(DialignError):
    pass


class MissingCoordinates(DialignError):
    pass
