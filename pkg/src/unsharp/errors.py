"""Exception hierarchy shared by every module of the package."""


class PosetError(Exception):
    """Base class for all errors raised by :mod:`unsharp`."""


class CycleError(PosetError):
    pass


class NotBounded(PosetError):
    pass


class DuplicateLabel(PosetError):
    pass


class UnknownLabel(PosetError):
    pass


class EmptyInput(PosetError):
    pass


class BoundExceeded(PosetError):
    pass


class MalformedTable(PosetError):
    pass


class UniverseTooLarge(PosetError):
    pass


class UniverseIncomplete(PosetError):
    def __init__(self, missing):
        self.missing = tuple(missing)
        super().__init__(f"universe is missing {len(self.missing)} set(s)")


class ParseError(PosetError):
    pass
