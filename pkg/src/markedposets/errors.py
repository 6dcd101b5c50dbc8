"""Exception hierarchy shared by all modules."""


class PosetError(ValueError):
    """Base class for invalid poset or marked-poset input."""


class CycleDetected(PosetError):
    pass


class DuplicateElement(PosetError):
    pass


class UnknownElementInCover(PosetError):
    pass


class UnknownElement(PosetError, KeyError):
    def __str__(self) -> str:
        return ValueError.__str__(self)


class ExtremalNotMarked(PosetError):
    pass


class MarkingDomainMismatch(PosetError):
    pass


class IndexMismatch(ValueError):
    """A vector is indexed differently from the system or poset it is used with."""


class NonIntegralMarking(ValueError):
    pass


class EmptyPolytope(ValueError):
    pass


class InvalidWeight(ValueError):
    pass


class CharacterizationMismatch(AssertionError):
    """Two descriptions of the same point set disagree."""


class ParseError(ValueError):
    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason
