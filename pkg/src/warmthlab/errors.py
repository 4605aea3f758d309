"""Exception hierarchy shared by all warmthlab modules."""


class WarmthLabError(Exception):
    """Base class for every error raised by the package."""


class InvalidGraph(WarmthLabError):
    pass


class InvalidParameter(WarmthLabError):
    pass


class TooLarge(WarmthLabError):
    """An input exceeds the size guard of an exact routine."""


class TooLargeForExact(TooLarge):
    pass


class TooLargeForExhaustive(TooLarge):
    pass


class EdgeNotFound(WarmthLabError):
    pass


class NoEdges(WarmthLabError):
    pass


class NotCertifiable(WarmthLabError):
    pass


class RegimeViolation(WarmthLabError):
    pass


class GenerationFailed(WarmthLabError):
    pass


class InternalAssertion(WarmthLabError):
    """A proven inequality was violated; indicates a bug, not bad input."""


class ParseError(WarmthLabError):
    def __init__(self, message: str, offset: int = 0):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset
