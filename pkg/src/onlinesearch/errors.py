"""Exception hierarchy shared by every module in the package."""


class OnlineSearchError(ValueError):
    """Base class for all errors raised by :mod:`onlinesearch`."""


class InvalidBounds(OnlineSearchError):
    pass


class EmptySequence(OnlineSearchError):
    pass


class PriceOutOfRange(OnlineSearchError):
    """A price falls outside ``[m, M]``. ``index`` is 1-based, like days."""

    def __init__(self, index: int, price: float, m: float, M: float):
        self.index = index
        self.price = price
        super().__init__(f"price {price!r} on day {index} is outside [{m!r}, {M!r}]")


class InconsistentOutcomes(OnlineSearchError):
    """The online profit exceeds the offline optimum, which means a harness bug."""


class NonpositiveThreshold(OnlineSearchError):
    pass


class BitBudgetTooLarge(OnlineSearchError):
    pass


class TapeExhausted(OnlineSearchError):
    pass


class MalformedTape(OnlineSearchError):
    pass


class DayOutOfRange(OnlineSearchError):
    pass


class NonDyadicRatio(OnlineSearchError):
    pass


class DegenerateBounds(OnlineSearchError):
    pass


class NoWitness(OnlineSearchError):
    """Every staircase member is solved optimally by some policy."""


class BudgetTooSmall(OnlineSearchError):
    pass


class CrossoverUndefined(OnlineSearchError):
    pass


class SequenceFileError(OnlineSearchError):
    """A sequence file could not be parsed."""
