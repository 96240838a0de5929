"""Exception types raised across the package."""


class TopocountError(Exception):
    pass


class CoverError(TopocountError, ValueError):
    """A base whose union misses some point cannot generate a topology on all points."""


class InvalidRelation(TopocountError, ValueError):
    pass


class InvalidTopology(TopocountError, ValueError):
    pass


class DimensionMismatch(TopocountError, ValueError):
    pass


class TooLarge(TopocountError, ValueError):
    """Requested size is beyond what the chosen engine can enumerate."""


class OutOfRange(TopocountError, ValueError):
    pass


class MissingEntry(TopocountError, KeyError):
    pass


class NotCoprime(TopocountError, ValueError):
    pass


class CountOverflow(TopocountError, OverflowError):
    pass


class CacheMismatch(TopocountError):
    """A recomputed value disagrees with the one already stored in the cache."""
