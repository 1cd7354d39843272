"""Exception hierarchy for raylam."""


class RaylamError(Exception):
    """Base class for all errors raised by this package."""


class NotInjective(RaylamError):
    """Two angles of a portrait collide under the angle map."""


class OrderNotPreserved(RaylamError):
    """The angle map reverses or scrambles the cyclic order of a portrait."""


class Straddles(RaylamError):
    """An angle set meets more than one sector of a portrait."""


class NotFound(RaylamError):
    """A searched-for time or index does not occur in the supplied data."""


class InvalidOrbit(RaylamError):
    """Consecutive portraits of an orbit prefix are not images of each other."""


class PrefixTooShort(RaylamError):
    """An orbit prefix ends before a required narrow time is reached."""


class ConditionViolation(RaylamError):
    """A critical portrait fails one of its three validity conditions."""

    def __init__(self, condition, message=""):
        self.condition = condition
        super().__init__(f"condition ({condition}) violated: {message}" if message
                         else f"condition ({condition}) violated")


class InternalInvariant(RaylamError):
    """An internal consistency check failed; indicates a bug."""


class InvariantViolation(RaylamError):
    """A constructed lamination breaks unlinkedness or forward invariance."""

    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class Degenerate(RaylamError):
    """The characteristic arc is a single angle or the whole circle."""


class FullCircle(Degenerate):
    """Operation needs a proper arc but received the whole circle."""


class PrecedenceFails(RaylamError):
    """The characteristic arcs of two parameters are not nested."""
