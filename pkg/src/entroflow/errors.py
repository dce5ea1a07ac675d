"""Exception hierarchy shared by every entroflow module."""


class EntroflowError(Exception):
    """Base class for all errors raised by entroflow."""


class ShiftUnsupported(EntroflowError):
    """Operation is not available for shift modules."""


class MismatchedParent(EntroflowError):
    """Submodules or morphisms live in different modules."""


class MismatchedRing(EntroflowError):
    """Objects are defined over different base rings."""


class InvalidMorphism(EntroflowError):
    """A matrix does not respect the relations of its domain."""


class TooLarge(EntroflowError):
    """An enumeration would exceed a configured cap."""


class SupportOverflow(EntroflowError):
    """A shift-module computation left the configured support window."""


class NotAFlowMorphism(EntroflowError):
    pass


class NotMono(EntroflowError):
    pass


class NotSubadditive(EntroflowError):
    """A sequence handed to the limit detector violates a_{n+m} <= a_n + a_m."""


class NoStabilization(EntroflowError):
    """No affine tail was found within the supplied values."""


class Undetermined(EntroflowError):
    """A window-cofinal supremum did not stabilize."""


class InfiniteNorm(EntroflowError):
    pass


class EmptyFamily(EntroflowError):
    pass


class UnsupportedRingMap(EntroflowError):
    pass


class PreradicalSyntaxError(EntroflowError):
    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnknownName(EntroflowError):
    pass


class BadPrime(EntroflowError):
    pass
