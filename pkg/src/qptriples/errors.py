"""Exception hierarchy shared by every module."""


class RootsError(Exception):
    """Base class for all library errors."""


class InvalidType(RootsError, ValueError):
    pass


class InvalidNode(RootsError, ValueError):
    pass


class NotASubsystem(RootsError):
    pass


class EmptyUniverse(RootsError, ValueError):
    pass


class NotInSpan(RootsError):
    pass


class NotCoplanar(RootsError):
    pass


class MalformedSubsystem(RootsError):
    pass


class CannotExtend(RootsError):
    pass


class Mismatch(RootsError):
    """An oracle or cross-check disagreed; ``witness`` holds the offending input."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotQuasiparabolic(RootsError):
    pass


class ContainsTheta(RootsError, ValueError):
    pass


class NotATriple(RootsError, ValueError):
    pass


class LabellingFailure(RootsError):
    pass


class CrossCheckMismatch(Mismatch):
    pass


class BijectionFailure(RootsError):
    pass
