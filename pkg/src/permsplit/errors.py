"""Exception types shared across the package."""


class PreconditionError(ValueError):
    """An operation was called on inputs that violate its stated precondition."""


class VerificationError(RuntimeError):
    """A construction failed the runtime check of a guarantee it must satisfy."""


class InvalidColorerError(VerificationError):
    """A colorer passed as an argument produced a certificate that does not validate."""
