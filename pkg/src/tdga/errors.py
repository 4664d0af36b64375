"""Exception types shared across the package."""


class TdgaError(Exception):
    """Base class for all domain errors raised by this package."""


class BraidParseError(TdgaError, ValueError):
    """Malformed braid word text."""


class RingMismatchError(TdgaError, ValueError):
    """Operands built over different coefficient rings."""


class SubstitutionError(TdgaError, ValueError):
    """Invalid variable or generator substitution."""


class DgaError(TdgaError, ValueError):
    """Invalid DGA operation (bad specialization, tame move, destabilization...)."""


class InternalVerificationError(TdgaError, RuntimeError):
    """A self-check that should hold for every valid input failed.

    Raised e.g. when a computed matrix inverse does not multiply to the
    identity; indicates a bug, not a bad input.
    """
