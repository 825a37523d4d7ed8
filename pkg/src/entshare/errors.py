"""Exception types raised across the package."""


class EntShareError(Exception):
    """Base class for all errors raised by this package."""


class PauliFormatError(EntShareError, ValueError):
    """Text does not describe a Pauli operator."""


class DimensionMismatch(EntShareError, ValueError):
    """Operands act on different numbers of qubits or subsystems."""


class CapacityError(EntShareError, ValueError):
    """Requested object exceeds the dense simulation limit."""


class UnknownLabelError(EntShareError, KeyError):
    """Subsystem label or share index not present in a layout."""

    # KeyError wraps its message in repr quotes
    __str__ = Exception.__str__


class UnknownCodeError(EntShareError, KeyError):
    """No built-in code registered under the given name."""

    __str__ = Exception.__str__


class CodeValidationError(EntShareError, ValueError):
    """Code definition violates the stabilizer formalism."""


class AuthorizationError(EntShareError):
    """Recovery attempted from a subset that cannot reconstruct the state."""


class ShareCountError(EntShareError, ValueError):
    """Fewer classical shares supplied than the threshold requires."""


class ShareIntegrityError(EntShareError):
    """Classical shares are mutually inconsistent."""


class NumericalError(EntShareError):
    """A matrix failed a numerical sanity check beyond tolerance."""
