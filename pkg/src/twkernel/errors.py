"""Exception types shared across the toolkit."""


class TwkernelError(Exception):
    """Base class for every error raised by this package."""


class InputError(TwkernelError, ValueError):
    """An argument violates the documented precondition of an operation."""


class SizeLimitError(TwkernelError, ValueError):
    """An exact oracle was asked to work beyond its configured size cap."""

    def __init__(self, what, size, cap):
        super().__init__(f"{what}: size {size} exceeds cap {cap}")
        self.size = size
        self.cap = cap


class DecompositionError(TwkernelError, ValueError):
    """A tree decomposition violates one of its axioms.

    ``axiom`` is one of ``"tree"``, ``"coverage"``, ``"edge"`` or
    ``"subtree"``; ``witness`` is the offending object (vertex, edge, ...).
    """

    def __init__(self, axiom, witness, message):
        super().__init__(f"{axiom} violation: {message}")
        self.axiom = axiom
        self.witness = witness


class ParseError(TwkernelError, ValueError):
    def __init__(self, message, line=None):
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)
        self.line = line


class ParameterError(TwkernelError, ValueError):
    """Generator parameters fail an inequality the construction relies on."""


class SeparatorOverflowError(TwkernelError, RuntimeError):
    """Separator enumeration produced more sets than the configured cap."""
