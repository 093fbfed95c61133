"""Exception types shared across the package.

The CLI maps these onto its exit-code contract: input/condition problems
(ValueError family) exit 1, an UNKNOWN Galois verdict exits 2, and
InternalCheckError (a self-verification that must never fail) exits 3.
"""


class FieldMismatchError(ValueError):
    """Operands belong to different field handles."""


class NoRootOfUnityError(ValueError):
    """The field has no primitive n-th root of unity."""


class FieldTooLargeError(ValueError):
    """An exhaustive scan was requested over a field above the 2**20 bound."""


class FieldTooSmallError(ValueError):
    """Too few admissible base points for the deck search; raise p."""


class InternalCheckError(RuntimeError):
    """A self-verification failed; indicates a bug, never bad input."""
