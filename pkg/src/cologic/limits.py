"""Global size guard for the exhaustive search routines.

Everything in this package enumerates; the guard keeps a stray large input
from turning a desk check into an overnight job.  The bound applies to atom
counts (equivalently, vertex counts of the underlying graphs).
"""

import os

ENV_VAR = "COLOGIC_MAX_ATOMS"
DEFAULT_MAX_ATOMS = 12


class SizeGuardError(ValueError):
    """An operation would exceed the configured size guard."""


def max_atoms() -> int:
    """Largest atom count the exhaustive operations accept.

    Defaults to 12 and can be overridden through the COLOGIC_MAX_ATOMS
    environment variable.  Note that the contact-axiom sweep is cubic in the
    number of algebra elements, i.e. O(8**atoms); counts above 8 get slow.
    """
    raw = os.environ.get(ENV_VAR)
    if raw is None:
        return DEFAULT_MAX_ATOMS
    try:
        value = int(raw)
    except ValueError:
        raise SizeGuardError(f"{ENV_VAR} must be an integer, got {raw!r}") from None
    if value < 1:
        raise SizeGuardError(f"{ENV_VAR} must be positive, got {value}")
    return value


def check_atoms(count: int, operation: str) -> None:
    """Raise SizeGuardError when `count` exceeds the configured guard."""
    limit = max_atoms()
    if count > limit:
        raise SizeGuardError(
            f"{operation} refused: {count} atoms exceeds the size guard of "
            f"{limit} (set {ENV_VAR} to raise it)"
        )
