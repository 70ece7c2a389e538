"""Exception types shared across the package."""

import os

DEFAULT_ENUM_CAP = 2**20


class ValidationError(ValueError):
    """Malformed instance or input file.

    ``line`` carries the 1-based line number when the error came from a parser.
    """

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class RefusedScale(RuntimeError):
    """An exhaustive computation would exceed the configured enumeration cap."""


class DegenerateBasis(ValueError):
    """Lattice basis rows are linearly dependent."""


def enum_cap():
    """Enumeration cap, overridable through ``KERNELCUT_ENUM_CAP``."""
    raw = os.environ.get("KERNELCUT_ENUM_CAP")
    if raw is None:
        return DEFAULT_ENUM_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise ValidationError(f"KERNELCUT_ENUM_CAP must be an integer, got {raw!r}")
    if cap < 1:
        raise ValidationError("KERNELCUT_ENUM_CAP must be positive")
    return cap


def check_cap(count, what):
    cap = enum_cap()
    if count > cap:
        raise RefusedScale(f"{what}: {count} candidates exceed the cap of {cap}")
