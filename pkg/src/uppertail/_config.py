"""Error types and size guards shared by every module."""

import os

ENV_GUARD = "UPPERTAIL_SIZE_GUARD"

# Vertex-count limits for exact (exponential-time) routines.
DEFAULT_GUARDS = {
    "vertex_cover": 24,
    "automorphism": 10,
    "canonical": 12,
    "indpoly": 40,
    "family": 20,
    "host": 200,
}


class UpperTailError(ValueError):
    """Base class for domain errors raised by this package."""


class SizeGuardError(UpperTailError):
    """An exact routine was asked to run beyond its configured size guard."""


class DomainError(UpperTailError):
    """Input lies outside the regime where a quantity is defined."""


def size_guard(name, override=None):
    """Resolve the guard `name`: explicit override, then environment, then default."""
    if override is not None:
        return int(override)
    env = os.environ.get(ENV_GUARD)
    if env:
        return int(env)
    return DEFAULT_GUARDS[name]


def check_guard(name, size, override=None):
    limit = size_guard(name, override)
    if size > limit:
        raise SizeGuardError(
            f"{name}: size {size} exceeds guard {limit} "
            f"(pass a larger guard or set {ENV_GUARD})"
        )


def sig12(x):
    """Round a float to 12 significant digits (None passes through)."""
    if x is None:
        return None
    return float(f"{float(x):.12g}")


def fmt12(x):
    return "" if x is None else f"{float(x):.12g}"
