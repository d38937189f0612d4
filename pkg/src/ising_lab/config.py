"""Enumeration caps.

Every exhaustive routine checks its input size against a cap and raises
:class:`~ising_lab.errors.CapacityError` instead of truncating.  Setting the
environment variable ``ISING_LAB_CAP_OVERRIDE`` to an integer replaces every
default cap with that value.
"""
import os

from .errors import CapacityError

ISING_VERTEX_CAP = 24
CYCLE_SPACE_CAP = 30
TUTTE_EDGE_CAP = 24
HOM_VERTEX_CAP = 12
BLOCK_POLY_EDGE_CAP = 20
CERTIFY_VERTEX_CAP = 10
GK_EDGE_CAP = 14
CATALOG_SIZE_CAP = 16

CAP_ENV = "ISING_LAB_CAP_OVERRIDE"


def cap(default):
    raw = os.environ.get(CAP_ENV)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{CAP_ENV} must be an integer, got {raw!r}") from None
    if value <= 0:
        raise ValueError(f"{CAP_ENV} must be positive")
    return value


def check_cap(size, default, what, hint=""):
    limit = cap(default)
    if size > limit:
        msg = f"{what} = {size} exceeds cap {limit}"
        if hint:
            msg += f"; {hint}"
        raise CapacityError(msg)
    return limit
