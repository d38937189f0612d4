"""Zero-free radii and the disk map between the b- and x-planes.

D(r) = {b : |(b-1)/(b+1)| <= r} is the image of the x-disk |x| <= r under
b = (1+x)/(1-x); its real diameter is [(1-r)/(1+r), (1+r)/(1-r)].
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

SCAN_STEP = 1e-6
BOUNDARY_TOL = 1e-9


def _check_delta(delta: int, minimum: int = 3) -> None:
    if int(delta) != delta or delta < minimum:
        raise DomainError(f"Delta must be an integer >= {minimum}, got {delta}")


def n_delta(delta: int) -> float:
    """(1 - 1/sqrt(2(Delta-1)))^2 / (Delta-1)."""
    _check_delta(delta)
    return (1 - 1 / math.sqrt(2 * (delta - 1))) ** 2 / (delta - 1)


def eps_delta(delta: int) -> float:
    """tan(pi / (4(Delta-1))), the earlier disk radius kept for comparison."""
    _check_delta(delta)
    return math.tan(math.pi / (4 * (delta - 1)))


def hardness_radius(delta: int) -> float:
    _check_delta(delta)
    return 1 / math.sqrt(delta - 1)


def b_to_x(b: complex) -> complex:
    b = complex(b)
    if b == -1:
        raise DomainError("b = -1 maps to infinity")
    return (b - 1) / (b + 1)


def x_to_b(x: complex) -> complex:
    x = complex(x)
    if x == 1:
        raise DomainError("x = 1 maps to infinity")
    return (1 + x) / (1 - x)


@dataclass(frozen=True)
class DiskRegion:
    radius: float

    def __post_init__(self):
        if not 0 <= self.radius < 1:
            raise DomainError("disk radius must lie in [0, 1)")

    def b_interval(self) -> tuple[float, float]:
        r = self.radius
        return (1 - r) / (1 + r), (1 + r) / (1 - r)

    def contains_x(self, x: complex, tol: float = BOUNDARY_TOL) -> bool:
        return abs(complex(x)) <= self.radius + tol

    def contains_b(self, b: complex, tol: float = BOUNDARY_TOL) -> bool:
        b = complex(b)
        if b == -1:
            return False
        return self.contains_x(b_to_x(b), tol)


def girth_threshold(delta: int, eps: float) -> float:
    """Right-hand side of the girth requirement: log(2 eps^2 (Delta-1)^2 / Delta) / log(1 - eps).

    Reported as 0 when the log argument is >= 1, where the requirement holds
    for every girth.
    """
    _check_delta(delta)
    if not 0 < eps < 1:
        raise DomainError("eps must lie in (0, 1)")
    arg = 2 * eps**2 * (delta - 1) ** 2 / delta
    if arg >= 1:
        return 0.0
    return math.log(arg) / math.log1p(-eps)


def _threshold_array(delta: int, eps: np.ndarray) -> np.ndarray:
    arg = 2 * eps**2 * (delta - 1) ** 2 / delta
    with np.errstate(divide="ignore"):
        t = np.log(arg) / np.log1p(-eps)
    return np.where(arg >= 1, 0.0, t)


@dataclass(frozen=True)
class TheoremConstants:
    delta: int
    g: int
    eps: float

    def __post_init__(self):
        _check_delta(self.delta)
        if self.g < 3:
            raise DomainError("girth parameter must be >= 3")
        if not self.g + 2 >= girth_threshold(self.delta, self.eps):
            raise DomainError(
                f"(Delta={self.delta}, g={self.g}, eps={self.eps}) violates the girth requirement"
            )

    @property
    def a(self) -> float:
        return self.eps

    @property
    def c(self) -> float:
        return 1 - self.eps

    @property
    def radius(self) -> float:
        return (1 - self.eps) ** 2 / (self.delta - 1)


def admissible(delta: int, g: int, eps: float) -> bool:
    return g + 2 >= girth_threshold(delta, eps)


@dataclass(frozen=True)
class CorollaryReport:
    delta_max: int
    holds: bool
    min_slack: float
    argmin: int


def corollary_inequality_check(delta_max: int) -> CorollaryReport:
    """(1 - 1/sqrt(2(Delta-1)))^5 <= (Delta-1)/Delta for every 2 <= Delta <= delta_max."""
    if delta_max < 2:
        raise DomainError("delta_max must be >= 2")
    d = np.arange(2, delta_max + 1, dtype=float)
    lhs = (1 - 1 / np.sqrt(2 * (d - 1))) ** 5
    slack = (d - 1) / d - lhs
    i = int(np.argmin(slack))
    return CorollaryReport(delta_max, bool(np.all(slack > 0)), float(slack[i]), int(d[i]))


def smallest_admissible_eps(delta: int, g: int) -> float:
    """Smallest eps in (0,1) meeting the girth requirement: grid scan, then bisection."""
    _check_delta(delta)
    if g < 3:
        raise DomainError("g must be >= 3")
    grid = np.arange(SCAN_STEP, 1.0, SCAN_STEP)
    ok = g + 2 >= _threshold_array(delta, grid)
    idx = np.flatnonzero(ok)
    if idx.size == 0:
        raise DomainError("no admissible eps on the scan grid")
    hi = float(grid[idx[0]])
    if idx[0] == 0:
        lo = 0.0
    else:
        lo = float(grid[idx[0] - 1])
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if mid > 0 and admissible(delta, g, mid):
            hi = mid
        else:
            lo = mid
    return hi


def max_radius_for_girth(delta: int, g: int | float) -> float:
    """Largest (1-eps)^2/(Delta-1) over admissible eps; 1/(Delta-1) for infinite girth."""
    _check_delta(delta)
    if g == math.inf:
        return 1 / (delta - 1)
    eps = smallest_admissible_eps(delta, int(g))
    return (1 - eps) ** 2 / (delta - 1)


def first_delta_beating(delta_max: int = 10_000) -> int | None:
    """Smallest Delta >= 3 with n_Delta > eps_Delta."""
    for d in range(3, delta_max + 1):
        if n_delta(d) > eps_delta(d):
            return d
    return None


def region_report(delta: int, g: int | None = None) -> dict:
    r = n_delta(delta)
    lo, hi = DiskRegion(r).b_interval()
    out = {
        "delta": delta,
        "g": g,
        "n_delta": r,
        "eps_delta": eps_delta(delta),
        "one_over_delta_minus_1": 1 / (delta - 1),
        "hardness_radius": hardness_radius(delta),
        "b_interval": [lo, hi],
    }
    if g is not None:
        out["max_radius"] = max_radius_for_girth(delta, g)
        lo2, hi2 = DiskRegion(out["max_radius"]).b_interval()
        out["max_radius_b_interval"] = [lo2, hi2]
    return out
