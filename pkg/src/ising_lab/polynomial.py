"""Dense univariate polynomials with exact integer coefficients.

Index ``i`` of ``coeffs`` holds the coefficient of ``t**i``.  Arithmetic is
exact (Python ints); evaluation at complex points is double precision by
default, or arbitrary precision through mpmath when ``precision`` (decimal
digits) is given.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Sequence

import mpmath
import numpy as np

from .errors import RootFindingError

DEFAULT_TOL = 1e-12
MAX_ITER = 1000


def _check_finite(z: complex) -> complex:
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"non-finite complex argument {z!r}")
    return z


@dataclass(frozen=True)
class IntegerPolynomial:
    coeffs: tuple[int, ...] = ()

    def __init__(self, coeffs: Sequence[int] = ()):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "IntegerPolynomial":
        return cls([0] * k + [c])

    @classmethod
    def constant(cls, c: int) -> "IntegerPolynomial":
        return cls([c])

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __add__(self, other):
        other = _coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return IntegerPolynomial([self[i] + other[i] for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return IntegerPolynomial([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        if not self.coeffs or not other.coeffs:
            return IntegerPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntegerPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = IntegerPolynomial([1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __call__(self, t):
        """Exact evaluation at an integer or rational; Horner otherwise."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def eval_complex(self, z: complex, precision: int | None = None) -> complex:
        return eval_complex(self, z, precision)

    def compose_scale(self, s) -> list[Fraction]:
        """Coefficients of p(s*t) for rational s, as Fractions."""
        s = Fraction(s)
        return [Fraction(c) * s**i for i, c in enumerate(self.coeffs)]

    def derivative(self) -> "IntegerPolynomial":
        return IntegerPolynomial([i * c for i, c in enumerate(self.coeffs)][1:])

    def divmod_linear(self, r: int) -> tuple["IntegerPolynomial", int]:
        """Synthetic division by (t - r) for integer r: quotient and remainder."""
        if not self.coeffs:
            return IntegerPolynomial(), 0
        out = []
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * r + c
            out.append(acc)
        rem = out.pop()
        return IntegerPolynomial(list(reversed(out))), rem

    def root_multiplicity(self, r: int) -> tuple[int, "IntegerPolynomial"]:
        """Multiplicity of the integer root r and the cofactor p/(t-r)^k."""
        if self.is_zero():
            raise ValueError("zero polynomial")
        k = 0
        p = self
        while p.degree > 0:
            q, rem = p.divmod_linear(r)
            if rem != 0:
                break
            p, k = q, k + 1
        return k, p

    def norm1(self) -> int:
        return sum(abs(c) for c in self.coeffs)

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence[str | int]) -> "IntegerPolynomial":
        return cls([int(c) for c in data])

    def __repr__(self):
        return f"IntegerPolynomial({list(self.coeffs)})"


def _coerce(x) -> IntegerPolynomial:
    if isinstance(x, IntegerPolynomial):
        return x
    if isinstance(x, int):
        return IntegerPolynomial([x])
    raise TypeError(f"cannot combine IntegerPolynomial with {type(x).__name__}")


def add(p, q):
    return _coerce(p) + _coerce(q)


def mul(p, q):
    return _coerce(p) * _coerce(q)


def compose_scale(p: IntegerPolynomial, s) -> list[Fraction]:
    return p.compose_scale(s)


def eval_complex(p: IntegerPolynomial, z, precision: int | None = None) -> complex:
    """Horner evaluation.  Exact for integer and rational arguments in double mode
    whenever the result is representable; ``precision`` switches to mpmath."""
    if isinstance(z, Rational) and precision is None:
        return complex(p(z))
    z = _check_finite(z)
    if precision is not None:
        with mpmath.workdps(precision):
            zz = mpmath.mpc(z.real, z.imag)
            acc = mpmath.mpc(0)
            for c in reversed(p.coeffs):
                acc = acc * zz + c
            return complex(acc)
    if z.imag == 0 and z.real.is_integer():
        return complex(p(int(z.real)))
    acc = 0j
    for c in reversed(p.coeffs):
        acc = acc * z + float(c)
    return acc


def residual_bound(p: IntegerPolynomial, z: complex, tol: float) -> float:
    return tol * float(p.norm1()) * max(1.0, abs(z)) ** max(p.degree, 0)


def _cauchy_radius(c: np.ndarray) -> float:
    """Unique positive root of |a_n| t^n - sum_{i<n} |a_i| t^i (Cauchy's bound)."""
    a = np.abs(c)  # highest degree first
    n = len(a) - 1

    def f(t):
        return a[0] * t**n - sum(a[k] * t ** (n - k) for k in range(1, n + 1))

    lo, hi = 0.0, 1.0
    while f(hi) < 0:
        hi *= 2.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if f(mid) < 0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-12 * hi:
            break
    return hi


def aberth(coeffs: Sequence[int], max_iter: int = MAX_ITER) -> tuple[np.ndarray, int, bool]:
    """Simultaneous Aberth iteration from a circle at Cauchy's radius.

    ``coeffs`` are lowest-degree first, with nonzero constant and leading terms.
    Returns (roots, iterations, converged).
    """
    c = np.array([float(x) for x in reversed(coeffs)], dtype=complex)
    c = c / c[0]
    n = len(c) - 1
    if n == 1:
        return np.array([-c[1]]), 0, True
    dc = c[:-1] * np.arange(n, 0, -1)
    radius = _cauchy_radius(c)
    angles = 2 * np.pi * np.arange(n) / n + 0.4
    z = radius * np.exp(1j * angles)
    eye = np.eye(n, dtype=bool)
    eps = np.finfo(float).eps
    converged = False
    it = 0
    for it in range(1, max_iter + 1):
        pz = np.polyval(c, z)
        dpz = np.polyval(dc, z)
        safe = dpz != 0
        ratio = np.where(safe, pz / np.where(safe, dpz, 1), 0)
        diff = z[:, None] - z[None, :]
        diff[eye] = 1.0
        s = (1.0 / diff)
        s[eye] = 0.0
        s = s.sum(axis=1)
        denom = 1.0 - ratio * s
        step = np.where(denom != 0, ratio / np.where(denom != 0, denom, 1), ratio)
        # an exact zero of p' away from a root: nudge off the critical point
        step = np.where(safe | (pz == 0), step, 1e-8 * (1 + np.abs(z)))
        z = z - step
        if np.all(np.abs(step) <= 4 * eps * np.maximum(np.abs(z), 1e-300)):
            converged = True
            break
    return z, it, converged


def roots(p: IntegerPolynomial, tol: float = DEFAULT_TOL, max_iter: int = MAX_ITER) -> list[complex]:
    """All complex roots with multiplicity, sorted by (real, imaginary).

    Exact integer roots 0 and -1 are split off by synthetic division first;
    the rest go through Aberth iteration.  Each returned root satisfies
    ``|p(z)| <= tol * ||p||_1 * max(1, |z|)**deg``; otherwise
    :class:`RootFindingError` is raised carrying the iterates.
    """
    if p.is_zero():
        raise ValueError("the zero polynomial has no finite root set")
    found: list[complex] = []
    q = p
    for r in (0, -1):
        k, q = q.root_multiplicity(r)
        found.extend([complex(r)] * k)
    if q.degree >= 1:
        z, iters, converged = aberth(q.coeffs, max_iter)
        res = np.array([abs(eval_complex(p, complex(x))) for x in z])
        bounds = np.array([residual_bound(p, complex(x), tol) for x in z])
        if not np.all(res <= bounds):
            # polish once in extended precision before giving up
            z = np.array([_newton_polish(q, complex(x)) for x in z])
            res = np.array([abs(eval_complex(p, complex(x), precision=40)) for x in z])
            if not np.all(res <= bounds):
                raise RootFindingError(
                    f"root residuals not certified after {iters} iterations (converged={converged})",
                    iterates=[complex(x) for x in z],
                    residuals=res.tolist(),
                )
        found.extend(complex(x) for x in z)
    found.sort(key=lambda w: (w.real, w.imag))
    return found


def _newton_polish(q: IntegerPolynomial, z: complex, steps: int = 30) -> complex:
    dq = q.derivative()
    with mpmath.workdps(40):
        w = mpmath.mpc(z.real, z.imag)
        for _ in range(steps):
            f = mpmath.polyval(list(reversed(q.coeffs)), w)
            d = mpmath.polyval(list(reversed(dq.coeffs)), w) if dq.coeffs else 0
            if d == 0:
                break
            delta = f / d
            w -= delta
            if abs(delta) < mpmath.mpf(10) ** -30 * max(1, abs(w)):
                break
        return complex(w)


def monic_from_roots(rs: Sequence[complex]) -> np.ndarray:
    """Coefficients (lowest degree first) of prod (t - r)."""
    return np.poly(np.asarray(rs, dtype=complex))[::-1] if len(rs) else np.array([1.0 + 0j])


def sort_roots(rs):
    return sorted((complex(r) for r in rs), key=lambda w: (w.real, w.imag))
