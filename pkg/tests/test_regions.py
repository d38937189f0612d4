import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ising_lab.errors import DomainError
from ising_lab.regions import (
    DiskRegion,
    TheoremConstants,
    admissible,
    b_to_x,
    corollary_inequality_check,
    eps_delta,
    first_delta_beating,
    girth_threshold,
    hardness_radius,
    max_radius_for_girth,
    n_delta,
    region_report,
    smallest_admissible_eps,
    x_to_b,
)


def test_radii_at_three_and_five():
    assert n_delta(3) == 0.125
    assert eps_delta(3) == pytest.approx(math.tan(math.pi / 8), abs=1e-15)
    assert n_delta(5) == pytest.approx((1 - 1 / math.sqrt(8)) ** 2 / 4, rel=1e-15)
    assert n_delta(5) == pytest.approx(0.104473, abs=1e-6)
    assert hardness_radius(5) == 0.5


def test_delta_validation():
    for bad in (2, 1, 3.5):
        with pytest.raises(DomainError):
            n_delta(bad)


@given(st.complex_numbers(max_magnitude=50, allow_nan=False, allow_infinity=False).filter(lambda b: abs(b + 1) > 1e-6))
def test_disk_map_round_trip(b):
    assert x_to_b(b_to_x(b)) == pytest.approx(b, rel=1e-9, abs=1e-9)


def test_disk_map_poles():
    with pytest.raises(DomainError):
        b_to_x(-1)
    with pytest.raises(DomainError):
        x_to_b(1)


def test_disk_region():
    d = DiskRegion(0.125)
    lo, hi = d.b_interval()
    assert (lo, hi) == pytest.approx((7 / 9, 9 / 7))
    assert d.contains_b(1) and not d.contains_b(-1) and not d.contains_b(2)
    with pytest.raises(DomainError):
        DiskRegion(1.0)


def test_corollary_inequality():
    rep = corollary_inequality_check(10_000)
    assert rep.holds and rep.min_slack > 0 and 2 <= rep.argmin <= 10_000


def test_girth_requirement_and_constants():
    eps = smallest_admissible_eps(3, 20)
    assert admissible(3, 20, eps) and not admissible(3, 20, eps * 0.99)
    tc = TheoremConstants(3, 20, eps)
    assert tc.radius == pytest.approx((1 - eps) ** 2 / 2)
    assert tc.a + tc.c == 1
    with pytest.raises(DomainError):
        TheoremConstants(3, 20, eps / 2)
    # a large eps needs no girth at all
    assert girth_threshold(3, 0.9) == 0.0


def test_max_radius_monotone_and_bounded():
    vals = [max_radius_for_girth(3, g) for g in range(3, 61)]
    assert all(b >= a for a, b in zip(vals, vals[1:]))
    assert all(v < 0.5 for v in vals)
    assert max_radius_for_girth(3, math.inf) == 0.5


def test_first_delta_beating_and_report():
    d = first_delta_beating(100)
    assert d is None or n_delta(d) > eps_delta(d)
    rep = region_report(3, 10)
    assert rep["n_delta"] == 0.125 and rep["delta"] == 3
