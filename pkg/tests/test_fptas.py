import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ising_lab.errors import CapacityError, DomainError, OutOfRegionError
from ising_lab.fptas import (
    approx_z_even,
    approx_z_ising,
    build_catalog,
    default_radius,
    even_coeffs_upto,
    exact_z_even,
    log_z_taylor,
    observed_error,
    truncation_bound,
)
from ising_lab.generators import complete, cube, cycle, path, petersen, random_multigraph, random_regular
from ising_lab.graph import Graph
from ising_lab.partition import z_even_poly, z_ising_poly


def test_catalog_of_k4():
    cat = build_catalog(complete(4), 4)
    assert {k: len(v) for k, v in cat.by_size().items()} == {3: 4, 4: 3}
    assert len(cat) == 7


def test_catalog_members_are_connected_and_even():
    from ising_lab.graph import num_components
    from ising_lab.partition import is_even

    g = petersen()
    for emask, vmask in build_catalog(g, 9).members():
        assert is_even(g, emask)
        assert g.vertices_of(emask) == vmask
        assert num_components(g.subgraph(emask)) == 1


def test_packing_of_disjoint_triangles():
    g = Graph.from_pairs(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])
    assert even_coeffs_upto(g, 6) == [1, 0, 0, 2, 0, 0, 1]


def test_coefficients_against_cycle_space():
    rng = random.Random(10)
    for _ in range(100):
        g = random_multigraph(rng, 6, 9)
        full = list(z_even_poly(g).coeffs) + [0] * (g.m + 1)
        assert even_coeffs_upto(g, g.m) == full[: g.m + 1]
    assert even_coeffs_upto(petersen(), 9) == list(z_even_poly(petersen()).coeffs[:10])


@given(st.lists(st.integers(0, 20), min_size=1, max_size=8))
@settings(max_examples=50)
def test_log_series_inverts_exp(tail):
    e = [1] + tail
    m = len(e) - 1
    c = log_z_taylor(e, m)
    # exp of sum c_k x^k, truncated, via the recurrence k e_k = sum j c_j e_{k-j}
    back = [Fraction(1)]
    for k in range(1, m + 1):
        back.append(sum(j * c[j - 1] * back[k - j] for j in range(1, k + 1)) / k)
    assert back == [Fraction(v) for v in e]


def test_log_series_needs_unit_constant():
    with pytest.raises(DomainError):
        log_z_taylor([2, 1], 3)


def test_truncation_bound():
    assert truncation_bound(10, 0.0, 3) == 0.0
    assert truncation_bound(10, 0.5, 1) == pytest.approx(10 * 0.25 / (2 * 0.5))
    with pytest.raises(DomainError):
        truncation_bound(10, 1.0, 3)


def test_default_radius_uses_girth():
    assert default_radius(cycle(3)) < default_radius(cycle(8)) < default_radius(path(6)) < 0.5
    assert default_radius(complete(5)) < 1 / 3


@pytest.mark.parametrize("g", [cycle(3), complete(4), cube(), petersen(), random_regular(3, 10, 2)])
def test_estimate_within_eps(g):
    R = default_radius(g)
    for x in (0.8 * R, -0.5 * R, 0.7j * R, 0.6 * R * (1 + 1j) / math.sqrt(2)):
        est, cert = approx_z_even(g, x, 1e-6)
        log_err, rel_err = observed_error(est, exact_z_even(g, x))
        assert rel_err <= 1e-6
        assert log_err <= cert.error_bound
        assert cert.theta == pytest.approx(abs(x) / R)


def test_order_grows_with_accuracy():
    g = cube()
    _, loose = approx_z_even(g, 0.1, 1e-2)
    _, tight = approx_z_even(g, 0.1, 1e-10)
    assert loose.m < tight.m


def test_out_of_region_and_bad_eps():
    g = cube()
    with pytest.raises(OutOfRegionError):
        approx_z_even(g, 0.9, 1e-3)
    with pytest.raises(DomainError):
        approx_z_even(g, 0.01, 0)
    with pytest.raises(DomainError):
        approx_z_even(g, 0.01, 1e-3, R=-1)


def test_capacity_error_reports_achieved_bound():
    g = random_regular(3, 20, 1)  # 30 edges, catalog capped at 16
    with pytest.raises(CapacityError) as info:
        approx_z_even(g, 0.99 * default_radius(g), 1e-12)
    assert info.value.achieved is not None and info.value.achieved > 0


def test_ising_prefactor():
    g = cycle(3)
    est, _ = approx_z_ising(g, 1.2, 1e-8)
    assert est == pytest.approx(z_ising_poly(g).eval_complex(1.2), rel=1e-8)
    est, _ = approx_z_ising(complete(4), 1, 1e-8)
    assert est == pytest.approx(16)


def test_exact_z_even_cap():
    assert exact_z_even(complete(10), 0.1) is None
