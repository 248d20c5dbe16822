import math

import numpy as np
import pytest

from monodimer.asymptotics import (
    DensityReport,
    ellip_E,
    ellip_F,
    ellip_K,
    elliptic_suite,
    free_energy_3d,
    free_energy_d,
    heuman_lambda,
    jacobi_zeta,
    rho_3,
    rho_d_x,
)
from monodimer.closed_forms import zd_grid
from monodimer.errors import DomainError


def test_complete_elliptic_trivial():
    assert elliptic_suite("K", 0.0) == pytest.approx(math.pi / 2, abs=1e-12)
    assert elliptic_suite("E", 0.0) == pytest.approx(math.pi / 2, abs=1e-12)
    # K(1/sqrt(2)) known value: Gamma(1/4)^2 / (4 sqrt(pi))
    expect = math.gamma(0.25) ** 2 / (4 * math.sqrt(math.pi))
    assert ellip_K(1 / math.sqrt(2)) == pytest.approx(expect, abs=1e-10)


def test_incomplete_reduce_to_complete():
    for k in (0.1, 0.5, 0.9):
        assert ellip_F(math.pi / 2, k) == pytest.approx(
            float(ellip_K(k)), abs=1e-12)


def test_domain_checks():
    with pytest.raises(DomainError):
        ellip_K(1.0)
    with pytest.raises(DomainError):
        elliptic_suite("K", 1.5)
    with pytest.raises(DomainError):
        elliptic_suite("nope", 0.5)


def test_jacobi_zeta_vanishes_at_ends():
    for k in (0.2, 0.6, 0.95):
        assert jacobi_zeta(0.0, k) == pytest.approx(0.0, abs=1e-14)
        assert jacobi_zeta(math.pi / 2, k) == pytest.approx(0.0, abs=1e-12)


def test_heuman_lambda_full_amplitude_is_one():
    for y in (0.1, 0.4, 0.8, 1.2, 1.5):
        assert float(heuman_lambda(math.pi / 2, y)) == pytest.approx(
            1.0, abs=1e-10)


def test_free_energy_trivial_values():
    assert free_energy_3d(0, 0, 0, 1.0) == pytest.approx(0.0, abs=1e-12)
    assert free_energy_3d(0, 0, 0, math.e) == pytest.approx(1.0, abs=1e-10)
    with pytest.raises(DomainError):
        free_energy_3d(0, 0, 0, 0)


def test_free_energy_matches_finite_grid():
    # per-vertex log Z converges like surface/volume, ~1/m; a 48^3 grid
    # is the first power-of-convenience size inside 1e-2
    finite = zd_grid((48, 48, 48), (1, 1, 1), 1.0).log_value / 48 ** 3
    assert free_energy_3d(1, 1, 1, 1) == pytest.approx(finite, abs=1e-2)
    closer = zd_grid((96,) * 3, (1, 1, 1), 1.0).log_value / 96 ** 3
    assert abs(free_energy_3d(1, 1, 1, 1) - closer) < abs(
        free_energy_3d(1, 1, 1, 1) - finite)


def test_free_energy_finite_size_convergence():
    phi = free_energy_3d(1, 1, 1, 1)
    errs = []
    for m in (4, 8, 16):
        finite = zd_grid((m,) * 3, (1, 1, 1), 1.0).log_value / m ** 3
        errs.append(abs(finite - phi))
    assert errs[0] > errs[1] > errs[2]


def test_free_energy_d_consistency():
    assert free_energy_d([1, 1, 1], 1.0) == pytest.approx(
        free_energy_3d(1, 1, 1, 1), abs=1e-10)


def test_rho3_reference_value():
    r = rho_3(1, 1, 1, 1)
    assert isinstance(r, DensityReport)
    assert r.rho_x == pytest.approx(0.1705, abs=1e-3)
    assert r.rho_edges[0] == pytest.approx((1 - r.rho_x) / 3, abs=1e-8)
    assert r.rho_edges[0] == r.rho_edges[1] == r.rho_edges[2]
    assert r.rho_x + sum(r.rho_edges) == pytest.approx(1.0, abs=1e-6)
    assert 0 <= r.rho_x <= 1 and all(0 <= e <= 1 for e in r.rho_edges)


def test_rho3_routes_agree_asymmetric():
    r = rho_3(0.7, 1.3, 0.9, 1.1)
    assert r.est_error < 1e-6
    assert r.rho_x + sum(r.rho_edges) == pytest.approx(1.0, abs=1e-6)


def test_rho3_monopoles_vanish_as_x_to_zero():
    r = rho_3(1, 1, 1, 1e-3)
    assert r.rho_x < 1e-4


def test_rho3_derivative_consistency():
    # central finite difference of Phi_3 in ln a reproduces the edge density
    a, h = 0.9, 1e-4
    up = free_energy_3d(a * math.exp(h), 1.1, 1.0, 1.2)
    dn = free_energy_3d(a * math.exp(-h), 1.1, 1.0, 1.2)
    fd = (up - dn) / (2 * h)
    r = rho_3(a, 1.1, 1.0, 1.2)
    assert fd == pytest.approx(r.rho_edges[0], abs=1e-4)


def test_rho_d_x_matches_rho3():
    r3 = rho_3(1, 1, 1, 1)
    rd = rho_d_x(3)
    assert rd.rho_x == pytest.approx(r3.rho_x, abs=1e-9)


def test_rho_d_sum_rule():
    for d in (4, 5):
        r = rho_d_x(d)
        assert r.rho_x + sum(r.rho_edges) == pytest.approx(1.0, abs=1e-5)


def test_rho_d_domain():
    with pytest.raises(DomainError):
        rho_d_x(2)
    with pytest.raises(DomainError):
        rho_d_x(3, [1.0, -1.0, 1.0])


def test_rho_d_deterministic():
    a = rho_d_x(7, seed=0)
    b = rho_d_x(7, seed=0)
    assert a.rho_x == b.rho_x
