import math

import numpy as np
import pytest

from quantoda.oracle import (BOUNDARY_MARGIN, GridFunction, GridSpec,
                             bessel_oracle_n2, check_eigen,
                             eigenvalue_from_alpha, toda_apply,
                             whittaker_vs_ode_ratio)


def test_eigenvalue_examples():
    assert eigenvalue_from_alpha([1.0, -1.0]) == 1.0
    assert eigenvalue_from_alpha([0.0, 0.0, 0.0]) == 0.0
    a = [0.7, -0.2, 0.4]
    assert abs(eigenvalue_from_alpha(a) - 0.5 * sum(v * v for v in a)) < 1e-15
    # symmetric in the entries
    assert eigenvalue_from_alpha([0.3, -0.9]) == eigenvalue_from_alpha([-0.9, 0.3])


def test_grid_spec_axes():
    axes = GridSpec(5, 0.1).axes(2)
    assert len(axes) == 2
    assert np.allclose(axes[0], [-0.2, -0.1, 0.0, 0.1, 0.2])
    off = GridSpec(3, 0.5, center=(1.0, -1.0)).axes(2)
    assert np.allclose(off[0], [0.5, 1.0, 1.5])
    assert np.allclose(off[1], [-1.5, -1.0, -0.5])


def test_grid_function_validation():
    with pytest.raises(ValueError):
        GridFunction([np.array([0.0, 0.1, 0.3])], np.zeros(3))  # nonuniform
    with pytest.raises(ValueError):
        GridFunction([np.array([0.0, 0.1])], np.zeros(3))  # shape mismatch


def test_toda_apply_constant_gives_potential():
    axes = GridSpec(9, 0.2).axes(2)
    ones = np.ones((9, 9), dtype=complex)
    out = toda_apply(GridFunction(axes, ones), 2).values
    sl = (slice(BOUNDARY_MARGIN, -BOUNDARY_MARGIN),) * 2
    expect = np.exp(np.subtract.outer(-axes[0], -axes[1]))[sl]
    assert np.allclose(out[sl], expect)
    # margins are invalidated
    assert np.isnan(out[0, 0]) and np.isnan(out[-1, 4])


def test_toda_apply_n1_plane_wave():
    x = GridSpec(41, 0.05).axes(1)
    k = 1.3
    psi = GridFunction(x, np.exp(1j * k * x[0]))
    out = toda_apply(psi, 1).values
    sl = slice(BOUNDARY_MARGIN, -BOUNDARY_MARGIN)
    # second-order stencil: -psi'' = k^2 psi up to O(h^2)
    assert np.allclose(out[sl], k * k * psi.values[sl], rtol=1e-3)


def test_bessel_oracle_decay_and_oscillation():
    r = np.linspace(-6.0, 2.0, 81)
    alpha = [1.0, -1.0]
    phi = bessel_oracle_n2(alpha, r).values.real
    # decays under the barrier on the right
    right = phi[r > 1.0]
    assert all(abs(v) > 0 for v in right)
    assert abs(phi[-1]) < abs(phi[r > 0.5][0])
    # oscillates on the far left with wavenumber sqrt(E): count sign changes
    left = phi[r < -3.0]
    changes = int(np.sum(np.abs(np.diff(np.sign(left))) > 0))
    E = ((alpha[0] - alpha[1]) / 2.0) ** 2
    span = (-3.0) - r.min()
    expect = math.sqrt(E) * span / math.pi
    assert abs(changes - expect) <= 1.5


def test_whittaker_matches_ode_solution():
    r = np.linspace(-4.0, 1.5, 12)
    rep = whittaker_vs_ode_ratio([0.8, -0.4], r)
    assert rep.passed
    assert rep.residual < 1e-5


def test_check_eigen_n2_with_refinement():
    rep = check_eigen(2, [0.6, -0.6], GridSpec(24, 0.08), tol=3e-3,
                      refine=True)
    assert rep.passed
    assert "refinement ratio" in rep.witness
