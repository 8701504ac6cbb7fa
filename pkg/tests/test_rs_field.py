import numpy as np
import pytest

from rspol.fock import make_basis, number_difference
from rspol.rs_field import (commutator_check, eigen_residual, eigen_residuals, energy_density,
                            normality_residual, rs_operators)
from rspol.xi_rep import ModeConfig, OnePhotonState, embed_one_photon


def test_f_matrix_elements():
    basis = make_basis(3)
    F = rs_operators(ModeConfig(0.0), basis).F
    assert F.element((0, 1), (0, 0)) == 1
    F = rs_operators(ModeConfig(np.pi / 2), basis).F
    assert F.element((0, 1), (0, 0)) == pytest.approx(-1j, abs=1e-16)
    for phi in (0.0, 0.7):
        F = rs_operators(ModeConfig(phi), basis).F
        assert F.element((0, 0), (1, 0)) == pytest.approx(np.exp(1j * phi), abs=1e-16)


def test_f_branches():
    basis = make_basis(4)
    phi = 0.37
    F = rs_operators(ModeConfig(phi), basis).F
    for m in range(5):
        for n in range(5):
            col = F @ basis.basis_vector(m, n)
            expected = np.zeros(basis.dim, complex)
            if m:
                expected[basis.index(m - 1, n)] += np.sqrt(m) * np.exp(1j * phi)
            if n < 4:
                expected[basis.index(m, n + 1)] += np.sqrt(n + 1) * np.exp(-1j * phi)
            assert np.allclose(col, expected, atol=1e-15)


def test_f_dag_is_adjoint():
    ops = rs_operators(ModeConfig(1.1), make_basis(5))
    assert np.array_equal(ops.F_dag.entries, ops.F.entries.conj().T)


@pytest.mark.parametrize("N", [4, 8, 12])
def test_interior_normality(N):
    assert normality_residual(make_basis(N), ModeConfig(0.4)) <= 1e-12


def test_eigen_residual_origin():
    for N in (2, 5, 12):
        assert eigen_residual(0.0, ModeConfig(), make_basis(N), 1) <= 1e-12


@pytest.mark.parametrize("xi", [1.0, 2 + 1j, 0.5 * np.exp(1j * np.pi / 3), -1.5 + 0.2j])
def test_eigen_residual_interior(xi):
    # the coefficient recursion is exact below the edge, so only rounding remains
    res = eigen_residuals(xi, ModeConfig(0.8), make_basis(24), 8)
    assert max(res) <= 1e-3
    assert max(res) <= 1e-12


def test_eigen_residual_margin_checks():
    with pytest.raises(ValueError):
        eigen_residual(1.0, ModeConfig(), make_basis(4), 4)
    with pytest.raises(ValueError):
        eigen_residual(1.0, ModeConfig(), make_basis(4), 0)


def test_edge_is_not_an_eigenvector():
    # without projection the truncated edge breaks the eigen equation
    basis = make_basis(10)
    from rspol.xi_rep import xi_state
    c = xi_state(1.5, ModeConfig(), basis).coeffs
    F = rs_operators(ModeConfig(), basis).F
    assert np.linalg.norm(F @ c - 1.5 * c) > 1e-3


@pytest.mark.parametrize("N, phi", [(4, 0.0), (12, 1.3), (24, 1.3), (24, np.pi / 2)])
def test_commutators_exact(N, phi):
    qf, qfd = commutator_check(make_basis(N), ModeConfig(phi))
    assert qf <= 1e-12 and qfd <= 1e-12


def test_f_lowers_q():
    basis = make_basis(5)
    F = rs_operators(ModeConfig(0.3), basis).F
    Q = number_difference(basis)
    for i in range(basis.dim):
        v = np.zeros(basis.dim)
        v[i] = 1
        out = F @ v
        q_in = basis.q[i]
        assert np.allclose(Q @ out, (q_in - 1) * out)


@pytest.mark.parametrize("phi", [0.0, 0.5, 2.0])
def test_energy_density(phi):
    basis = make_basis(5)
    mode = ModeConfig(phi)
    assert energy_density(basis.basis_vector(0, 0), mode, basis) == pytest.approx(1.0, abs=1e-14)
    state = OnePhotonState.normalized(0.3 + 0.1j, -0.7j)
    assert energy_density(embed_one_photon(state, basis), mode, basis) == pytest.approx(2.0, abs=1e-14)
    assert energy_density(basis.basis_vector(1, 1), mode, basis) == pytest.approx(3.0, abs=1e-14)


def test_energy_density_support_guard():
    basis = make_basis(4)
    with pytest.raises(ValueError):
        energy_density(basis.basis_vector(3, 0), ModeConfig(), basis)
    with pytest.raises(ValueError):
        energy_density(2 * basis.basis_vector(0, 0), ModeConfig(), basis)
