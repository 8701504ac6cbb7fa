import numpy as np
import pytest

from rspol.fock import make_basis
from rspol.nfm import interior_spectrum, nfm_build, nfm_identity_residual, quadratures, xp_commutator
from rspol.pol_phase import phase_operator_spectral
from rspol.quad import make_grid
from rspol.rs_field import rs_operators
from rspol.xi_rep import ModeConfig


@pytest.fixture(scope="module")
def ops8():
    return nfm_build(make_basis(8))


def test_quadrature_elements():
    X, P = quadratures(make_basis(3))
    assert X.element((0, 0), (1, 0)) == pytest.approx(1 / np.sqrt(2), abs=1e-16)
    assert X.element((0, 0), (0, 1)) == pytest.approx(1 / np.sqrt(2), abs=1e-16)
    assert X.hermitian and P.hermitian


def test_quadratures_combine_to_f():
    basis = make_basis(5)
    X, P = quadratures(basis)
    F = rs_operators(ModeConfig(0.0), basis).F
    assert np.allclose((X + 1j * P).entries, np.sqrt(2) * F.entries, atol=1e-15)


def test_x_p_commute_in_interior(ops8):
    assert xp_commutator(ops8, 1) <= 1e-12


def test_exp_alpha_is_phase_operator(ops8):
    basis = ops8.basis
    ref = phase_operator_spectral(ModeConfig(0.0), basis, make_grid(10, 20))
    assert np.max(np.abs(ops8.exp_alpha.entries - ref.entries)) <= 1e-12


def test_cosine_vacuum_element(ops8):
    assert abs(ops8.C.element((0, 0), (0, 0))) <= 1e-6


def test_cosine_is_hermitian_and_bounded(ops8):
    assert np.array_equal(ops8.C.entries, ops8.C.entries.conj().T)
    eigs = interior_spectrum(ops8.C, 3)
    assert np.all(np.abs(eigs) <= 1 + 1e-6)


def test_near_null_is_reported(ops8):
    # S = X^2 + P^2 shares the zero mode of truncated F in sector q = 0
    assert len(ops8.near_null) >= 1
    assert max(abs(e) for e in ops8.near_null) <= 1e-8


def test_identity_residual_finite_and_shrinking():
    res = [nfm_identity_residual(nfm_build(make_basis(n)), n // 3) for n in (12, 24)]
    assert res[1] < res[0]


def test_margin_guards(ops8):
    for bad in (0, 8):
        with pytest.raises(ValueError):
            nfm_identity_residual(ops8, bad)
        with pytest.raises(ValueError):
            xp_commutator(ops8, bad)
