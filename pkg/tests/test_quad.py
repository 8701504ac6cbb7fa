from math import factorial, gamma

import numpy as np
import pytest

from rspol.quad import make_grid


def test_order_one_grid():
    g = make_grid(1, 4)
    assert g.radial_nodes == pytest.approx([1.0])
    assert g.radial_weights == pytest.approx([0.5])
    # (1/pi) int e^{-|xi|^2} d^2 xi = 1
    assert g.weights.sum() == pytest.approx(1.0, abs=1e-15)
    assert np.sum(g.explicit_weights * np.exp(-g.node_radii ** 2)) == pytest.approx(1.0, abs=1e-15)


@pytest.mark.parametrize("R", [2, 5, 20, 60])
def test_gaussian_normalization(R):
    g = make_grid(R, 16)
    assert abs(np.sum(g.explicit_weights * np.exp(-g.node_radii ** 2)) - 1) <= 1e-8
    assert np.all(g.weights > 0)
    assert np.all(g.radial_nodes > 0) and np.all(np.diff(g.radial_nodes) > 0)


@pytest.mark.parametrize("R", [1, 3, 10, 30])
def test_even_radial_exactness(R):
    # int_0^inf r^{2p+1} e^{-r^2} dr = p!/2 for p <= 2R - 1
    g = make_grid(R, 4)
    for p in range(2 * R):
        got = np.dot(g.radial_weights, g.radial_nodes ** (2 * p))
        assert got == pytest.approx(factorial(p) / 2, rel=1e-12)


def test_p_theta_radial_integral():
    g = make_grid(2, 8)
    assert np.dot(g.radial_weights, g.radial_nodes ** 2) == pytest.approx(0.5, rel=1e-15)


@pytest.mark.parametrize("R", [1, 4, 12, 30])
def test_odd_radial_exactness(R):
    # int_0^inf r^{2p+2} e^{-r^2} dr = Gamma(p + 3/2)/2
    g = make_grid(R, 4, parity="odd")
    for p in range(2 * R):
        got = np.dot(g.radial_weights, g.radial_nodes ** (2 * p + 1))
        assert got == pytest.approx(gamma(p + 1.5) / 2, rel=1e-11)


@pytest.mark.parametrize("M", [4, 7, 16])
def test_angular_rule_kills_harmonics(M):
    g = make_grid(1, M)
    for k in range(1, M):
        s = np.sum(np.exp(1j * k * g.angular_nodes)) * g.angular_weight
        assert abs(s) < 1e-13
    assert np.sum(np.exp(1j * M * g.angular_nodes)) * g.angular_weight == pytest.approx(2 * np.pi)


def test_invalid_orders():
    with pytest.raises(ValueError):
        make_grid(0, 8)
    with pytest.raises(ValueError):
        make_grid(3, 3)
    with pytest.raises(ValueError):
        make_grid(3, 8, parity="both")


def test_twin_keeps_orders():
    g = make_grid(7, 20)
    t = g.twin("odd")
    assert (t.radial_order, t.angular_order, t.parity) == (7, 20, "odd")
    assert g.twin("even") is g


def test_refinement_changes_converged_integrals_little():
    from rspol.fock import make_basis
    from rspol.xi_rep import node_coefficients
    basis = make_basis(4)

    def gram(R, M):
        g = make_grid(R, M)
        C = node_coefficients(basis, g)
        return (C.T * g.weights) @ C.conj()

    ref = gram(10, 16)
    for R, M in [(20, 16), (10, 32), (20, 32)]:
        assert np.max(np.abs(gram(R, M) - ref)) <= 1e-8
