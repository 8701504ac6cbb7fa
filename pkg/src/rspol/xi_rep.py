"""Eigenvectors |xi> of the Riemann-Silberstein mode operator.

    |xi> = exp(-|xi|^2/2 + xi f^-1 a^+ + xi* f^-1 b^+ - a^+ b^+ f^-2) |0,0>,

with f = e^{i phi}. Expanding the exponential gives

    <m,n|xi> = e^{-|xi|^2/2} e^{-i phi (m+n)} H_{m,n}(xi, xi*) / sqrt(m! n!).

Since |f| = 1, f^-1 and f* are the same number and both are realized as
e^{-i phi}. The states are delta-normalized, so truncated coefficient vectors
have norms growing with the cutoff; they are only meaningful inside
quadratures or on interior-projected residuals.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import constants

from .fock import TwoModeBasis, make_basis
from .hermite2 import normalized_radial_table
from .quad import QuadratureGrid

NORM_TOL = 1e-12


@dataclass(frozen=True)
class ModeConfig:
    """One k-mode at the working point: f_k = e^{i phi}, phi = k . r.

    ``k`` is optional metadata in 1/m and never enters a computation.
    """

    phi: float = 0.0
    k: tuple[float, float, float] | None = None

    def __post_init__(self):
        if not np.isfinite(self.phi):
            raise ValueError("phi must be finite")

    @property
    def f(self) -> complex:
        return complex(np.exp(1j * self.phi))

    @property
    def prefactor(self) -> float | None:
        """sqrt(hbar c |k| / (2 pi)^3), the continuum weight of this mode."""
        if self.k is None:
            return None
        kmag = float(np.linalg.norm(self.k))
        return float(np.sqrt(constants.hbar * constants.c * kmag / (2 * np.pi) ** 3))


@dataclass(frozen=True)
class OnePhotonState:
    c_plus: complex
    c_minus: complex
    mode: ModeConfig = ModeConfig()

    def __post_init__(self):
        object.__setattr__(self, "c_plus", complex(self.c_plus))
        object.__setattr__(self, "c_minus", complex(self.c_minus))
        norm2 = abs(self.c_plus) ** 2 + abs(self.c_minus) ** 2
        if abs(norm2 - 1.0) > NORM_TOL:
            raise ValueError(f"|c+|^2 + |c-|^2 = {norm2!r}, expected 1")

    @classmethod
    def normalized(cls, c_plus: complex, c_minus: complex, mode: ModeConfig = ModeConfig()) -> "OnePhotonState":
        norm = np.hypot(abs(c_plus), abs(c_minus))
        if norm == 0:
            raise ValueError("zero amplitude pair cannot be normalized")
        return cls(complex(c_plus) / norm, complex(c_minus) / norm, mode)


@dataclass(frozen=True, eq=False)
class XiState:
    xi: complex
    mode: ModeConfig
    basis: TwoModeBasis
    coeffs: np.ndarray


def _phase_lattice(basis: TwoModeBasis, mode: ModeConfig) -> np.ndarray:
    return np.exp(-1j * mode.phi * (basis.m + basis.n))


def xi_state(xi: complex, mode: ModeConfig, basis: TwoModeBasis) -> XiState:
    xi = complex(xi)
    r, theta = abs(xi), np.angle(xi)
    radial = normalized_radial_table(basis.cutoff, r, gaussian=True).ravel()
    coeffs = radial * np.exp(1j * theta * basis.q) * _phase_lattice(basis, mode)
    coeffs.setflags(write=False)
    return XiState(xi, mode, basis, coeffs)


def node_coefficients(basis: TwoModeBasis, grid: QuadratureGrid, mode: ModeConfig = ModeConfig()) -> np.ndarray:
    """<m,n|xi> / e^{-|xi|^2/2} at every grid node, shape (nodes, dim).

    The Gaussian is left out because the grid weights already carry it.
    """
    radial = normalized_radial_table(basis.cutoff, grid.radial_nodes).reshape(grid.radial_order, basis.dim)
    angular = np.exp(1j * np.outer(grid.angular_nodes, basis.q))
    coeffs = radial[:, None, :] * angular[None, :, :] * _phase_lattice(basis, mode)
    return coeffs.reshape(-1, basis.dim)


def embed_one_photon(state: OnePhotonState, basis: TwoModeBasis) -> np.ndarray:
    """c+ |1,0> + c- |0,1> as a vector over ``basis``."""
    if basis.cutoff < 1:
        raise ValueError("cutoff 0 cannot hold a one-photon state")
    psi = np.zeros(basis.dim, dtype=complex)
    psi[basis.index(1, 0)] = state.c_plus
    psi[basis.index(0, 1)] = state.c_minus
    return psi


def overlap_xi(state: XiState, psi) -> complex:
    """<xi|psi> over the truncated basis."""
    psi = np.asarray(psi)
    if psi.shape != state.coeffs.shape:
        raise ValueError(f"state has shape {psi.shape}, basis dim is {state.basis.dim}")
    return complex(np.vdot(state.coeffs, psi))


def one_photon_overlap(xi, state: OnePhotonState, gaussian: bool = True):
    """Closed form <xi|psi> = e^{i phi} e^{-|xi|^2/2} (xi* c+ + xi c-); vectorized in xi."""
    xi = np.asarray(xi, dtype=complex)
    val = state.mode.f * (np.conj(xi) * state.c_plus + xi * state.c_minus)
    if gaussian:
        val = val * np.exp(-0.5 * np.abs(xi) ** 2)
    return val


def normalized_overlap(xi_a: complex, xi_b: complex, mode: ModeConfig, basis: TwoModeBasis) -> float:
    """|<xi_a|xi_b>| / (||xi_a|| ||xi_b||) in the truncated space.

    Tends to zero with growing cutoff for xi_a != xi_b (delta normalization).
    """
    a = xi_state(xi_a, mode, basis).coeffs
    b = xi_state(xi_b, mode, basis).coeffs
    return float(abs(np.vdot(a, b)) / (np.linalg.norm(a) * np.linalg.norm(b)))


def completeness_residual(basis: TwoModeBasis, grid: QuadratureGrid, probe_cut: int,
                          mode: ModeConfig = ModeConfig()) -> float:
    """max |int d^2xi/pi <m,n|xi><xi|m',n'> - delta| over m, n, m', n' <= probe_cut."""
    if probe_cut < 0 or probe_cut > basis.cutoff - 2:
        raise ValueError(f"probe_cut must lie in [0, cutoff - 2] = [0, {basis.cutoff - 2}], got {probe_cut}")
    # coefficients do not depend on the cutoff, so only the probe block is built
    probe = make_basis(probe_cut)
    C = node_coefficients(probe, grid, mode)
    gram = (C.T * grid.weights) @ C.conj()
    return float(np.max(np.abs(gram - np.eye(probe.dim))))
