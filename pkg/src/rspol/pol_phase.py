"""The polarization operator e^{i Theta} = sqrt(F / F^+) and its distribution P(theta).

Two constructions of e^{i Theta} are provided:

* spectral: the xi-plane integral  int d^2xi/pi e^{i theta} |xi><xi|  by
  quadrature. Its matrix elements are exact compressions of the untruncated
  operator.
* polar: the unitary factor U of the truncated F = U H. Where F is normal,
  F / F^+ = U^2, so U realizes the square root.

Truncated F is not normal at the edge and has an exact kernel (one vector in
each sector q <= 0; the q = 0 one is the truncated |xi = 0>). The graded polar
factor therefore is a partial isometry, and the kernel is reported rather
than resolved.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .fock import (OperatorMatrix, TwoModeBasis, commutator, identity, interior_sup_norm,
                   number_difference)
from .quad import QuadratureGrid, make_grid
from .rs_field import rs_operators
from .xi_rep import ModeConfig, OnePhotonState, node_coefficients, one_photon_overlap

log = logging.getLogger(__name__)

KERNEL_RTOL = 1e-10


def _check_grid(basis: TwoModeBasis, grid: QuadratureGrid):
    N = basis.cutoff
    # harmonics up to e^{i(2N+1)theta} occur in e^{i theta} c c*; they alias unless M > 2N + 1
    if grid.angular_order <= 2 * N + 1:
        raise ValueError(f"angular_order {grid.angular_order} too coarse for cutoff {N}; need > {2 * N + 1}")
    if grid.radial_order < N:
        raise ValueError(f"radial_order {grid.radial_order} too coarse for cutoff {N}; need >= {N}")


def spectral_operator(angle_fn, mode: ModeConfig, basis: TwoModeBasis, grid: QuadratureGrid) -> np.ndarray:
    """sum_nodes w g(theta) c(xi) c(xi)^+ for a function g of the xi angle.

    Elements of even and odd radial parity are integrated on the matching
    grid of the same orders, which makes every polynomial radial integrand exact.
    """
    _check_grid(basis, grid)
    parity_odd = ((basis.m + basis.n)[:, None] + (basis.m + basis.n)[None, :]) % 2 == 1
    out = np.zeros((basis.dim, basis.dim), dtype=complex)
    for parity, mask in (("even", ~parity_odd), ("odd", parity_odd)):
        g = grid.twin(parity)
        C = node_coefficients(basis, g, mode)
        A = (C.T * (g.weights * angle_fn(g.node_angles))) @ C.conj()
        out[mask] = A[mask]
    return out


def phase_operator_spectral(mode: ModeConfig, basis: TwoModeBasis, grid: QuadratureGrid) -> OperatorMatrix:
    M = spectral_operator(lambda th: np.exp(1j * th), mode, basis, grid)
    return OperatorMatrix(basis, M, label="e^{i Theta} (spectral)")


def _theta_branch(theta: np.ndarray) -> np.ndarray:
    """theta on [0, 2 pi); the node on the cut gets the mean of both sides, pi."""
    th = np.mod(theta, 2 * np.pi)
    return np.where(th == 0.0, np.pi, th)


def theta_operator(mode: ModeConfig, basis: TwoModeBasis, grid: QuadratureGrid) -> OperatorMatrix:
    T = spectral_operator(_theta_branch, mode, basis, grid)
    # Hermitian in exact arithmetic; symmetrize away BLAS rounding
    T = 0.5 * (T + T.conj().T)
    return OperatorMatrix(basis, T, hermitian=True, label="Theta")


@dataclass(frozen=True)
class PolarFactor:
    U: OperatorMatrix
    H: OperatorMatrix
    kernel: dict[int, int]  # sector q -> number of (near-)null directions of F there
    graded: bool

    @property
    def kernel_dim(self) -> int:
        return sum(self.kernel.values())


def polar_factor(F: OperatorMatrix, graded: bool = True, rtol: float = KERNEL_RTOL) -> PolarFactor:
    """F = U H with H = (F^+ F)^{1/2}.

    ``graded=True`` decomposes each block F: S_q -> S_{q-1} separately, so U
    lowers Q by exactly one, and U is zero on ker F. ``graded=False`` is the
    plain SVD polar factor: unitary, but it pairs ker F with coker F
    arbitrarily and so mixes Q sectors.
    """
    basis = F.basis
    entries = F.entries
    if not graded:
        U, H = scipy.linalg.polar(entries)
        evals = np.linalg.eigvalsh(0.5 * (H + H.conj().T))
        floor = rtol * max(evals.max(), 1.0)
        kernel = {}
        if np.any(evals <= floor):
            kernel[0] = int(np.sum(evals <= floor))  # not sector-resolved
        return PolarFactor(OperatorMatrix(basis, U, label="U"), OperatorMatrix(basis, H), kernel, False)

    q = basis.q
    smax = np.linalg.norm(entries, 2)
    U = np.zeros_like(entries)
    H = np.zeros_like(entries)
    kernel = {}
    N = basis.cutoff
    for s in range(-N, N + 1):
        cols = np.flatnonzero(q == s)
        rows = np.flatnonzero(q == s - 1)
        if rows.size == 0:
            kernel[s] = cols.size
            continue
        block = entries[np.ix_(rows, cols)]
        W, sv, Vh = np.linalg.svd(block, full_matrices=False)
        keep = sv > rtol * smax
        U[np.ix_(rows, cols)] = W[:, keep] @ Vh[keep]
        H[np.ix_(cols, cols)] = (Vh.conj().T * sv) @ Vh
        nk = cols.size - int(keep.sum())
        if nk:
            kernel[s] = nk
    if kernel:
        log.debug("F has %d near-null directions in sectors %s", sum(kernel.values()), sorted(kernel))
    return PolarFactor(OperatorMatrix(basis, U, label="U"), OperatorMatrix(basis, H, hermitian=False),
                       kernel, True)


def phase_operator_polar(mode: ModeConfig, basis: TwoModeBasis, graded: bool = True) -> OperatorMatrix:
    return polar_factor(rs_operators(mode, basis).F, graded=graded).U


@dataclass(frozen=True)
class PhaseOperatorPair:
    spectral: OperatorMatrix
    polar: OperatorMatrix
    mode: ModeConfig
    radial_order: int
    angular_order: int
    kernel: dict[int, int] = field(default_factory=dict)

    @property
    def basis(self) -> TwoModeBasis:
        return self.spectral.basis

    def agreement(self, margin: int) -> float:
        return interior_sup_norm(self.spectral - self.polar, margin)


def phase_operator_pair(mode: ModeConfig, basis: TwoModeBasis, grid: QuadratureGrid) -> PhaseOperatorPair:
    pf = polar_factor(rs_operators(mode, basis).F, graded=True)
    return PhaseOperatorPair(phase_operator_spectral(mode, basis, grid), pf.U, mode,
                             grid.radial_order, grid.angular_order, pf.kernel)


def unitarity_residual(M: OperatorMatrix, margin: int) -> float:
    return interior_sup_norm(M.dag @ M - identity(M.basis), margin)


def phase_q_commutators(M: OperatorMatrix, basis: TwoModeBasis, margin: int) -> tuple[float, float]:
    """(||P([Q,M] + M)P||, ||P(M Q M^+ - Q - 1)P||) on the interior m, n <= N - margin."""
    Q = number_difference(basis)
    first = interior_sup_norm(commutator(Q, M) + M, margin)
    second = interior_sup_norm(M @ Q @ M.dag - Q - identity(basis), margin)
    return first, second


def theta_commutator_residual(theta: OperatorMatrix, margin: int) -> float:
    """||P([Q, Theta] - i)P||. Diagnostic only: a bounded Theta cannot satisfy [Q, Theta] = i."""
    Q = number_difference(theta.basis)
    return interior_sup_norm(commutator(Q, theta) - 1j * identity(theta.basis), margin)


@dataclass(frozen=True, eq=False)
class PolarizationDistribution:
    theta: np.ndarray
    values: np.ndarray
    radial_order: int
    state: OnePhotonState | None = None

    @property
    def dtheta(self) -> float:
        return 2 * np.pi / self.theta.size

    def total(self) -> float:
        return float(np.sum(self.values) * self.dtheta)

    def moment(self, order: int) -> complex:
        return complex(np.sum(np.exp(1j * order * self.theta) * self.values) * self.dtheta)


def analytic_distribution(state: OnePhotonState, theta) -> np.ndarray:
    """(1/2 pi) |c+ e^{-i theta} + c- e^{i theta}|^2."""
    theta = np.asarray(theta, dtype=float)
    amp = state.c_plus * np.exp(-1j * theta) + state.c_minus * np.exp(1j * theta)
    return np.abs(amp) ** 2 / (2 * np.pi)


def analytic_moment(state: OnePhotonState, order: int) -> complex:
    if order == 2:
        return state.c_plus * np.conj(state.c_minus)
    if order == -2:
        return np.conj(state.c_plus) * state.c_minus
    if order == 0:
        return 1.0 + 0j
    return 0j


def pol_distribution(state: OnePhotonState, theta_count: int, radial_order: int = 4) -> PolarizationDistribution:
    """P(theta) = int_0^inf (r dr / pi) |<xi|psi>|^2 with the closed-form one-photon overlap.

    The radial integrand is r^2 e^{-r^2} |...|^2, exact for radial_order >= 1.
    """
    if theta_count < 8:
        raise ValueError(f"theta_count must be >= 8, got {theta_count}")
    grid = make_grid(radial_order, theta_count)
    ov = one_photon_overlap(grid.nodes, state, gaussian=False)
    dens = (np.abs(ov) ** 2).reshape(grid.radial_order, grid.angular_order)
    values = grid.radial_weights @ dens / np.pi
    return PolarizationDistribution(grid.angular_nodes.copy(), values, radial_order, state)


def pol_distribution_vector(psi, basis: TwoModeBasis, mode: ModeConfig, theta_count: int,
                            radial_order: int) -> PolarizationDistribution:
    """P(theta) for an arbitrary state vector, from truncated coefficient overlaps.

    The radial integrand is split into its even and odd parts in r (the odd
    part via xi -> -xi), each integrated on its own exact rule. Exact for
    states supported on m + n <= 2 * radial_order - 1 or so.
    """
    psi = np.asarray(psi, dtype=complex)
    if psi.shape != (basis.dim,):
        raise ValueError(f"state has shape {psi.shape}, basis dim is {basis.dim}")
    if theta_count < 8:
        raise ValueError(f"theta_count must be >= 8, got {theta_count}")
    values = np.zeros(theta_count)
    for parity, sign in (("even", 1.0), ("odd", -1.0)):
        g = make_grid(radial_order, theta_count, parity)
        C = node_coefficients(basis, g, mode)
        # xi -> -xi multiplies <m,n|xi> by (-1)^(m+n)
        flip = np.where((basis.m + basis.n) % 2 == 1, -1.0, 1.0)
        plus = np.abs(C.conj() @ psi) ** 2
        minus = np.abs((C * flip).conj() @ psi) ** 2
        part = 0.5 * (plus + sign * minus)
        values += g.radial_weights @ part.reshape(g.radial_order, g.angular_order) / np.pi
    return PolarizationDistribution(make_grid(1, theta_count).angular_nodes.copy(), values, radial_order)


def circular_moment(state: OnePhotonState, order: int, theta_count: int = 64, radial_order: int = 4) -> complex:
    """int_0^{2 pi} e^{i order theta} P(theta) d theta by the angular rule."""
    if order < 1:
        raise ValueError("order must be >= 1")
    return pol_distribution(state, theta_count, radial_order).moment(order)
