"""Single-mode Riemann-Silberstein operators F = a f + b^+ f*, F^+ = a^+ f* + b f."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fock import (OperatorMatrix, TwoModeBasis, commutator, interior_sup_norm, ladder_a, ladder_b,
                   number_difference, sup_norm)
from .xi_rep import ModeConfig, xi_state


@dataclass(frozen=True)
class RsOperators:
    F: OperatorMatrix
    F_dag: OperatorMatrix
    mode: ModeConfig

    @property
    def basis(self) -> TwoModeBasis:
        return self.F.basis


def rs_operators(mode: ModeConfig, basis: TwoModeBasis) -> RsOperators:
    a, b = ladder_a(basis), ladder_b(basis)
    f = mode.f
    F = a.entries * f + b.entries.conj().T * np.conj(f)
    return RsOperators(OperatorMatrix(basis, F, label="F"), OperatorMatrix(basis, F.conj().T, label="F^+"), mode)


def _check_margin(basis: TwoModeBasis, margin: int):
    if margin < 1 or margin >= basis.cutoff:
        raise ValueError(f"margin must satisfy 1 <= margin < cutoff ({basis.cutoff}), got {margin}")


def eigen_residuals(xi: complex, mode: ModeConfig, basis: TwoModeBasis, margin: int) -> tuple[float, float]:
    """Relative interior residuals of F|xi> = xi|xi> and F^+|xi> = xi*|xi>."""
    _check_margin(basis, margin)
    ops = rs_operators(mode, basis)
    c = xi_state(xi, mode, basis).coeffs
    mask = basis.interior(margin)
    scale = np.linalg.norm(c[mask])
    res_f = np.linalg.norm((ops.F @ c - xi * c)[mask]) / scale
    res_fd = np.linalg.norm((ops.F_dag @ c - np.conj(xi) * c)[mask]) / scale
    return float(res_f), float(res_fd)


def eigen_residual(xi: complex, mode: ModeConfig, basis: TwoModeBasis, margin: int) -> float:
    return max(eigen_residuals(xi, mode, basis, margin))


def commutator_check(basis: TwoModeBasis, mode: ModeConfig) -> tuple[float, float]:
    """(||[Q,F] + F||, ||[Q,F^+] - F^+||) over the full truncated space."""
    ops = rs_operators(mode, basis)
    Q = number_difference(basis)
    return (sup_norm(commutator(Q, ops.F) + ops.F),
            sup_norm(commutator(Q, ops.F_dag) - ops.F_dag))


def normality_residual(basis: TwoModeBasis, mode: ModeConfig, margin: int = 1) -> float:
    """Interior ||[F, F^+]||; truncation only disturbs the rows m = N or n = N."""
    ops = rs_operators(mode, basis)
    return interior_sup_norm(commutator(ops.F, ops.F_dag), margin)


def energy_density(psi, mode: ModeConfig, basis: TwoModeBasis) -> float:
    """Dimensionless per-mode energy <psi|F^+ F|psi>."""
    psi = np.asarray(psi, dtype=complex)
    if psi.shape != (basis.dim,):
        raise ValueError(f"state has shape {psi.shape}, basis dim is {basis.dim}")
    if abs(np.linalg.norm(psi) - 1.0) > 1e-10:
        raise ValueError("state must have unit norm")
    edge = ~basis.interior(2)
    if np.any(np.abs(psi[edge]) > 0):
        raise ValueError(f"state has weight on m or n > {basis.cutoff - 2}, where truncated F^+F is edge-contaminated")
    ops = rs_operators(mode, basis)
    Fpsi = ops.F @ psi
    return float(np.vdot(Fpsi, Fpsi).real)
