"""Noh-Fougeres-Mandel cosine operator C = X / sqrt(X^2 + P^2).

X = x_a + x_b and P = p_a - p_b, so X + iP = sqrt(2) (a + b^+), which is
sqrt(2) F at phi = 0. Hence C should equal (e^{i alpha} + e^{-i alpha}) / 2
with e^{i alpha} the phi = 0 polarization operator; under truncation this
holds only in the interior and only as N grows.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fock import OperatorMatrix, TwoModeBasis, commutator, interior_sup_norm, ladder_a, ladder_b
from .pol_phase import phase_operator_spectral
from .quad import QuadratureGrid, make_grid
from .xi_rep import ModeConfig

NULL_RTOL = 1e-10


@dataclass(frozen=True)
class NfmOperators:
    X: OperatorMatrix
    P: OperatorMatrix
    C: OperatorMatrix
    exp_alpha: OperatorMatrix
    near_null: tuple[float, ...]  # eigenvalues of X^2 + P^2 dropped by the pseudo-inverse

    @property
    def basis(self) -> TwoModeBasis:
        return self.X.basis


def quadratures(basis: TwoModeBasis) -> tuple[OperatorMatrix, OperatorMatrix]:
    a, b = ladder_a(basis).entries, ladder_b(basis).entries
    ad, bd = a.conj().T, b.conj().T
    X = (a + ad + b + bd) / np.sqrt(2)
    P = (a - ad - b + bd) / (np.sqrt(2) * 1j)
    return (OperatorMatrix(basis, X, hermitian=True, label="X"),
            OperatorMatrix(basis, P, hermitian=True, label="P"))


def default_grid(basis: TwoModeBasis) -> QuadratureGrid:
    return make_grid(basis.cutoff + 2, 2 * basis.cutoff + 4)


def nfm_build(basis: TwoModeBasis, grid: QuadratureGrid | None = None, null_rtol: float = NULL_RTOL) -> NfmOperators:
    """X, P, C and e^{i alpha} at cutoff N.

    C = (X S^{-1/2} + S^{-1/2} X) / 2 with S = X^2 + P^2 formed from the
    truncated matrices. S inherits the kernel of truncated F (S = 2 F^+ F
    away from the edge); eigenvalues below ``null_rtol * ||S||`` are left out
    of the inverse square root and reported in ``near_null``.
    """
    X, P = quadratures(basis)
    S = X.entries @ X.entries + P.entries @ P.entries
    S = 0.5 * (S + S.conj().T)
    evals, V = np.linalg.eigh(S)
    keep = evals > null_rtol * np.abs(evals).max()
    inv_sqrt = np.zeros_like(evals)
    inv_sqrt[keep] = evals[keep] ** -0.5
    S_ih = (V * inv_sqrt) @ V.conj().T
    C = 0.5 * (X.entries @ S_ih + S_ih @ X.entries)
    C = 0.5 * (C + C.conj().T)
    if grid is None:
        grid = default_grid(basis)
    exp_alpha = phase_operator_spectral(ModeConfig(0.0), basis, grid)
    return NfmOperators(X, P, OperatorMatrix(basis, C, hermitian=True, label="C"), exp_alpha,
                        tuple(float(e) for e in evals[~keep]))


def _check_margin(basis: TwoModeBasis, margin: int):
    if margin < 1 or margin >= basis.cutoff:
        raise ValueError(f"margin must satisfy 1 <= margin < cutoff ({basis.cutoff}), got {margin}")


def xp_commutator(ops: NfmOperators, margin: int = 1) -> float:
    _check_margin(ops.basis, margin)
    return interior_sup_norm(commutator(ops.X, ops.P), margin)


def nfm_identity_residual(ops: NfmOperators, margin: int) -> float:
    """||P(C - (e^{i alpha} + e^{-i alpha}) / 2)P|| on m, n <= N - margin."""
    _check_margin(ops.basis, margin)
    cos_alpha = 0.5 * (ops.exp_alpha + ops.exp_alpha.dag)
    return interior_sup_norm(ops.C - cos_alpha, margin)


def interior_spectrum(C: OperatorMatrix, margin: int) -> np.ndarray:
    block = C.interior_block(margin)
    return np.linalg.eigvalsh(0.5 * (block + block.conj().T))
