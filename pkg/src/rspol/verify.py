"""Invariant suite behind the ``verify`` command.

Each record is ``{equation_tag, residual, tolerance, pass, cutoff, margin}``;
a few carry an extra ``trend`` field listing the same residual at smaller
cutoffs with proportional margins.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fock import make_basis
from .nfm import nfm_build, nfm_identity_residual
from .pol_phase import phase_operator_pair, phase_q_commutators
from .quad import make_grid
from .rs_field import commutator_check, eigen_residuals, normality_residual
from .xi_rep import ModeConfig, completeness_residual, normalized_overlap

EIGEN_POINTS = (1.0 + 0j, 2.0 + 1j, 0.5 * np.exp(1j * np.pi / 3))
OVERLAP_PAIRS = (
    (1.0 + 0.5j, -0.8 + 1.2j),
    (0.3 - 0.2j, 1.5 + 0.4j),
    (-1.1 - 0.7j, 0.6 - 1.3j),
    (2.0 + 0j, 0.5j),
)

TOLERANCES = {
    "eq11": 1e-3,
    "eq13": 1e-3,
    "eq13.commute": 1e-12,
    "eq14": 1e-6,
    "eq21.F": 1e-12,
    "eq21.Fdag": 1e-12,
    "eq22": 1e-8,
    "eq24": 1e-3,
    "eq18.vs.eq17": 1e-3,
    "eq27": 1e-2,
}


@dataclass(frozen=True)
class VerifyConfig:
    cutoff: int = 12
    margin: int | None = None
    radial_order: int = 40
    angular_order: int = 64
    phi: float = 0.0

    @property
    def effective_margin(self) -> int:
        return self.margin if self.margin is not None else max(1, self.cutoff // 3)


def _record(tag, residual, tolerance, cutoff, margin, **extra):
    rec = {
        "equation_tag": tag,
        "residual": float(residual),
        "tolerance": float(tolerance),
        "pass": bool(residual <= tolerance),
        "cutoff": int(cutoff),
        "margin": int(margin),
    }
    rec.update(extra)
    return rec


def mean_normalized_overlap(cutoff: int, mode: ModeConfig) -> float:
    basis = make_basis(cutoff)
    return float(np.mean([normalized_overlap(a, b, mode, basis) for a, b in OVERLAP_PAIRS]))


def _trend_cutoffs(cutoff: int) -> list[int]:
    return [n for n in (cutoff - 8, cutoff - 4) if n >= 4] + [cutoff]


def _scaled_margin(margin: int, cutoff: int, reference: int) -> int:
    return max(1, min(cutoff - 1, round(margin * cutoff / reference)))


def run_verify(cfg: VerifyConfig) -> list[dict]:
    N, mg = cfg.cutoff, cfg.effective_margin
    if N < 3:
        raise ValueError("verify needs cutoff >= 3")
    if not 1 <= mg < N:
        raise ValueError(f"margin must satisfy 1 <= margin < cutoff, got {mg}")
    mode = ModeConfig(cfg.phi)
    basis = make_basis(N)
    grid = make_grid(cfg.radial_order, cfg.angular_order)
    runs = []

    res = np.array([eigen_residuals(xi, mode, basis, mg) for xi in EIGEN_POINTS])
    runs.append(_record("eq11", res[:, 0].max(), TOLERANCES["eq11"], N, mg))
    runs.append(_record("eq13", res[:, 1].max(), TOLERANCES["eq13"], N, mg))
    runs.append(_record("eq13.commute", normality_residual(basis, mode), TOLERANCES["eq13.commute"], N, 1))

    probe = max(0, min(N - 2, N - 8))
    runs.append(_record("eq14", completeness_residual(basis, grid, probe, mode), TOLERANCES["eq14"], N, N - probe))

    # delta normalization: the normalized cross-overlap must shrink as the cutoff grows
    half = max(1, N // 2)
    runs.append(_record("eq16", mean_normalized_overlap(N, mode), mean_normalized_overlap(half, mode), N, 0,
                        reference_cutoff=half))

    qf, qfd = commutator_check(basis, mode)
    runs.append(_record("eq21.F", qf, TOLERANCES["eq21.F"], N, 0))
    runs.append(_record("eq21.Fdag", qfd, TOLERANCES["eq21.Fdag"], N, 0))

    pair = phase_operator_pair(mode, basis, grid)
    grade, conj = phase_q_commutators(pair.spectral, basis, mg)
    runs.append(_record("eq22", grade, TOLERANCES["eq22"], N, mg))
    runs.append(_record("eq24", conj, TOLERANCES["eq24"], N, mg))
    runs.append(_record("eq18.vs.eq17", pair.agreement(mg), TOLERANCES["eq18.vs.eq17"], N, mg,
                        kernel_dim=sum(pair.kernel.values())))

    trend = []
    for n in _trend_cutoffs(N):
        m = _scaled_margin(mg, n, N)
        b = make_basis(n)
        ops = nfm_build(b, make_grid(max(n, cfg.radial_order), max(2 * n + 2, cfg.angular_order)))
        trend.append({"cutoff": n, "margin": m, "residual": nfm_identity_residual(ops, m)})
    runs.append(_record("eq27", trend[-1]["residual"], TOLERANCES["eq27"], N, mg, trend=trend))
    return runs
