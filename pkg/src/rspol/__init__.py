"""Riemann-Silberstein mode operator, its |xi> representation and the
photon polarization operator e^{i Theta} in a truncated two-mode Fock space."""

from .fock import (OperatorMatrix, TwoModeBasis, commutator, ladder_a, ladder_b, make_basis,
                   number_difference)
from .hermite2 import HermiteTable, hermite_mn, hermite_mn_series, hermite_table
from .nfm import NfmOperators, nfm_build, nfm_identity_residual
from .pol_phase import (PhaseOperatorPair, PolarizationDistribution, circular_moment, phase_operator_pair,
                        phase_operator_polar, phase_operator_spectral, phase_q_commutators, pol_distribution,
                        theta_operator)
from .quad import QuadratureGrid, make_grid
from .rs_field import RsOperators, commutator_check, eigen_residual, energy_density, rs_operators
from .xi_rep import (ModeConfig, OnePhotonState, XiState, completeness_residual, embed_one_photon, overlap_xi,
                     xi_state)

__version__ = "0.1.0"
