"""Truncated two-mode Fock space and elementary operators.

States |m, n> carry m left-handed (mode a) and n right-handed (mode b)
photons with 0 <= m, n <= N. The flat index is row-major with m outer:
``index = m * (N + 1) + n``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

HERMITIAN_TOL = 1e-12


@dataclass(frozen=True)
class TwoModeBasis:
    cutoff: int

    def __post_init__(self):
        if int(self.cutoff) != self.cutoff or self.cutoff < 0:
            raise ValueError(f"cutoff must be a non-negative integer, got {self.cutoff!r}")

    @property
    def dim(self) -> int:
        return (self.cutoff + 1) ** 2

    def index(self, m: int, n: int) -> int:
        N = self.cutoff
        if not (0 <= m <= N and 0 <= n <= N):
            raise IndexError(f"({m}, {n}) outside cutoff {N}")
        return m * (N + 1) + n

    def state(self, index: int) -> tuple[int, int]:
        if not 0 <= index < self.dim:
            raise IndexError(f"index {index} outside dim {self.dim}")
        return divmod(index, self.cutoff + 1)

    @cached_property
    def m(self) -> np.ndarray:
        """Mode-a occupation of every flat index."""
        return np.repeat(np.arange(self.cutoff + 1), self.cutoff + 1)

    @cached_property
    def n(self) -> np.ndarray:
        """Mode-b occupation of every flat index."""
        return np.tile(np.arange(self.cutoff + 1), self.cutoff + 1)

    @property
    def q(self) -> np.ndarray:
        """Number difference m - n of every flat index."""
        return self.m - self.n

    def interior(self, margin: int) -> np.ndarray:
        """Boolean mask of indices with m, n <= N - margin."""
        if margin < 0:
            raise ValueError("margin must be non-negative")
        top = self.cutoff - margin
        return (self.m <= top) & (self.n <= top)

    def basis_vector(self, m: int, n: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=complex)
        v[self.index(m, n)] = 1.0
        return v


def make_basis(cutoff: int) -> TwoModeBasis:
    return TwoModeBasis(cutoff)


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    """Dense operator over a ``TwoModeBasis``.

    ``hermitian=True`` is a claim checked at construction time.
    """

    basis: TwoModeBasis
    entries: np.ndarray
    hermitian: bool = False
    label: str = field(default="", compare=False)

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=complex)
        d = self.basis.dim
        if entries.shape != (d, d):
            raise ValueError(f"entries shape {entries.shape} does not match basis dim {d}")
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)
        if self.hermitian:
            dev = np.max(np.abs(entries - entries.conj().T), initial=0.0)
            if dev > HERMITIAN_TOL:
                raise ValueError(f"{self.label or 'operator'} flagged Hermitian but ||M - M^+|| = {dev:.3e}")

    @property
    def dag(self) -> "OperatorMatrix":
        return OperatorMatrix(self.basis, self.entries.conj().T, self.hermitian,
                              label=f"{self.label}^+" if self.label else "")

    def __matmul__(self, other):
        if isinstance(other, OperatorMatrix):
            _check_same_basis(self, other)
            return OperatorMatrix(self.basis, self.entries @ other.entries)
        return self.entries @ np.asarray(other)

    def __add__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        _check_same_basis(self, other)
        return OperatorMatrix(self.basis, self.entries + other.entries)

    def __sub__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        _check_same_basis(self, other)
        return OperatorMatrix(self.basis, self.entries - other.entries)

    def __neg__(self) -> "OperatorMatrix":
        return OperatorMatrix(self.basis, -self.entries, self.hermitian)

    def __mul__(self, scalar) -> "OperatorMatrix":
        return OperatorMatrix(self.basis, self.entries * scalar)

    __rmul__ = __mul__

    def element(self, bra: tuple[int, int], ket: tuple[int, int]) -> complex:
        """<bra| M |ket> for Fock labels (m, n)."""
        return complex(self.entries[self.basis.index(*bra), self.basis.index(*ket)])

    def interior_block(self, margin: int) -> np.ndarray:
        mask = self.basis.interior(margin)
        return self.entries[np.ix_(mask, mask)]


def _check_same_basis(x: OperatorMatrix, y: OperatorMatrix):
    if x.basis != y.basis:
        raise ValueError(f"basis mismatch: cutoff {x.basis.cutoff} vs {y.basis.cutoff}")


def commutator(x: OperatorMatrix, y: OperatorMatrix) -> OperatorMatrix:
    _check_same_basis(x, y)
    return OperatorMatrix(x.basis, x.entries @ y.entries - y.entries @ x.entries)


def identity(basis: TwoModeBasis) -> OperatorMatrix:
    return OperatorMatrix(basis, np.eye(basis.dim), hermitian=True, label="I")


def sup_norm(x) -> float:
    """Largest entry modulus; the ``||.||_inf`` used for every residual here."""
    a = x.entries if isinstance(x, OperatorMatrix) else np.asarray(x)
    return float(np.max(np.abs(a), initial=0.0))


def interior_sup_norm(x: OperatorMatrix, margin: int) -> float:
    return sup_norm(x.interior_block(margin))


def _single_mode_lowering(cutoff: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1, cutoff + 1, dtype=float)), 1)


def ladder_a(basis: TwoModeBasis) -> OperatorMatrix:
    eye = np.eye(basis.cutoff + 1)
    return OperatorMatrix(basis, np.kron(_single_mode_lowering(basis.cutoff), eye), label="a")


def ladder_b(basis: TwoModeBasis) -> OperatorMatrix:
    eye = np.eye(basis.cutoff + 1)
    return OperatorMatrix(basis, np.kron(eye, _single_mode_lowering(basis.cutoff)), label="b")


def number_difference(basis: TwoModeBasis) -> OperatorMatrix:
    """Q = a^+ a - b^+ b, built directly as a diagonal."""
    return OperatorMatrix(basis, np.diag(basis.q.astype(float)), hermitian=True, label="Q")


def grading_mask(basis: TwoModeBasis, shift: int) -> np.ndarray:
    """True where <row| M |col> may be nonzero for an M lowering Q by ``shift``.

    Row q must equal column q minus ``shift``.
    """
    q = basis.q
    return (q[None, :] - q[:, None]) == shift


def off_grade_sup(x: OperatorMatrix, shift: int) -> float:
    """Largest entry of ``x`` outside the allowed Q-grading band."""
    return sup_norm(np.where(grading_mask(x.basis, shift), 0.0, x.entries))
