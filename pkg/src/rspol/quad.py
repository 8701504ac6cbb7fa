"""Product rules for the plane measure d^2 xi / pi = (1/pi) r dr dtheta.

The Gaussian e^{-|xi|^2} carried by every |xi> coefficient product is folded
into the radial weights: integrands are passed WITHOUT it. With t = r^2 the
radial integral becomes (1/2) int_0^inf g(sqrt t) e^{-t} dt.

Two radial families share this layout:

* ``parity="even"``: Gauss-Laguerre in t, exact for g(r) = p(r^2),
  deg p <= 2R - 1.
* ``parity="odd"``: generalized Gauss-Laguerre (alpha = 1/2) in t, exact for
  g(r) = r p(r^2), deg p <= 2R - 1.

Matrix elements <m,n| A |m',n'> of a diagonal-in-xi operator have radial
parity (m + n + m' + n') mod 2, so the pair covers every element exactly.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import roots_genlaguerre, roots_laguerre

PARITIES = ("even", "odd")


@dataclass(frozen=True, eq=False)
class QuadratureGrid:
    radial_order: int
    angular_order: int
    parity: str
    radial_nodes: np.ndarray    # r_i, strictly increasing
    radial_weights: np.ndarray  # u_i, Gaussian folded in
    angular_nodes: np.ndarray   # theta_j = 2 pi j / M

    @property
    def angular_weight(self) -> float:
        return 2 * np.pi / self.angular_order

    @property
    def nodes(self) -> np.ndarray:
        """Flattened xi_ij = r_i e^{i theta_j}, radial index outer."""
        return (self.radial_nodes[:, None] * np.exp(1j * self.angular_nodes)[None, :]).ravel()

    @property
    def node_radii(self) -> np.ndarray:
        return np.repeat(self.radial_nodes, self.angular_order)

    @property
    def node_angles(self) -> np.ndarray:
        return np.tile(self.angular_nodes, self.radial_order)

    @property
    def weights(self) -> np.ndarray:
        """w_ij = u_i (2 pi / M) / pi, Gaussian folded in."""
        return np.repeat(self.radial_weights * self.angular_weight / np.pi, self.angular_order)

    @property
    def explicit_weights(self) -> np.ndarray:
        """Weights for integrands that already carry e^{-|xi|^2}."""
        return self.weights * np.exp(self.node_radii ** 2)

    def integrate(self, values) -> complex:
        """(1/pi) int d^2 xi e^{-|xi|^2} g(xi) given g at ``nodes``."""
        return complex(np.dot(self.weights, np.asarray(values)))

    def twin(self, parity: str) -> "QuadratureGrid":
        if parity == self.parity:
            return self
        return make_grid(self.radial_order, self.angular_order, parity)


def make_grid(radial_order: int, angular_order: int, parity: str = "even") -> QuadratureGrid:
    if radial_order < 1:
        raise ValueError(f"radial_order must be >= 1, got {radial_order}")
    if angular_order < 4:
        raise ValueError(f"angular_order must be >= 4, got {angular_order}")
    if parity == "even":
        t, wt = roots_laguerre(radial_order)
        r = np.sqrt(t)
        u = wt / 2
    elif parity == "odd":
        t, wt = roots_genlaguerre(radial_order, 0.5)
        r = np.sqrt(t)
        u = wt / (2 * r)
    else:
        raise ValueError(f"parity must be one of {PARITIES}, got {parity!r}")
    theta = 2 * np.pi * np.arange(angular_order) / angular_order
    for a in (r, u, theta):
        a.setflags(write=False)
    return QuadratureGrid(int(radial_order), int(angular_order), parity, r, u, theta)
