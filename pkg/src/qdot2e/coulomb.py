"""Coulomb matrix elements and relative-motion Hamiltonian assembly.

The singular interaction 1/r is handled with the Gaussian integral transform
1/r = (2/sqrt(pi)) * Integral_0^inf exp(-u^2 r^2) du, which factorizes every
matrix element into products of 1D Gaussian-damped overlaps.  The outer
u-integral is mapped onto [0, pi/2) by u = tan(theta) and done with
Gauss-Legendre quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import AccuracyError, ConfigurationError, DomainError
from .hobasis import gauss_legendre, gaussian_damped_overlap_table
from .model import SectorLabel, TrapParams

DEFAULT_LEGENDRE_ORDER = 96
ELEMENT_TOLERANCE = 1e-10


class BasisIndex2D(NamedTuple):
    """Quantum numbers of a product function phi_nx(x) phi_ny(sqrt(eps) y)."""

    nx: int
    ny: int


@dataclass(frozen=True)
class SectorBasis:
    """Deterministic total-quanta-truncated basis for one parity sector."""

    sector: SectorLabel
    cutoff: int
    members: tuple[BasisIndex2D, ...]

    @classmethod
    def build(cls, sector: SectorLabel, n_max: int) -> "SectorBasis":
        if n_max < 0:
            raise ConfigurationError(f"n_max must be >= 0, got {n_max}")
        px = 0 if sector.x_parity == "even" else 1
        py = 0 if sector.y_parity == "even" else 1
        members = [
            BasisIndex2D(nx, ny)
            for total in range(n_max + 1)
            for nx in range(px, total + 1, 2)
            if (ny := total - nx) % 2 == py
        ]
        members.sort(key=lambda b: (b.nx + b.ny, b.nx))
        if not members:
            raise ConfigurationError(
                f"empty basis for sector {sector.short_name()} at n_max={n_max}"
            )
        return cls(sector=sector, cutoff=n_max, members=tuple(members))

    @property
    def size(self) -> int:
        return len(self.members)


def _outer_rule(order: int):
    """Gauss-Legendre nodes for the u = tan(theta) transform of the outer integral."""
    rule = gauss_legendre(order, 0.0, math.pi / 2.0)
    u = np.tan(rule.nodes)
    # weight includes du = sec^2(theta) dtheta and the 2/sqrt(pi) prefactor
    w = rule.weights * (1.0 + u * u) * (2.0 / math.sqrt(math.pi))
    return u, w


def _coulomb_matrix(basis: SectorBasis, epsilon: float, legendre_order: int) -> np.ndarray:
    nxa = np.array([b.nx for b in basis.members])
    nya = np.array([b.ny for b in basis.members])
    nx_max = int(nxa.max())
    ny_max = int(nya.max())
    u_nodes, u_weights = _outer_rule(legendre_order)
    vc = np.zeros((basis.size, basis.size))
    ix = np.ix_(nxa, nxa)
    iy = np.ix_(nya, nya)
    for u, w in zip(u_nodes, u_weights):
        ox = gaussian_damped_overlap_table(nx_max, 1.0, u)
        oy = gaussian_damped_overlap_table(ny_max, math.sqrt(epsilon), u)
        vc += w * ox[ix] * oy[iy]
    return 0.5 * (vc + vc.T)


def coulomb_element(
    a: BasisIndex2D,
    b: BasisIndex2D,
    epsilon: float,
    legendre_order: int = DEFAULT_LEGENDRE_ORDER,
    tolerance: float = ELEMENT_TOLERANCE,
) -> float:
    """Matrix element <a| 1/sqrt(x^2 + y^2) |b> in the relative product basis.

    The x basis has unit scale, the y basis scale sqrt(epsilon).  Convergence
    of the outer quadrature is checked against a coarser rule; failure raises
    AccuracyError with the estimate.
    """
    if min(a.nx, a.ny, b.nx, b.ny) < 0:
        raise DomainError("basis indices must be nonnegative")
    if epsilon < 1.0:
        raise DomainError(f"epsilon must be >= 1 (canonical form), got {epsilon}")
    if (a.nx + b.nx) % 2 == 1 or (a.ny + b.ny) % 2 == 1:
        return 0.0

    def evaluate(order: int) -> float:
        u_nodes, u_weights = _outer_rule(order)
        total = 0.0
        for u, w in zip(u_nodes, u_weights):
            ox = gaussian_damped_overlap_table(max(a.nx, b.nx), 1.0, u)
            oy = gaussian_damped_overlap_table(max(a.ny, b.ny), math.sqrt(epsilon), u)
            total += w * ox[a.nx, b.nx] * oy[a.ny, b.ny]
        return total

    value = evaluate(legendre_order)
    estimate = abs(value - evaluate(max(8, (2 * legendre_order) // 3)))
    if estimate > tolerance:
        raise AccuracyError(
            f"outer Coulomb quadrature not converged for {a} | {b}", estimate
        )
    return value


def assemble_relative_hamiltonian(
    t: TrapParams,
    basis: SectorBasis,
    legendre_order: int = DEFAULT_LEGENDRE_ORDER,
    tolerance: float = 1e-9,
    check_convergence: bool = True,
) -> np.ndarray:
    """Relative-motion Hamiltonian H = D + g * Vc over the sector basis.

    D is the exactly diagonal oscillator part with entries
    (2 nx + 1) + epsilon (2 ny + 1); Vc is the Coulomb matrix.
    """
    if t.epsilon < 1.0:
        raise DomainError(f"epsilon must be >= 1 (canonical form), got {t.epsilon}")
    diag = np.array([(2 * b.nx + 1) + t.epsilon * (2 * b.ny + 1) for b in basis.members])
    h = np.diag(diag)
    if t.g != 0.0:
        vc = _coulomb_matrix(basis, t.epsilon, legendre_order)
        if check_convergence:
            coarse = _coulomb_matrix(
                basis, t.epsilon, max(8, (2 * legendre_order) // 3)
            )
            estimate = float(np.max(np.abs(vc - coarse)))
            if estimate > tolerance:
                raise AccuracyError(
                    "Coulomb matrix assembly did not reach its accuracy target",
                    estimate,
                )
        h = h + t.g * vc
    return h


def coulomb_matrix(
    basis: SectorBasis,
    epsilon: float,
    legendre_order: int = DEFAULT_LEGENDRE_ORDER,
) -> np.ndarray:
    """The bare Coulomb matrix Vc (coefficient of g) over the sector basis."""
    if epsilon < 1.0:
        raise DomainError(f"epsilon must be >= 1 (canonical form), got {epsilon}")
    return _coulomb_matrix(basis, epsilon, legendre_order)
