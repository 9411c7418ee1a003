"""Finite-g eigenstates of the relative motion and harmonic-approximation levels."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
from scipy.linalg import eigh

from .coulomb import DEFAULT_LEGENDRE_ORDER, SectorBasis, assemble_relative_hamiltonian
from .errors import ConfigurationError, DomainError
from .model import SectorLabel, TrapParams

DEFAULT_N_MAX = 28
LARGE_G_N_MAX = 36


def default_n_max(g: float) -> int:
    """Basis cutoff heuristic: more quanta once the state localizes away from the origin."""
    return LARGE_G_N_MAX if g > 200.0 else DEFAULT_N_MAX


@dataclass(frozen=True)
class TwoBodyState:
    """One relative-motion eigenstate combined with the CM ground state."""

    trap: TrapParams
    sector: SectorLabel
    basis: SectorBasis
    rel_coefficients: np.ndarray
    rel_energy: float
    cm_quanta: tuple[int, int] = (0, 0)

    @property
    def cm_energy(self) -> float:
        n, m = self.cm_quanta
        return 2.0 * (n + 0.5) + 2.0 * self.trap.epsilon * (m + 0.5)

    @property
    def total_energy(self) -> float:
        return self.rel_energy + self.cm_energy


@dataclass
class SpectrumTable:
    """Rows of (g, epsilon, sector, level, E_rel, gap to the sector ground level)."""

    rows: list[tuple[float, float, str, int, float, float]] = field(default_factory=list)

    def extend_from_states(self, states: Sequence[TwoBodyState]) -> None:
        if not states:
            return
        e0 = states[0].rel_energy
        for i, s in enumerate(states):
            self.rows.append(
                (s.trap.g, s.trap.epsilon, s.sector.short_name(), i,
                 s.rel_energy, s.rel_energy - e0)
            )


def eigensolve_sector(
    t: TrapParams,
    sector: SectorLabel,
    n_max: int | None = None,
    k: int = 4,
    legendre_order: int = DEFAULT_LEGENDRE_ORDER,
    check_convergence: bool = False,
) -> list[TwoBodyState]:
    """The k lowest relative-motion eigenstates of one parity sector.

    Eigenvector phases are fixed by making the largest-magnitude coefficient
    positive so downstream RDM signs are reproducible.
    """
    if n_max is None:
        n_max = default_n_max(t.g)
    basis = SectorBasis.build(sector, n_max)
    if k > basis.size:
        raise ConfigurationError(
            f"requested k={k} eigenpairs but the sector basis has only {basis.size} functions"
        )
    h = assemble_relative_hamiltonian(
        t, basis, legendre_order=legendre_order, check_convergence=check_convergence
    )
    energies, vectors = eigh(h, subset_by_index=(0, k - 1))
    states = []
    for i in range(k):
        v = vectors[:, i]
        v = v / np.linalg.norm(v)
        if v[np.argmax(np.abs(v))] < 0:
            v = -v
        states.append(
            TwoBodyState(
                trap=t, sector=sector, basis=basis,
                rel_coefficients=v, rel_energy=float(energies[i]),
            )
        )
    return states


def harmonic_energy(n: int, m: int, t: TrapParams) -> float:
    """Asymptotic relative-motion level from the harmonic approximation.

    E_nm = 3 (g/2)^(2/3) + 2 sqrt(3) (n + 1/2) + 2 (m + 1/2) sqrt(eps^2 - 1).
    """
    if n < 0 or m < 0:
        raise DomainError(f"quantum numbers must be >= 0, got ({n}, {m})")
    if t.epsilon <= 1.0:
        raise DomainError(
            f"harmonic approximation needs epsilon > 1, got {t.epsilon}"
        )
    if t.g <= 0.0:
        raise DomainError(f"harmonic approximation needs g > 0, got {t.g}")
    return (
        3.0 * (t.g / 2.0) ** (2.0 / 3.0)
        + 2.0 * math.sqrt(3.0) * (n + 0.5)
        + 2.0 * (m + 0.5) * math.sqrt(t.epsilon**2 - 1.0)
    )


def spectrum_sweep(
    g_grid: Iterable[float],
    epsilon: float,
    sectors: Sequence[SectorLabel],
    n_max: int | None = None,
    k: int = 4,
    legendre_order: int = DEFAULT_LEGENDRE_ORDER,
) -> SpectrumTable:
    """Relative energies and excitation gaps over a sorted g grid."""
    g_values = list(g_grid)
    if not g_values:
        raise ConfigurationError("g grid must be nonempty")
    if sorted(g_values) != g_values:
        raise ConfigurationError("g grid must be sorted ascending")
    table = SpectrumTable()
    for g in g_values:
        for sector in sectors:
            trap = TrapParams(g=g, epsilon=epsilon)
            try:
                states = eigensolve_sector(
                    trap, sector, n_max=n_max, k=k, legendre_order=legendre_order
                )
            except Exception as exc:
                raise type(exc)(
                    f"spectrum sweep failed at g={g}, epsilon={epsilon}, "
                    f"sector={sector.short_name()}: {exc}"
                ) from exc
            table.extend_from_states(states)
    return table


def log_grid(g_min: float, g_max: float, points: int) -> np.ndarray:
    """Logarithmically spaced coupling grid, matching the ln(g) presentation."""
    if not g_min > 0.0 or g_max < g_min or points < 1:
        raise ConfigurationError(
            f"invalid log grid spec (g_min={g_min}, g_max={g_max}, points={points})"
        )
    return np.geomspace(g_min, g_max, points)
