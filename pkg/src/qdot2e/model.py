"""Physical parameterization, symmetry sectors and classical geometry.

The two-electron Hamiltonian is brought to a dimensionless form in which
lengths are measured in units of sqrt(hbar / (2 m* omega_x)) and energies in
units of hbar*omega_x/2.  Everything downstream works with the resulting
coupling ``g`` and anisotropy ``epsilon = omega_y / omega_x``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DataError, DomainError

Parity = str  # "even" | "odd"

_PARITIES = ("even", "odd")


@dataclass(frozen=True)
class PhysicalParams:
    """Material and trap parameters of the physical Hamiltonian."""

    effective_mass: float
    dielectric: float
    omega_x: float
    omega_y: float
    elementary_charge: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        for name in ("effective_mass", "dielectric", "omega_x", "omega_y",
                     "elementary_charge", "hbar"):
            value = getattr(self, name)
            if not value > 0.0:
                raise DomainError(f"{name} must be strictly positive, got {value}")


@dataclass(frozen=True)
class TrapParams:
    """Dimensionless trap description: coupling g >= 0 and anisotropy epsilon > 0."""

    g: float
    epsilon: float

    def __post_init__(self):
        if self.g < 0.0:
            raise DomainError(f"coupling g must be nonnegative, got {self.g}")
        if not self.epsilon > 0.0:
            raise DomainError(f"anisotropy epsilon must be positive, got {self.epsilon}")

    @property
    def is_canonical(self) -> bool:
        return self.epsilon >= 1.0


def canonicalize(t: TrapParams) -> tuple[TrapParams, bool]:
    """Return an axis-swap normalized copy of ``t`` and whether a swap occurred.

    For epsilon < 1 the x and y axes are exchanged so that the tighter
    confinement is along y.  Rescaling to the new reference frequency maps
    (g, epsilon) to (g / sqrt(epsilon), 1 / epsilon).
    """
    if t.epsilon >= 1.0:
        return t, False
    return TrapParams(g=t.g / math.sqrt(t.epsilon), epsilon=1.0 / t.epsilon), True


def physical_to_dimensionless(p: PhysicalParams) -> TrapParams:
    """Map physical trap parameters to the dimensionless (g, epsilon) pair."""
    g = (p.elementary_charge**2 / p.dielectric) * math.sqrt(
        2.0 * p.effective_mass / (p.omega_x * p.hbar**3)
    )
    return TrapParams(g=g, epsilon=p.omega_y / p.omega_x)


def scaled_to_physical_energy(e_scaled: float, p: PhysicalParams) -> float:
    """Convert an energy in scaled units back to physical units (hbar*omega_x/2 per unit)."""
    return e_scaled * p.hbar * p.omega_x / 2.0


@dataclass(frozen=True)
class SectorLabel:
    """Symmetry/spin sector of a two-electron state.

    The (x, y) inversion parities of the relative wavefunction fix the spin
    character: equal parities give a singlet, mixed parities a triplet.
    """

    x_parity: Parity
    y_parity: Parity
    spin_projection: int = 0

    def __post_init__(self):
        if self.x_parity not in _PARITIES or self.y_parity not in _PARITIES:
            raise DataError(
                f"parities must be 'even' or 'odd', got ({self.x_parity}, {self.y_parity})"
            )
        if self.spin_character == "singlet":
            if self.spin_projection != 0:
                raise DataError("singlet sectors require spin_projection = 0")
        elif self.spin_projection not in (-1, 0, 1):
            raise DataError(
                f"triplet spin_projection must be in {{-1, 0, 1}}, got {self.spin_projection}"
            )

    @property
    def spin_character(self) -> str:
        return "singlet" if self.x_parity == self.y_parity else "triplet"

    @property
    def spatial_symmetry(self) -> str:
        """'symmetric' for singlet spatial parts, 'antisymmetric' for triplet."""
        return "symmetric" if self.spin_character == "singlet" else "antisymmetric"

    def short_name(self) -> str:
        return self.x_parity[0] + self.y_parity[0]

    @classmethod
    def from_short_name(cls, name: str, spin_projection: int = 0) -> "SectorLabel":
        table = {"e": "even", "o": "odd"}
        if len(name) != 2 or name[0] not in table or name[1] not in table:
            raise DataError(f"unrecognized sector name {name!r}; expected e.g. 'ee', 'oe'")
        return cls(table[name[0]], table[name[1]], spin_projection)


ALL_SECTORS = (
    SectorLabel("even", "even"),
    SectorLabel("odd", "odd"),
    SectorLabel("even", "odd"),
    SectorLabel("odd", "even"),
)


@dataclass(frozen=True)
class ClassicalGeometry:
    """Classical equilibrium of the relative potential x^2 + g/x."""

    x_cl: float
    v_min: float


def classical_geometry(t: TrapParams) -> ClassicalGeometry:
    """Equilibrium distance x_cl = (g/2)^(1/3) and potential minimum 3 (g/2)^(2/3)."""
    if t.g <= 0.0:
        raise DomainError("classical geometry requires g > 0 (no interior minimum at g = 0)")
    x_cl = (t.g / 2.0) ** (1.0 / 3.0)
    return ClassicalGeometry(x_cl=x_cl, v_min=x_cl**2 + t.g / x_cl)


def slater_rank_rule(sector: SectorLabel, nonzero_spatial_eigs: int) -> int:
    """Slater rank from the count of nonvanishing spatial RDM eigenvalues.

    States with s_z = 0 (singlet or triplet) have SR equal to the count;
    triplet states with s_z = +-1 have SR equal to half the count, which must
    therefore be even.
    """
    n = nonzero_spatial_eigs
    if n < 0:
        raise DomainError(f"eigenvalue count must be nonnegative, got {n}")
    if sector.spin_projection == 0:
        return n
    if n % 2 != 0:
        raise DataError(
            f"s_z = {sector.spin_projection} states need an even eigenvalue count "
            f"(degenerate pairs), got {n}"
        )
    return n // 2
