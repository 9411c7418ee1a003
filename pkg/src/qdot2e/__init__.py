"""Spectra and entanglement of two Coulomb-interacting electrons in a 2D trap."""

from .asymptotic import (
    AsymptoticSpectrum,
    KernelSpec,
    NystromGrid,
    asymptotic_linear_entropy,
    asymptotic_linear_entropy_from_spectrum,
    asymptotic_occupancies,
    asymptotic_vn_entropy,
    asymptotic_wavefunction,
    mehler_ratio,
    nystrom_schmidt,
)
from .coulomb import BasisIndex2D, SectorBasis, assemble_relative_hamiltonian, coulomb_element
from .entanglement import (
    CoefficientMatrix,
    SchmidtSpectrum,
    linear_entropy,
    schmidt_spectrum,
    single_particle_coefficients,
    vn_entropy,
)
from .errors import (
    AccuracyError,
    ConfigurationError,
    DataError,
    DomainError,
    GridError,
    Qdot2eError,
    TruncationError,
)
from .hobasis import HoBasis1D, QuadratureRule, eval_ho, gauss_hermite, gaussian_damped_overlap
from .model import (
    ALL_SECTORS,
    ClassicalGeometry,
    PhysicalParams,
    SectorLabel,
    TrapParams,
    canonicalize,
    classical_geometry,
    physical_to_dimensionless,
    slater_rank_rule,
)
from .solver import (
    SpectrumTable,
    TwoBodyState,
    eigensolve_sector,
    harmonic_energy,
    log_grid,
    spectrum_sweep,
)

__version__ = "0.1.0"

__all__ = [
    "ALL_SECTORS",
    "AccuracyError",
    "AsymptoticSpectrum",
    "BasisIndex2D",
    "ClassicalGeometry",
    "CoefficientMatrix",
    "ConfigurationError",
    "DataError",
    "DomainError",
    "GridError",
    "HoBasis1D",
    "KernelSpec",
    "NystromGrid",
    "PhysicalParams",
    "Qdot2eError",
    "QuadratureRule",
    "SchmidtSpectrum",
    "SectorBasis",
    "SectorLabel",
    "SpectrumTable",
    "TrapParams",
    "TruncationError",
    "TwoBodyState",
    "assemble_relative_hamiltonian",
    "asymptotic_linear_entropy",
    "asymptotic_linear_entropy_from_spectrum",
    "asymptotic_occupancies",
    "asymptotic_vn_entropy",
    "asymptotic_wavefunction",
    "canonicalize",
    "classical_geometry",
    "coulomb_element",
    "eigensolve_sector",
    "eval_ho",
    "gauss_hermite",
    "gaussian_damped_overlap",
    "harmonic_energy",
    "linear_entropy",
    "log_grid",
    "mehler_ratio",
    "nystrom_schmidt",
    "physical_to_dimensionless",
    "schmidt_spectrum",
    "single_particle_coefficients",
    "slater_rank_rule",
    "spectrum_sweep",
    "vn_entropy",
]
