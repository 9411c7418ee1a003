"""Natural-orbital occupancies and entanglement entropies of two-electron states.

The two-particle amplitude is re-expanded over an orthonormal single-particle
2D oscillator family matched to the one-particle confinement (scales sqrt(2)
in x and sqrt(2*eps) in y).  The spatial reduced density matrix is then C C^T
for the coefficient matrix C, so occupancies are squared singular values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, DataError, DomainError, TruncationError
from .hobasis import eval_ho_many, gauss_hermite
from .model import SectorLabel
from .solver import TwoBodyState

COMPLETENESS_GATE = 0.999
SYMMETRY_TOLERANCE = 1e-10
NORMALIZATION_TOLERANCE = 1e-3
PAIRING_TOLERANCE = 1e-8
ZERO_OCCUPANCY_RATIO = 1e-6


@dataclass(frozen=True)
class CoefficientMatrix:
    """Expansion of the two-particle amplitude over single-particle pairs."""

    matrix: np.ndarray
    symmetry: str  # "symmetric" | "antisymmetric"
    completeness: float

    def __post_init__(self):
        sign = 1.0 if self.symmetry == "symmetric" else -1.0
        if self.symmetry not in ("symmetric", "antisymmetric"):
            raise DataError(f"unknown symmetry {self.symmetry!r}")
        deviation = np.max(np.abs(self.matrix - sign * self.matrix.T))
        if deviation > SYMMETRY_TOLERANCE:
            raise DataError(
                f"coefficient matrix violates {self.symmetry} structure "
                f"(deviation {deviation:.3e})"
            )


@dataclass(frozen=True)
class SchmidtSpectrum:
    """Ordered natural-orbital occupancies and Schmidt coefficients."""

    occupancies: np.ndarray
    coefficients: np.ndarray | None
    degeneracy_pairs: bool
    completeness: float = 1.0


def cross_overlap_tensor(
    sp_scale: float,
    cm_scale: float,
    rel_scale: float,
    n_sp: int,
    n_rel: int,
    order: int | None = None,
) -> np.ndarray:
    """1D cross-overlap tensor T[p, q, n] between particle and CM/relative pictures.

    T[p, q, n] = Integral chi_p(x1) chi_q(x2) phi0_cm((x1+x2)/2) phi_n(x2-x1)
    over the plane, with chi of scale ``sp_scale``, the CM ground function of
    scale ``cm_scale`` and relative functions of scale ``rel_scale``.  The
    quadrature grid is scaled to the combined Gaussian so the integrand is a
    polynomial times the tensor Gauss-Hermite weight.
    """
    if n_sp < 1 or n_rel < 1:
        raise ConfigurationError("tensor sizes must be >= 1")
    # combined Gaussian exp(-gamma^2 (x1^2 + x2^2)/...) per variable
    gamma = math.sqrt(sp_scale**2 / 2.0 + cm_scale**2 / 8.0 + rel_scale**2 / 2.0)
    if order is None:
        order = (n_sp + n_rel) // 2 + 8
    rule = gauss_hermite(order)
    x = rule.nodes / gamma
    # total weights: w * exp(t^2) / gamma turns the GH rule into a plain integral rule
    with np.errstate(over="raise"):
        w_total = rule.weights * np.exp(rule.nodes**2) / gamma

    a = eval_ho_many(n_sp - 1, sp_scale, x) * w_total  # (P, Q)
    x1 = x[:, None]
    x2 = x[None, :]
    cm0 = eval_ho_many(0, cm_scale, 0.5 * (x1 + x2))[0]  # (Q, Q)
    rel = eval_ho_many(n_rel - 1, rel_scale, x2 - x1)  # (N, Q, Q)
    core = rel * cm0  # (N, Q, Q)
    # T[p, q, n] = sum_ij a[p, i] a[q, j] core[n, i, j]
    t = np.tensordot(a, core, axes=([1], [1]))  # (P, N, Q)
    t = np.tensordot(t, a, axes=([2], [1]))  # (P, N, P)
    return np.ascontiguousarray(np.transpose(t, (0, 2, 1)))


def single_particle_coefficients(
    state: TwoBodyState,
    sp_cutoff: int | tuple[int, int],
    quad_order: int | None = None,
) -> CoefficientMatrix:
    """Coefficient matrix C_ab = <chi_a(r1) chi_b(r2) | Psi> with CM ground factor.

    ``sp_cutoff`` is the maximum single-particle quantum number per direction
    (one value for both or an (x, y) pair).  Raises TruncationError when the
    captured norm falls below the completeness gate.
    """
    if isinstance(sp_cutoff, int):
        px, py = sp_cutoff, sp_cutoff
    else:
        px, py = sp_cutoff
    eps = state.trap.epsilon
    members = state.basis.members
    nx_max = max(b.nx for b in members)
    ny_max = max(b.ny for b in members)
    if min(px, py) < 0:
        raise ConfigurationError("sp_cutoff must be nonnegative")

    c2 = np.zeros((nx_max + 1, ny_max + 1))
    for b, c in zip(members, state.rel_coefficients):
        c2[b.nx, b.ny] = c

    tx = cross_overlap_tensor(
        math.sqrt(2.0), 2.0, 1.0, px + 1, nx_max + 1, order=quad_order
    )
    ty = cross_overlap_tensor(
        math.sqrt(2.0 * eps), 2.0 * math.sqrt(eps), math.sqrt(eps),
        py + 1, ny_max + 1, order=quad_order,
    )
    # C[ax, ay, bx, by] = sum_{n, m} c2[n, m] Tx[ax, bx, n] Ty[ay, by, m]
    tyc = np.tensordot(ty, c2, axes=([2], [1]))  # (ay, by, n)
    c4 = np.einsum("acn,bdn->abcd", tx, tyc, optimize=True)
    dim = (px + 1) * (py + 1)
    matrix = c4.reshape(dim, dim)

    completeness = float(np.sum(matrix * matrix))
    symmetry = state.sector.spatial_symmetry
    # wash out quadrature-level asymmetry before the structural check
    sign = 1.0 if symmetry == "symmetric" else -1.0
    matrix = 0.5 * (matrix + sign * matrix.T)
    if completeness < COMPLETENESS_GATE:
        raise TruncationError(
            f"single-particle expansion too incomplete at sp_cutoff=({px}, {py}); "
            "raise sp_cutoff", completeness,
        )
    return CoefficientMatrix(matrix=matrix, symmetry=symmetry, completeness=completeness)


def schmidt_spectrum(c: CoefficientMatrix) -> SchmidtSpectrum:
    """Natural-orbital occupancies (squared singular values) of a coefficient matrix.

    Symmetric matrices also yield the signed Schmidt coefficients k_l with
    lambda_l = k_l^2; antisymmetric matrices yield occupancies in degenerate
    pairs.
    """
    if c.symmetry == "symmetric":
        eigvals = np.linalg.eigvalsh(0.5 * (c.matrix + c.matrix.T))
        order = np.argsort(-np.abs(eigvals), kind="stable")
        k = eigvals[order]
        return SchmidtSpectrum(
            occupancies=k * k, coefficients=k,
            degeneracy_pairs=False, completeness=c.completeness,
        )
    s = np.linalg.svd(c.matrix, compute_uv=False)
    lam = np.sort(s * s)[::-1]
    pairs = lam[: 2 * (len(lam) // 2)].reshape(-1, 2)
    mismatch = np.max(np.abs(pairs[:, 0] - pairs[:, 1])) if len(pairs) else 0.0
    if mismatch > PAIRING_TOLERANCE:
        raise DataError(
            f"antisymmetric occupancies fail pairwise degeneracy (gap {mismatch:.3e})"
        )
    return SchmidtSpectrum(
        occupancies=lam, coefficients=None,
        degeneracy_pairs=True, completeness=c.completeness,
    )


def _normalized_occupancies(spec: SchmidtSpectrum) -> np.ndarray:
    lam = np.asarray(spec.occupancies, dtype=float)
    if np.any(lam < -1e-12):
        raise DataError("occupancies must be nonnegative")
    total = float(np.sum(lam))
    if abs(total - 1.0) > NORMALIZATION_TOLERANCE:
        raise DataError(
            f"occupancy spectrum too far from unit trace (sum {total:.6f}); "
            "the coefficient matrix is too truncated"
        )
    return np.clip(lam, 0.0, None) / total


def spatial_vn_entropy(occupancies: np.ndarray) -> float:
    """-sum lambda log2 lambda with 0 log 0 = 0."""
    lam = np.asarray(occupancies, dtype=float)
    lam = lam[lam > 0.0]
    return float(-np.sum(lam * np.log2(lam)))


def vn_entropy(spec: SchmidtSpectrum, sector: SectorLabel) -> float:
    """Total von Neumann entropy in bits: spin contribution plus spatial part."""
    lam = _normalized_occupancies(spec)
    spin = 1.0 if sector.spin_projection == 0 else 0.0
    return spin + spatial_vn_entropy(lam)


def linear_entropy(spec: SchmidtSpectrum, sector: SectorLabel) -> float:
    """Linear entropy 1 - Tr rho_red^2 of the full (spin x space) RDM."""
    lam = _normalized_occupancies(spec)
    w_spin = 0.5 if sector.spin_projection == 0 else 1.0
    return 1.0 - w_spin * float(np.sum(lam * lam))


def count_nonzero_occupancies(spec: SchmidtSpectrum) -> int:
    """Occupancies above the Slater-rank cutoff (relative to the largest)."""
    lam = np.asarray(spec.occupancies, dtype=float)
    if lam.size == 0 or lam[0] <= 0.0:
        return 0
    return int(np.sum(lam >= ZERO_OCCUPANCY_RATIO * lam[0]))
