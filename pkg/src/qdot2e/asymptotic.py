"""Strong-coupling (g -> infinity) machinery via the harmonic approximation.

The asymptotic two-particle amplitude factorizes into two Gaussian two-point
kernels, one per direction.  Their Schmidt decompositions are obtained either
by Nystrom discretization of the corresponding integral equations or from the
exact geometric (Mehler) law, which serves as an independent analytic oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import AccuracyError, DomainError, GridError
from .model import TrapParams, classical_geometry

COVERAGE_GATE = 1e-12
EPSILON_FLOOR = 1.0 + 1e-6


@dataclass(frozen=True)
class KernelSpec:
    """Gaussian two-point kernel exp(-[alpha (z-z')^2 + beta (z+z')^2] / 2)."""

    alpha: float
    beta: float

    def __post_init__(self):
        if not (self.alpha > 0.0 and self.beta > 0.0):
            raise DomainError(
                f"kernel coefficients must be positive, got ({self.alpha}, {self.beta})"
            )

    @classmethod
    def x_kernel(cls) -> "KernelSpec":
        """Kernel of the x-direction integral equation (g-independent)."""
        return cls(alpha=math.sqrt(3.0), beta=1.0)

    @classmethod
    def y_kernel(cls, epsilon: float) -> "KernelSpec":
        """Kernel of the y-direction integral equation; depends on the anisotropy."""
        if epsilon <= 1.0:
            raise DomainError(f"y kernel needs epsilon > 1, got {epsilon}")
        return cls(alpha=math.sqrt(epsilon**2 - 1.0), beta=epsilon)

    def evaluate(self, z, zp) -> np.ndarray:
        z = np.asarray(z, dtype=float)
        zp = np.asarray(zp, dtype=float)
        return np.exp(-0.5 * (self.alpha * (z - zp) ** 2 + self.beta * (z + zp) ** 2))

    def coverage_defect(self, half_width: float) -> float:
        """Largest kernel corner value relative to its maximum of 1.

        Checks both the diagonal (z = z' = L) and the anti-diagonal
        (z = -z' = L); near-isotropic kernels decay slowly along the latter.
        """
        return float(np.exp(-2.0 * min(self.alpha, self.beta) * half_width**2))


@dataclass(frozen=True)
class NystromGrid:
    """Uniform symmetric grid on [-L, L] with N points."""

    half_width: float
    points: int

    def __post_init__(self):
        if not self.half_width > 0.0:
            raise GridError(f"half_width must be positive, got {self.half_width}")
        if self.points < 2:
            raise GridError(f"need at least 2 grid points, got {self.points}")

    @property
    def spacing(self) -> float:
        return 2.0 * self.half_width / (self.points - 1)

    @property
    def nodes(self) -> np.ndarray:
        return np.linspace(-self.half_width, self.half_width, self.points)


def default_grid(spec: KernelSpec, points: int = 400) -> NystromGrid:
    """Grid sized for the given kernel, auto-widened until the coverage gate passes."""
    half_width = 6.0 * max(spec.alpha, spec.beta) ** (-0.25)
    while spec.coverage_defect(half_width) > COVERAGE_GATE:
        half_width *= 1.25
    return NystromGrid(half_width=half_width, points=points)


def kernel_matrix(spec: KernelSpec, grid: NystromGrid) -> np.ndarray:
    z = grid.nodes
    return spec.evaluate(z[:, None], z[None, :]) * grid.spacing


def nystrom_schmidt(
    spec: KernelSpec, grid: NystromGrid, count: int
) -> tuple[np.ndarray, np.ndarray]:
    """Largest-|k| Schmidt coefficients and orbital samples of a Gaussian kernel.

    Returns (k, orbitals) with k sorted by decreasing magnitude and orbitals of
    shape (count, N) normalized to unit L2 norm under the grid weights, each
    phase fixed by making its largest-magnitude sample positive.
    """
    defect = spec.coverage_defect(grid.half_width)
    if defect > COVERAGE_GATE:
        raise GridError(
            f"grid half_width {grid.half_width:.3f} leaves kernel corner value "
            f"{defect:.3e} above the coverage gate {COVERAGE_GATE:.0e}; widen the grid"
        )
    a = kernel_matrix(spec, grid)
    eigvals, eigvecs = np.linalg.eigh(a)
    order = np.argsort(-np.abs(eigvals), kind="stable")[:count]
    k = eigvals[order]
    orbitals = eigvecs[:, order].T / math.sqrt(grid.spacing)
    for row in orbitals:
        if row[np.argmax(np.abs(row))] < 0:
            row *= -1.0
    return k, orbitals


def mehler_ratio(spec: KernelSpec) -> float:
    """Exact ratio z of consecutive Schmidt coefficients of a Gaussian kernel.

    k_n = k_0 (-z)^n with z = (sqrt(alpha) - sqrt(beta)) / (sqrt(alpha) + sqrt(beta));
    normalized occupancy weights follow the geometric law (1 - z^2) z^(2n).
    """
    sa = math.sqrt(spec.alpha)
    sb = math.sqrt(spec.beta)
    return (sa - sb) / (sa + sb)


def geometric_weights(spec: KernelSpec, count: int) -> np.ndarray:
    """Normalized occupancy weights (1 - q) q^n from the analytic Mehler law."""
    q = mehler_ratio(spec) ** 2
    n = np.arange(count)
    return (1.0 - q) * q**n


@dataclass(frozen=True)
class AsymptoticSpectrum:
    """Asymptotic Schmidt data: per-direction coefficients and doubled occupancies.

    ``occupancies[n, m]`` is the occupancy shared by the u_(n,m) and v_(n,m)
    natural orbitals; each value therefore enters traces with multiplicity 2.
    """

    kx: np.ndarray
    ky: np.ndarray
    occupancies: np.ndarray
    norm_constant: float
    epsilon: float

    @property
    def sorted_occupancies(self) -> np.ndarray:
        """Flattened occupancies sorted nonincreasing (degeneracy NOT expanded)."""
        return np.sort(self.occupancies, axis=None)[::-1]

    @property
    def captured_probability(self) -> float:
        return 2.0 * float(np.sum(self.occupancies))


def _direction_weights(
    spec: KernelSpec, count: int, method: str, points: int, half_width: float | None
) -> np.ndarray:
    """Normalized occupancy weights of one kernel, by Nystrom or the analytic law."""
    if method == "mehler":
        return geometric_weights(spec, count)
    if method != "nystrom":
        raise DomainError(f"unknown method {method!r}; use 'nystrom' or 'mehler'")
    grid = default_grid(spec, points=points)
    if half_width is not None:
        grid = NystromGrid(half_width=half_width, points=points)
    k, _ = nystrom_schmidt(spec, grid, count)
    # total sum of k_n^2 over the full spectrum equals the Frobenius norm of A
    total = float(np.sum(kernel_matrix(spec, grid) ** 2))
    return k**2 / total


def asymptotic_occupancies(
    epsilon: float,
    n_cut: int = 48,
    m_cut: int = 48,
    method: str = "nystrom",
    points: int = 400,
    half_width_x: float | None = None,
    half_width_y: float | None = None,
    norm_tolerance: float = 1e-6,
) -> AsymptoticSpectrum:
    """Asymptotic natural-orbital occupancies lambda_(n,m) at anisotropy epsilon.

    Occupancies are products of normalized per-direction weights divided by 2,
    so that the doubled spectrum conserves probability: 2 sum lambda = 1.  The
    truncated sum must reach 1 within ``norm_tolerance``.
    """
    if epsilon < EPSILON_FLOOR:
        raise DomainError(
            f"asymptotic occupancies need epsilon >= {EPSILON_FLOOR}; at isotropy the "
            "occupancies cluster at zero (infinitely many relevant orbitals) while "
            "their sum stays 1/2"
        )
    spec_x = KernelSpec.x_kernel()
    spec_y = KernelSpec.y_kernel(epsilon)
    n_cut = min(n_cut, points)
    m_cut = min(m_cut, points)
    wx = _direction_weights(spec_x, n_cut, method, points, half_width_x)
    wy = _direction_weights(spec_y, m_cut, method, points, half_width_y)
    lam = 0.5 * np.outer(wx, wy)
    captured = 2.0 * float(np.sum(lam))
    if abs(captured - 1.0) > norm_tolerance:
        raise AccuracyError(
            f"doubled occupancy sum {captured:.10f} misses 1 at cutoffs "
            f"({n_cut}, {m_cut}); raise the cutoffs or refine the grid",
            abs(captured - 1.0),
        )
    kx = np.sqrt(wx) * np.power(np.sign(mehler_ratio(spec_x)) * -1.0, np.arange(n_cut))
    ky = np.sqrt(wy) * np.power(np.sign(mehler_ratio(spec_y)) * -1.0, np.arange(m_cut))
    return AsymptoticSpectrum(
        kx=kx, ky=ky, occupancies=lam,
        norm_constant=asymptotic_norm_constant(epsilon), epsilon=epsilon,
    )


def asymptotic_norm_constant(epsilon: float, g: float | None = None, sign: int = +1) -> float:
    """Normalization prefactor C_+-(g, eps) of the asymptotic wavefunction.

    Without ``g`` the g -> infinity limit is returned.
    """
    if epsilon <= 1.0:
        raise DomainError(f"normalization constant needs epsilon > 1, got {epsilon}")
    base = (
        math.sqrt(2.0) * 3.0 ** (1.0 / 8.0) * epsilon ** 0.25
        * (epsilon**2 - 1.0) ** (1.0 / 8.0) / math.pi
    )
    if g is None:
        return base
    if g <= 0.0:
        raise DomainError(f"normalization constant needs g > 0, got {g}")
    overlap = math.exp(-math.sqrt(3.0) * (g / 2.0) ** (2.0 / 3.0))
    return base / math.sqrt(1.0 + sign * overlap)


def asymptotic_linear_entropy(epsilon: float) -> float:
    """Closed-form strong-coupling linear entropy of the lowest singlet state."""
    if epsilon <= 1.0:
        raise DomainError(f"closed-form linear entropy needs epsilon > 1, got {epsilon}")
    return 1.0 - (
        3.0 ** 0.25 * (epsilon**2 - 1.0) ** 0.25
        * math.sqrt(epsilon * (1.0 - math.sqrt(3.0) / 2.0))
        / (epsilon + math.sqrt(epsilon**2 - 1.0))
    )


def asymptotic_linear_entropy_from_spectrum(epsilon: float) -> float:
    """Independent spectrum-sum route to the asymptotic linear entropy.

    Uses the geometric occupancy laws of both kernels:
    L = 1 - (1/4) (1-q_x)(1-q_y) / ((1+q_x)(1+q_y)).
    """
    if epsilon <= 1.0:
        raise DomainError(f"spectrum-sum linear entropy needs epsilon > 1, got {epsilon}")
    qx = mehler_ratio(KernelSpec.x_kernel()) ** 2
    qy = mehler_ratio(KernelSpec.y_kernel(epsilon)) ** 2
    return 1.0 - 0.25 * (1.0 - qx) * (1.0 - qy) / ((1.0 + qx) * (1.0 + qy))


def asymptotic_vn_entropy(
    epsilon: float,
    tail_tolerance: float = 1e-10,
    method: str = "mehler",
    points: int = 400,
    max_cut: int = 4096,
) -> float:
    """Asymptotic von Neumann entropy (bits) of the lowest singlet state.

    Sums -2 lambda log2 lambda over the doubled occupancy spectrum, growing
    the per-direction cutoffs until the truncated tail probability drops below
    ``tail_tolerance``, and adds the singlet spin bit.
    """
    if epsilon < EPSILON_FLOOR:
        raise DomainError(
            f"asymptotic vN entropy needs epsilon >= {EPSILON_FLOOR}"
        )
    cut = 32
    while True:
        spectrum = asymptotic_occupancies(
            epsilon, n_cut=cut, m_cut=cut, method=method,
            points=max(points, cut), norm_tolerance=math.inf,
        )
        tail = 1.0 - spectrum.captured_probability
        if tail < tail_tolerance:
            break
        if cut >= max_cut:
            raise AccuracyError(
                f"occupancy tail not bounded below {tail_tolerance:.1e} within "
                f"cutoff {max_cut}", tail,
            )
        cut *= 2
    lam = spectrum.occupancies[spectrum.occupancies > 0.0]
    spatial = -2.0 * float(np.sum(lam * np.log2(lam)))
    return 1.0 + spatial


def asymptotic_wavefunction(t: TrapParams, r1, r2, sign: int = +1) -> float:
    """Normalized asymptotic two-particle amplitude psi_+-(r1, r2).

    ``sign`` +1 gives the x-even (singlet) combination, -1 the x-odd
    (triplet) one; the exact finite-g normalization is included.
    """
    if sign not in (+1, -1):
        raise DomainError(f"sign must be +1 or -1, got {sign}")
    if t.epsilon <= 1.0:
        raise DomainError(f"asymptotic wavefunction needs epsilon > 1, got {t.epsilon}")
    x_cl = classical_geometry(t).x_cl
    x1, y1 = float(r1[0]), float(r1[1])
    x2, y2 = float(r2[0]), float(r2[1])

    def q(xa: float, xb: float) -> float:
        return math.exp(
            -0.5 * (math.sqrt(3.0) * (xb - xa - x_cl) ** 2 + (xa + xb) ** 2)
        )

    h = math.exp(
        -0.5 * (
            math.sqrt(t.epsilon**2 - 1.0) * (y1 - y2) ** 2
            + t.epsilon * (y1 + y2) ** 2
        )
    )
    c = asymptotic_norm_constant(t.epsilon, g=t.g, sign=sign)
    return c * h * (q(x1, x2) + sign * q(x2, x1))
