"""Normalized 1D harmonic-oscillator eigenfunctions and quadrature helpers.

All basis functions are L2-normalized.  For a scale factor ``s`` the n-th
function is phi_n(x) = sqrt(s) * psi_n(s*x) with psi_n the unit-scale Hermite
function.  Evaluation uses the function-level recurrence with the Gaussian
damping built in, so large n never overflows.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import roots_hermite, roots_legendre

from .errors import ConfigurationError, DomainError

_MAX_QUAD_ORDER = 2000

_PI_QUARTER = np.pi ** (-0.25)


@dataclass(frozen=True)
class QuadratureRule:
    """Immutable 1D quadrature rule (nodes, weights, kind)."""

    nodes: np.ndarray
    weights: np.ndarray
    kind: str

    def __post_init__(self):
        if len(self.nodes) != len(self.weights):
            raise ConfigurationError("nodes and weights must have equal length")
        if np.any(np.diff(self.nodes) <= 0):
            raise ConfigurationError("nodes must be strictly increasing")
        if np.any(self.weights <= 0):
            raise ConfigurationError("weights must be positive")


def gauss_hermite(order: int) -> QuadratureRule:
    """Gauss-Hermite rule for integrals of f(t) * exp(-t^2) over the real line."""
    if order < 1:
        raise ConfigurationError(f"quadrature order must be >= 1, got {order}")
    if order > _MAX_QUAD_ORDER:
        raise ConfigurationError(f"quadrature order {order} exceeds cap {_MAX_QUAD_ORDER}")
    nodes, weights = roots_hermite(order)
    return QuadratureRule(nodes=nodes, weights=weights, kind="gauss_hermite")


def gauss_legendre(order: int, a: float = -1.0, b: float = 1.0) -> QuadratureRule:
    """Gauss-Legendre rule mapped to the interval [a, b]."""
    if order < 1:
        raise ConfigurationError(f"quadrature order must be >= 1, got {order}")
    if order > _MAX_QUAD_ORDER:
        raise ConfigurationError(f"quadrature order {order} exceeds cap {_MAX_QUAD_ORDER}")
    nodes, weights = roots_legendre(order)
    half = 0.5 * (b - a)
    return QuadratureRule(
        nodes=a + half * (nodes + 1.0), weights=half * weights, kind="gauss_legendre"
    )


def hermite_functions(n_max: int, y) -> np.ndarray:
    """Unit-scale Hermite functions psi_0..psi_n_max at points ``y``.

    psi_n(y) = (2^n n! sqrt(pi))^(-1/2) H_n(y) exp(-y^2/2); the recurrence
    psi_{n+1} = sqrt(2/(n+1)) y psi_n - sqrt(n/(n+1)) psi_{n-1} keeps every
    intermediate bounded.

    Returns an array of shape (n_max + 1,) + shape(y).
    """
    if n_max < 0:
        raise DomainError(f"n_max must be >= 0, got {n_max}")
    y = np.asarray(y, dtype=float)
    out = np.empty((n_max + 1,) + y.shape)
    out[0] = _PI_QUARTER * np.exp(-0.5 * y * y)
    if n_max >= 1:
        out[1] = np.sqrt(2.0) * y * out[0]
    for n in range(1, n_max):
        out[n + 1] = (
            np.sqrt(2.0 / (n + 1)) * y * out[n] - np.sqrt(n / (n + 1.0)) * out[n - 1]
        )
    return out


def hermite_poly_normalized(n_max: int, y) -> np.ndarray:
    """Orthonormal Hermite polynomial values h_n(y) = psi_n(y) * exp(y^2/2).

    These carry no Gaussian damping and are meant to be paired with a
    Gauss-Hermite weight; growth stays within double range for the node
    magnitudes of any supported rule.
    """
    if n_max < 0:
        raise DomainError(f"n_max must be >= 0, got {n_max}")
    y = np.asarray(y, dtype=float)
    out = np.empty((n_max + 1,) + y.shape)
    out[0] = np.full_like(y, _PI_QUARTER)
    if n_max >= 1:
        out[1] = np.sqrt(2.0) * y * out[0]
    for n in range(1, n_max):
        out[n + 1] = (
            np.sqrt(2.0 / (n + 1)) * y * out[n] - np.sqrt(n / (n + 1.0)) * out[n - 1]
        )
    return out


def eval_ho(n: int, scale: float, x) -> np.ndarray | float:
    """Value of the L2-normalized oscillator eigenfunction phi_n(x; scale)."""
    if n < 0:
        raise DomainError(f"quantum number must be >= 0, got {n}")
    if not scale > 0.0:
        raise DomainError(f"scale must be positive, got {scale}")
    x = np.asarray(x, dtype=float)
    value = np.sqrt(scale) * hermite_functions(n, scale * x)[n]
    return value if value.shape else float(value)


def eval_ho_many(n_max: int, scale: float, x) -> np.ndarray:
    """phi_0..phi_n_max at points ``x``; shape (n_max + 1,) + shape(x)."""
    if not scale > 0.0:
        raise DomainError(f"scale must be positive, got {scale}")
    x = np.asarray(x, dtype=float)
    return np.sqrt(scale) * hermite_functions(n_max, scale * x)


@dataclass(frozen=True)
class HoBasis1D:
    """A finite family of oscillator eigenfunctions with a common scale."""

    size: int
    scale: float

    def __post_init__(self):
        if self.size < 1:
            raise ConfigurationError(f"basis size must be >= 1, got {self.size}")
        if not self.scale > 0.0:
            raise DomainError(f"scale must be positive, got {self.scale}")

    def gram_matrix(self, order: int | None = None) -> np.ndarray:
        """Overlap matrix by Gauss-Hermite quadrature; identity for an exact rule."""
        if order is None:
            order = 2 * self.size
        rule = gauss_hermite(order)
        # Substitute t = scale * x; the Gaussian of psi_m psi_n is the GH weight.
        h = hermite_poly_normalized(self.size - 1, rule.nodes)
        return (h * rule.weights) @ h.T


def gaussian_damped_overlap(m: int, n: int, scale: float, u: float) -> float:
    """Overlap integral of phi_m(x) phi_n(x) exp(-u^2 x^2) over the real line.

    Substituting t = x * sqrt(scale^2 + u^2) folds every Gaussian factor into
    the Gauss-Hermite weight, leaving an exactly integrable polynomial.
    Vanishes by parity when m + n is odd.
    """
    if m < 0 or n < 0:
        raise DomainError(f"quantum numbers must be >= 0, got ({m}, {n})")
    if not scale > 0.0:
        raise DomainError(f"scale must be positive, got {scale}")
    if (m + n) % 2 == 1:
        return 0.0
    sigma = np.hypot(scale, u)
    rule = gauss_hermite((m + n) // 2 + 2)
    h = hermite_poly_normalized(max(m, n), scale * rule.nodes / sigma)
    return float(scale / sigma * np.sum(rule.weights * h[m] * h[n]))


def gaussian_damped_overlap_table(n_max: int, scale: float, u: float) -> np.ndarray:
    """All overlaps phi_m phi_n exp(-u^2 x^2) for m, n <= n_max as one matrix."""
    if n_max < 0:
        raise DomainError(f"n_max must be >= 0, got {n_max}")
    if not scale > 0.0:
        raise DomainError(f"scale must be positive, got {scale}")
    sigma = np.hypot(scale, u)
    rule = gauss_hermite(n_max + 2)
    h = hermite_poly_normalized(n_max, scale * rule.nodes / sigma)
    return (scale / sigma) * ((h * rule.weights) @ h.T)
