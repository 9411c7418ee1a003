import math

import numpy as np
import pytest

from qdot2e import (
    ConfigurationError,
    DomainError,
    SectorLabel,
    TrapParams,
    eigensolve_sector,
    harmonic_energy,
    log_grid,
    spectrum_sweep,
)
from qdot2e.hobasis import eval_ho

EE = SectorLabel("even", "even")
OE = SectorLabel("odd", "even")
EO = SectorLabel("even", "odd")


class TestNoninteractingOracle:
    def test_isotropic_ground(self):
        state = eigensolve_sector(TrapParams(0.0, 1.0), EE, n_max=12, k=1)[0]
        assert state.rel_energy == pytest.approx(2.0, abs=1e-12)
        assert state.total_energy == pytest.approx(4.0, abs=1e-12)

    def test_one_quantum_degeneracy(self):
        e_oe = eigensolve_sector(TrapParams(0.0, 1.0), OE, n_max=12, k=1)[0].rel_energy
        e_eo = eigensolve_sector(TrapParams(0.0, 1.0), EO, n_max=12, k=1)[0].rel_energy
        assert e_oe == pytest.approx(4.0, abs=1e-12)
        assert e_eo == pytest.approx(4.0, abs=1e-12)

    def test_anisotropic_spectrum(self):
        eps = 1.6
        states = eigensolve_sector(TrapParams(0.0, eps), EE, n_max=10, k=3)
        analytic = sorted(
            (2 * nx + 1) + eps * (2 * ny + 1)
            for nx in range(0, 10, 2)
            for ny in range(0, 10, 2)
            if nx + ny <= 10
        )[:3]
        assert [s.rel_energy for s in states] == pytest.approx(analytic, abs=1e-12)

    def test_positive_coupling_raises_ground_energy(self):
        e0 = eigensolve_sector(TrapParams(0.0, 1.2), EE, n_max=12, k=1)[0].rel_energy
        e1 = eigensolve_sector(TrapParams(1.0, 1.2), EE, n_max=12, k=1)[0].rel_energy
        assert e1 > e0


class TestEigensolve:
    def test_unit_norm_and_phase(self):
        state = eigensolve_sector(TrapParams(4.0, 1.3), EE, n_max=16, k=1)[0]
        assert np.linalg.norm(state.rel_coefficients) == pytest.approx(1.0, abs=1e-12)
        assert state.rel_coefficients[np.argmax(np.abs(state.rel_coefficients))] > 0

    def test_k_too_large(self):
        with pytest.raises(ConfigurationError):
            eigensolve_sector(TrapParams(1.0, 1.0), EE, n_max=2, k=100)

    def test_variational_monotonicity(self):
        trap = TrapParams(10.0, 1.5)
        energies = [
            eigensolve_sector(trap, EE, n_max=n, k=1)[0].rel_energy
            for n in (12, 16, 20, 24)
        ]
        assert all(b <= a + 1e-12 for a, b in zip(energies, energies[1:]))

    def test_eigenvector_parity_on_grid(self):
        state = eigensolve_sector(TrapParams(5.0, 1.4), OE, n_max=14, k=1)[0]
        eps = state.trap.epsilon
        xs = np.linspace(0.2, 3.0, 7)
        ys = np.linspace(-2.0, 2.0, 7)

        def psi(x, y):
            total = 0.0
            for b, c in zip(state.basis.members, state.rel_coefficients):
                total += c * float(eval_ho(b.nx, 1.0, x)) * float(
                    eval_ho(b.ny, math.sqrt(eps), y)
                )
            return total

        for x in xs:
            for y in ys:
                v = psi(x, y)
                assert psi(-x, y) == pytest.approx(-v, abs=1e-10 * max(1.0, abs(v)))

    def test_singlet_triplet_gap_shrinks_with_g(self):
        gaps = []
        for g in np.geomspace(1.0, 200.0, 5):
            e_s = eigensolve_sector(TrapParams(g, 1.5), EE, n_max=30, k=1)[0].rel_energy
            e_t = eigensolve_sector(TrapParams(g, 1.5), OE, n_max=30, k=1)[0].rel_energy
            gaps.append(e_t - e_s)
        assert all(g > 0 for g in gaps)
        assert all(b < a for a, b in zip(gaps, gaps[1:]))

    def test_parity_doublet_degeneracy_at_large_g(self):
        # harmonic-approximation levels are doubly degenerate across x-parity
        g = 400.0
        for sector_pair in [(EE, OE), (EO, SectorLabel("odd", "odd"))]:
            e_a = eigensolve_sector(TrapParams(g, 1.7), sector_pair[0], n_max=40, k=1)[0]
            e_b = eigensolve_sector(TrapParams(g, 1.7), sector_pair[1], n_max=40, k=1)[0]
            assert abs(e_a.rel_energy - e_b.rel_energy) < 1e-4


class TestHarmonicEnergy:
    def test_direct_substitution(self):
        value = harmonic_energy(0, 0, TrapParams(2.0, 2.0))
        assert value == pytest.approx(3.0 + 2.0 * math.sqrt(3.0) / 2.0 + math.sqrt(3.0), abs=1e-12)
        assert value == pytest.approx(6.4641016, abs=1e-6)

    def test_x_gap_is_g_independent(self):
        for g in (1.0, 50.0, 4000.0):
            t = TrapParams(g, 1.7)
            gap = harmonic_energy(1, 0, t) - harmonic_energy(0, 0, t)
            assert gap == pytest.approx(2.0 * math.sqrt(3.0), abs=1e-12)

    def test_y_gap(self):
        t = TrapParams(10.0, 1.7)
        gap = harmonic_energy(0, 1, t) - harmonic_energy(0, 0, t)
        assert gap == pytest.approx(2.0 * math.sqrt(1.7**2 - 1.0), abs=1e-12)
        assert gap == pytest.approx(2.7495454, abs=1e-6)

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            harmonic_energy(0, 0, TrapParams(2.0, 1.0))
        with pytest.raises(DomainError):
            harmonic_energy(0, 0, TrapParams(0.0, 1.5))


class TestSweep:
    def test_g0_row_matches_oscillator(self):
        table = spectrum_sweep([0.0], 1.0, [EE], n_max=10, k=2)
        rows = [r for r in table.rows if r[3] == 0]
        assert rows[0][4] == pytest.approx(2.0, abs=1e-10)

    def test_rows_sorted_within_point(self):
        table = spectrum_sweep([1.0, 10.0], 1.3, [EE, OE], n_max=12, k=3)
        for g in (1.0, 10.0):
            for sec in ("ee", "oe"):
                e = [r[4] for r in table.rows if r[0] == g and r[2] == sec]
                assert e == sorted(e)

    def test_unsorted_grid_rejected(self):
        with pytest.raises(ConfigurationError):
            spectrum_sweep([10.0, 1.0], 1.3, [EE], n_max=8)

    def test_log_grid(self):
        grid = log_grid(0.1, 1000.0, 5)
        assert np.allclose(np.diff(np.log(grid)), np.log(10.0))
        with pytest.raises(ConfigurationError):
            log_grid(0.0, 1.0, 3)
