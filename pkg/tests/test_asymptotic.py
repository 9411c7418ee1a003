import math

import numpy as np
import pytest

from qdot2e import (
    DomainError,
    GridError,
    KernelSpec,
    NystromGrid,
    TrapParams,
    asymptotic_linear_entropy,
    asymptotic_linear_entropy_from_spectrum,
    asymptotic_occupancies,
    asymptotic_vn_entropy,
    asymptotic_wavefunction,
    mehler_ratio,
    nystrom_schmidt,
)
from qdot2e.asymptotic import asymptotic_norm_constant, default_grid, geometric_weights
from qdot2e.hobasis import gauss_hermite


class TestMehlerRatio:
    def test_separable_kernel_is_rank_one(self):
        assert mehler_ratio(KernelSpec(2.0, 2.0)) == 0.0

    def test_x_kernel_value(self):
        z = mehler_ratio(KernelSpec.x_kernel())
        expected = (3**0.25 - 1.0) / (3**0.25 + 1.0)
        assert z == pytest.approx(expected, abs=1e-15)
        assert z == pytest.approx(0.1364694, abs=1e-5)
        assert z * z == pytest.approx(0.0186239, abs=1e-6)

    def test_y_kernel_vanishes_at_infinite_anisotropy(self):
        assert abs(mehler_ratio(KernelSpec.y_kernel(1e8))) < 1e-8

    def test_geometric_weights_normalized(self):
        w = geometric_weights(KernelSpec.x_kernel(), 64)
        assert np.sum(w) == pytest.approx(1.0, abs=1e-14)
        ratios = w[1:] / w[:-1]
        assert np.max(np.abs(ratios - ratios[0])) < 1e-12


class TestNystrom:
    def test_x_kernel_ratio_matches_oracle(self):
        k, _ = nystrom_schmidt(KernelSpec.x_kernel(), NystromGrid(6.0, 400), 4)
        assert abs(k[1] / k[0]) == pytest.approx(0.136469, abs=1e-6)

    def test_h_kernel_ratio_at_sqrt2(self):
        spec = KernelSpec.y_kernel(math.sqrt(2.0))
        k, _ = nystrom_schmidt(spec, default_grid(spec), 4)
        assert abs(k[1] / k[0]) == pytest.approx(abs(mehler_ratio(spec)), abs=1e-6)
        assert abs(k[1] / k[0]) == pytest.approx(0.086427, abs=1e-5)

    @pytest.mark.parametrize("epsilon", [1.05, 1.4, 2.0, 20.0])
    def test_eight_eigenvalues_match_geometric_law(self, epsilon):
        for spec in (KernelSpec.x_kernel(), KernelSpec.y_kernel(epsilon)):
            grid = default_grid(spec, points=400)
            k, _ = nystrom_schmidt(spec, grid, 8)
            z = abs(mehler_ratio(spec))
            expected = np.abs(k[0]) * z ** np.arange(8)
            # eigenvalues below the double-precision floor of eigh are noise
            mask = expected > 1e-13 * expected[0]
            errors = np.abs(np.abs(k)[mask] - expected[mask]) / expected[mask]
            assert np.max(errors) < 1e-5

    def test_first_excited_orbital_is_odd(self):
        k, orbitals = nystrom_schmidt(KernelSpec.x_kernel(), NystromGrid(6.0, 401), 2)
        assert np.max(np.abs(orbitals[1] + orbitals[1][::-1])) < 1e-8

    def test_orbitals_orthonormal_under_grid_weights(self):
        grid = NystromGrid(6.0, 400)
        _, orbitals = nystrom_schmidt(KernelSpec.x_kernel(), grid, 6)
        gram = orbitals @ orbitals.T * grid.spacing
        assert np.max(np.abs(gram - np.eye(6))) < 1e-8

    def test_coverage_gate(self):
        with pytest.raises(GridError):
            nystrom_schmidt(KernelSpec.y_kernel(1.01), NystromGrid(2.0, 100), 2)

    def test_grid_auto_widening_near_isotropy(self):
        spec = KernelSpec.y_kernel(1.01)
        grid = default_grid(spec)
        assert spec.coverage_defect(grid.half_width) <= 1e-12


class TestOccupancies:
    def test_infinite_anisotropy_limits(self):
        spectrum = asymptotic_occupancies(10.0)
        lam = spectrum.sorted_occupancies
        assert lam[0] == pytest.approx(0.490688, abs=1e-4)
        remainder = spectrum.captured_probability - 2.0 * lam[0]
        assert remainder == pytest.approx(0.018624, abs=1e-4)

    def test_probability_conservation(self):
        spectrum = asymptotic_occupancies(2.0, n_cut=64, m_cut=64)
        assert spectrum.captured_probability == pytest.approx(1.0, abs=1e-8)

    def test_methods_agree(self):
        a = asymptotic_occupancies(1.3, method="nystrom").sorted_occupancies[:6]
        b = asymptotic_occupancies(1.3, method="mehler").sorted_occupancies[:6]
        assert np.max(np.abs(a - b)) < 1e-7

    def test_grid_refinement_stability(self):
        a = asymptotic_occupancies(1.2, method="nystrom", points=400).sorted_occupancies[:10]
        b = asymptotic_occupancies(1.2, method="nystrom", points=800).sorted_occupancies[:10]
        assert np.max(np.abs(a - b)) < 1e-7

    def test_leading_occupancy_decreases_toward_isotropy(self):
        values = [
            asymptotic_occupancies(eps).sorted_occupancies[0] for eps in (1.5, 1.1, 1.01)
        ]
        assert values[0] > values[1] > values[2]

    def test_isotropy_guard(self):
        with pytest.raises(DomainError):
            asymptotic_occupancies(1.0)
        with pytest.raises(DomainError):
            asymptotic_occupancies(0.9)


class TestEntropies:
    @pytest.mark.parametrize(
        "epsilon,expected",
        [(2.0, 0.7597633), (1.1, 0.7805155)],
    )
    def test_closed_form_values(self, epsilon, expected):
        assert asymptotic_linear_entropy(epsilon) == pytest.approx(expected, abs=1e-6)

    def test_closed_form_tends_to_one_at_isotropy(self):
        assert asymptotic_linear_entropy(1.0 + 1e-9) == pytest.approx(1.0, abs=1e-2)
        values = [asymptotic_linear_entropy(e) for e in (1.1, 1.01, 1.001, 1.0001)]
        assert all(b > a for a, b in zip(values, values[1:]))

    @pytest.mark.parametrize("epsilon", [1.05, 1.1, 1.4, 2.0, 4.0, 10.0])
    def test_closed_form_equals_spectrum_sum(self, epsilon):
        assert asymptotic_linear_entropy(epsilon) == pytest.approx(
            asymptotic_linear_entropy_from_spectrum(epsilon), abs=1e-9
        )

    def test_vn_entropy_saturation(self):
        assert asymptotic_vn_entropy(10.0) == pytest.approx(2.13618, abs=1e-4)

    def test_vn_entropy_nonincreasing_in_epsilon(self):
        eps = np.linspace(1.01, 10.0, 12)
        values = [asymptotic_vn_entropy(e) for e in eps]
        assert all(b <= a + 1e-12 for a, b in zip(values, values[1:]))

    def test_vn_methods_agree(self):
        a = asymptotic_vn_entropy(1.5, method="mehler")
        b = asymptotic_vn_entropy(1.5, method="nystrom", tail_tolerance=1e-8)
        assert a == pytest.approx(b, abs=1e-6)


class TestWavefunction:
    def test_antisymmetric_vanishes_at_coincidence(self):
        t = TrapParams(20.0, 1.5)
        for point in [(0.3, -0.2), (1.1, 0.4)]:
            assert asymptotic_wavefunction(t, point, point, sign=-1) == pytest.approx(
                0.0, abs=1e-15
            )

    def test_symmetric_equals_abs_antisymmetric_at_large_g(self):
        t = TrapParams(5e4, 1.5)
        rng = np.random.default_rng(3)
        for _ in range(20):
            r1 = rng.normal(scale=1.5, size=2)
            r2 = rng.normal(scale=1.5, size=2)
            r1[0] += 10.0
            r2[0] -= 10.0
            plus = asymptotic_wavefunction(t, r1, r2, sign=+1)
            minus = asymptotic_wavefunction(t, r1, r2, sign=-1)
            assert plus == pytest.approx(abs(minus), abs=1e-8)

    @pytest.mark.parametrize("sign", [+1, -1])
    def test_unit_norm_by_quadrature(self, sign):
        # psi factorizes as C h(y1,y2) Q(x1,x2); evaluating at y1=y2=0 (h=1)
        # isolates C*Q, so the 4D norm is the product of two 2D integrals
        t = TrapParams(30.0, 1.6)
        span = np.linspace(-8.0, 8.0, 241)
        dx = span[1] - span[0]
        values = np.array(
            [
                [asymptotic_wavefunction(t, (a, 0.0), (b, 0.0), sign=sign) for b in span]
                for a in span
            ]
        )
        y1, y2 = np.meshgrid(span, span, indexing="ij")
        eps = t.epsilon
        hvals = np.exp(
            -0.5 * (math.sqrt(eps**2 - 1.0) * (y1 - y2) ** 2 + eps * (y1 + y2) ** 2)
        )
        h_norm = np.sum(hvals**2) * dx * dx
        x_norm = np.sum(values**2) * dx * dx
        assert x_norm * h_norm == pytest.approx(1.0, abs=1e-6)

    def test_norm_constant_limit(self):
        assert asymptotic_norm_constant(1.5, g=1e9) == pytest.approx(
            asymptotic_norm_constant(1.5), rel=1e-12
        )

    def test_sign_validation(self):
        with pytest.raises(DomainError):
            asymptotic_wavefunction(TrapParams(10.0, 1.5), (0, 0), (1, 1), sign=2)
