import math

import numpy as np
import pytest

from qdot2e import (
    ALL_SECTORS,
    DataError,
    DomainError,
    PhysicalParams,
    SectorLabel,
    TrapParams,
    canonicalize,
    classical_geometry,
    physical_to_dimensionless,
    slater_rank_rule,
)
from qdot2e.model import scaled_to_physical_energy


class TestPhysicalToDimensionless:
    def test_isotropic_identity(self):
        p = PhysicalParams(1.0, 1.0, 2.0, 2.0)
        assert physical_to_dimensionless(p).epsilon == 1.0

    def test_ratio_definition(self):
        p = PhysicalParams(1.0, 1.0, 2.0, 4.0)
        assert physical_to_dimensionless(p).epsilon == 2.0

    def test_dielectric_halves_coupling(self):
        p1 = PhysicalParams(1.0, 1.0, 2.0, 2.0)
        p2 = PhysicalParams(1.0, 2.0, 2.0, 2.0)
        assert physical_to_dimensionless(p2).g == pytest.approx(
            physical_to_dimensionless(p1).g / 2.0, rel=1e-15
        )

    def test_coupling_formula(self):
        p = PhysicalParams(3.0, 2.0, 5.0, 5.0, elementary_charge=1.5, hbar=0.7)
        expected = (1.5**2 / 2.0) * math.sqrt(2.0 * 3.0 / (5.0 * 0.7**3))
        assert physical_to_dimensionless(p).g == pytest.approx(expected, rel=1e-14)

    def test_scale_covariance(self):
        # scaling both frequencies keeps epsilon, scales g by factor^(-1/2)
        p1 = PhysicalParams(1.0, 1.0, 2.0, 3.0)
        p2 = PhysicalParams(1.0, 1.0, 8.0, 12.0)
        t1, t2 = physical_to_dimensionless(p1), physical_to_dimensionless(p2)
        assert t2.epsilon == pytest.approx(t1.epsilon, rel=1e-15)
        assert t2.g == pytest.approx(t1.g / 2.0, rel=1e-14)

    def test_nonpositive_input_rejected(self):
        with pytest.raises(DomainError):
            PhysicalParams(0.0, 1.0, 1.0, 1.0)
        with pytest.raises(DomainError):
            PhysicalParams(1.0, 1.0, 1.0, -2.0)

    def test_energy_unit_conversion(self):
        p = PhysicalParams(1.0, 1.0, 3.0, 3.0, hbar=2.0)
        assert scaled_to_physical_energy(4.0, p) == pytest.approx(12.0)


class TestCanonicalize:
    def test_already_canonical(self):
        t = TrapParams(5.0, 1.7)
        canonical, swapped = canonicalize(t)
        assert canonical == t and not swapped

    def test_axis_swap(self):
        canonical, swapped = canonicalize(TrapParams(4.0, 0.25))
        assert swapped
        assert canonical.epsilon == pytest.approx(4.0)
        assert canonical.g == pytest.approx(4.0 / math.sqrt(0.25))


class TestClassicalGeometry:
    def test_g2(self):
        geo = classical_geometry(TrapParams(2.0, 1.0))
        assert geo.x_cl == pytest.approx(1.0, abs=1e-14)
        assert geo.v_min == pytest.approx(3.0, abs=1e-13)

    def test_g16(self):
        geo = classical_geometry(TrapParams(16.0, 1.0))
        assert geo.x_cl == pytest.approx(2.0, abs=1e-14)
        assert geo.v_min == pytest.approx(12.0, abs=1e-13)

    @pytest.mark.parametrize("g", np.geomspace(0.01, 1e4, 13).tolist())
    def test_vmin_identity(self, g):
        geo = classical_geometry(TrapParams(g, 1.0))
        assert geo.v_min / (g / 2.0) ** (2.0 / 3.0) == pytest.approx(3.0, rel=1e-13)

    @pytest.mark.parametrize("g", [0.5, 2.0, 100.0])
    def test_stationarity_by_finite_differences(self, g):
        geo = classical_geometry(TrapParams(g, 1.0))
        h = 1e-6 * geo.x_cl
        v = lambda x: x**2 + g / x
        deriv = (v(geo.x_cl + h) - v(geo.x_cl - h)) / (2.0 * h)
        assert abs(deriv) < 1e-8 * geo.v_min

    def test_g_zero_rejected(self):
        with pytest.raises(DomainError):
            classical_geometry(TrapParams(0.0, 1.0))


class TestSectors:
    def test_parity_spin_bijection(self):
        characters = {
            (s.x_parity, s.y_parity): s.spin_character for s in ALL_SECTORS
        }
        assert characters == {
            ("even", "even"): "singlet",
            ("odd", "odd"): "singlet",
            ("even", "odd"): "triplet",
            ("odd", "even"): "triplet",
        }

    def test_singlet_needs_sz_zero(self):
        with pytest.raises(DataError):
            SectorLabel("even", "even", spin_projection=1)

    def test_triplet_allows_all_sz(self):
        for sz in (-1, 0, 1):
            assert SectorLabel("even", "odd", sz).spin_projection == sz

    def test_round_trip_names(self):
        for s in ALL_SECTORS:
            assert SectorLabel.from_short_name(s.short_name()) == s


class TestSlaterRank:
    def test_singlet_rank_one_not_entangled(self):
        assert slater_rank_rule(SectorLabel("even", "even"), 1) == 1

    def test_polarized_triplet_halves(self):
        assert slater_rank_rule(SectorLabel("even", "odd", 1), 2) == 1

    def test_unpolarized_triplet(self):
        assert slater_rank_rule(SectorLabel("even", "odd", 0), 2) == 2

    def test_odd_count_with_polarized_triplet_rejected(self):
        with pytest.raises(DataError):
            slater_rank_rule(SectorLabel("even", "odd", -1), 3)
