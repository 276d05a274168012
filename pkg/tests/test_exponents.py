"""Tests for theory constants, power-law fits, annulus resistances and spectral decay."""

from __future__ import annotations

import math

import pytest

from gasket_resistance.errors import ArgumentError, InsufficientDataError
from gasket_resistance.exponents import (
    alpha_from_samples,
    annulus_resistance,
    annulus_samples,
    bracket_flags,
    eligible_centers,
    estimate_spectral_dimension,
    fit_dimension,
    fit_power_law,
    log_times,
    median_normalizer,
    median_ratios,
    predicted_spectral_dimension,
    spectral_dimension,
    theory_constants,
)
from gasket_resistance.gasket_gen import cable_approximation
from gasket_resistance.models.exponents import AnnulusSample, AnnulusStatus
from gasket_resistance.models.lattice import CableNetwork, VolumeProfile, site_id
from gasket_resistance.models.network import Network


def _row_site(q: int) -> int:
    return site_id(q, 10, 20)


@pytest.fixture
def line_cable(line_cluster) -> CableNetwork:
    """Unit path along the line cluster, every site a vertex."""
    return cable_approximation(line_cluster, 2.0, intensity=50.0, prune=False)


class TestTheory:
    def test_percolation_values(self):
        theory = theory_constants(6.0)
        assert theory.d_cle == pytest.approx(91.0 / 48.0)
        assert theory.d_double == pytest.approx(0.75)
        assert theory.d_sle == pytest.approx(4.0 / 3.0)

    @pytest.mark.parametrize("kappa", [4.2, 5.0, 6.0, 7.0, 7.9])
    def test_bracket_ordered(self, kappa):
        theory = theory_constants(kappa)
        assert theory.d_double < theory.d_sle
        low, high = theory.ratio_bracket()
        assert low == pytest.approx(2.0 ** theory.d_double)
        assert high == pytest.approx(2.0 ** theory.d_sle)

    @pytest.mark.parametrize("kappa", [4.0, 8.0, 3.0, 9.5])
    def test_out_of_range(self, kappa):
        with pytest.raises(ArgumentError):
            theory_constants(kappa)

    def test_predicted_spectral_dimension(self):
        theory = theory_constants(6.0)
        assert predicted_spectral_dimension(2.0, 2.0) == pytest.approx(1.0)
        assert theory.spectral_dimension(1.0) == pytest.approx(predicted_spectral_dimension(theory.d_cle, 1.0))
        with pytest.raises(ArgumentError):
            predicted_spectral_dimension(1.0, -1.0)


class TestPowerLawFit:
    def test_exact_power_law(self):
        scales = [1.0, 2.0, 4.0, 8.0, 16.0]
        fit = fit_power_law(scales, [3.0 * s**1.25 for s in scales], name="exact")
        assert fit.slope == pytest.approx(1.25, abs=1e-10)
        assert fit.intercept == pytest.approx(math.log(3.0), abs=1e-10)
        assert fit.stderr == pytest.approx(0.0, abs=1e-10)
        assert fit.r_squared == pytest.approx(1.0)
        assert fit.reliable

    def test_noisy_data_flagged(self):
        fit = fit_power_law([1.0, 2.0, 4.0, 8.0], [1.0, 10.0, 1.0, 10.0])
        assert not fit.reliable

    def test_too_few_points(self):
        with pytest.raises(ArgumentError):
            fit_power_law([1.0, 2.0], [1.0, 2.0])

    def test_constant_scales(self):
        with pytest.raises(ArgumentError):
            fit_power_law([2.0, 2.0, 2.0], [1.0, 2.0, 3.0])

    def test_nonpositive_values(self):
        with pytest.raises(ArgumentError):
            fit_power_law([1.0, 2.0, 4.0], [1.0, 0.0, 3.0])

    def test_bracket_flags(self):
        theory = theory_constants(6.0)
        fit = fit_power_law([1.0, 2.0, 4.0], [1.0, 2.0, 4.0])
        assert bracket_flags(fit, theory, (0.8, 1.3)) == {"in_bracket": True, "in_loose_band": True}
        steep = fit_power_law([1.0, 2.0, 4.0], [1.0, 4.0, 16.0])
        assert bracket_flags(steep, theory, (0.8, 1.3)) == {"in_bracket": False, "in_loose_band": False}


class TestFitDimension:
    def _profile(self, exponent: float) -> VolumeProfile:
        radii = (0, 1, 2, 4, 8)
        counts = [[1] + [round(r**exponent) for r in radii[1:]]]
        return VolumeProfile(radii=radii, centers=(3,), counts=counts, cluster_size=1000)

    def test_quadratic_growth(self):
        fit = fit_dimension([self._profile(2.0)])
        assert fit.slope == pytest.approx(2.0, abs=1e-10)
        assert fit.scales == (1.0, 2.0, 4.0, 8.0)

    def test_theory_warning(self):
        fit = fit_dimension([self._profile(2.0)], theory=theory_constants(6.0))
        assert any("d_cle" in note for note in fit.warnings)

    def test_range_too_narrow(self):
        with pytest.raises(InsufficientDataError):
            fit_dimension([self._profile(2.0)], r_range=(1.0, 2.0))

    def test_degenerate_profile(self):
        flat = VolumeProfile(radii=(1, 2, 4), centers=(0,), counts=[[5, 5, 5]], cluster_size=5)
        with pytest.raises(ArgumentError):
            fit_dimension([flat])


class TestAnnulus:
    @pytest.mark.parametrize("r_in", [2.0, 3.0, 4.0])
    def test_line_is_two_paths_in_parallel(self, line_cable, r_in):
        sample = annulus_resistance(line_cable, _row_site(10), r_in)
        assert sample.status is AnnulusStatus.OK
        assert sample.resistance == pytest.approx(r_in / 2.0, abs=1e-10)
        assert (sample.center_q, sample.center_r) == (10, 10)

    def test_euclidean_matches_chemical_on_a_line(self, line_cable):
        chemical = annulus_resistance(line_cable, _row_site(9), 3.0)
        euclidean = annulus_resistance(line_cable, _row_site(9), 3.0, metric="euclidean")
        assert euclidean.resistance == pytest.approx(chemical.resistance)

    def test_empty_outer_shell(self, line_cable):
        sample = annulus_resistance(line_cable, _row_site(10), 10.0)
        assert sample.status is AnnulusStatus.NO_DATA
        assert math.isnan(sample.resistance)

    def test_disconnected_shells(self):
        inner = [(q, q + 1, 1.0) for q in range(8, 12)]
        outer = [(q, q + 1, 1.0) for q in range(0, 6)] + [(q, q + 1, 1.0) for q in range(14, 19)]
        net = Network.from_edges(
            [_row_site(q) for q in range(20)],
            [(_row_site(u), _row_site(v), w) for u, v, w in inner + outer],
        )
        cable = CableNetwork(network=net, side=20, eps=2.0, intensity=1.0)
        sample = annulus_resistance(cable, _row_site(10), 2.0, metric="euclidean")
        assert sample.status is AnnulusStatus.DISCONNECTED
        assert math.isinf(sample.resistance)

    def test_chemical_needs_cluster(self, line_cable):
        bare = CableNetwork(network=line_cable.network, side=20, eps=2.0, intensity=1.0)
        with pytest.raises(ArgumentError):
            annulus_resistance(bare, _row_site(10), 2.0)

    def test_bad_radii(self, line_cable):
        with pytest.raises(ArgumentError):
            annulus_resistance(line_cable, _row_site(10), 3.0, 2.0)

    def test_eligible_centers(self, line_cable):
        centers = eligible_centers(line_cable, 4.0)
        assert centers.tolist() == [_row_site(q) for q in range(4, 16)]

    def test_samples_are_seeded(self, line_cable):
        samples = annulus_samples(line_cable, 2.0, n_centers=5, seed=4)
        assert len(samples) == 5
        assert all(s.resistance == pytest.approx(1.0) for s in samples)
        assert samples == annulus_samples(line_cable, 2.0, n_centers=5, seed=4)

    def test_no_centers_far_from_boundary(self, line_cable):
        assert annulus_samples(line_cable, 6.0, n_centers=3, seed=0) == []


class TestMedians:
    def test_median_of_values(self):
        assert median_normalizer([1.0, 2.0, 3.0, 4.0, 5.0], min_samples=1) == 3.0

    def test_invalid_samples_ignored(self):
        ok = [
            AnnulusSample(scale=2.0, center=0, center_q=0, center_r=0, resistance=v, status=AnnulusStatus.OK)
            for v in (1.0, 2.0, 9.0)
        ]
        missing = AnnulusSample(
            scale=2.0, center=1, center_q=1, center_r=0, resistance=math.nan, status=AnnulusStatus.NO_DATA
        )
        assert median_normalizer([*ok, missing], min_samples=3) == 2.0

    def test_too_few_samples(self):
        with pytest.raises(InsufficientDataError):
            median_normalizer([1.0, 2.0])

    def test_ratios(self):
        assert median_ratios({1.0: 2.0, 2.0: 5.0, 4.0: 15.0, 5.0: 1.0}) == {1.0: 2.5, 2.0: 3.0}

    def test_alpha_from_exact_samples(self):
        samples = {s: [3.0 * s**0.9] * 10 for s in (1.0, 2.0, 4.0, 8.0)}
        fit, medians = alpha_from_samples(samples)
        assert fit.slope == pytest.approx(0.9, abs=1e-10)
        assert set(medians) == {1.0, 2.0, 4.0, 8.0}
        assert fit.reliable

    def test_alpha_drops_thin_scales(self):
        samples = {s: [s] * 10 for s in (1.0, 2.0, 4.0)} | {8.0: [8.0]}
        fit, medians = alpha_from_samples(samples)
        assert set(medians) == {1.0, 2.0, 4.0}
        assert any("dropped" in note for note in fit.warnings)

    def test_alpha_insufficient(self):
        with pytest.raises(InsufficientDataError):
            alpha_from_samples({1.0: [1.0] * 10, 2.0: [2.0] * 10, 4.0: [4.0]})


class TestSpectral:
    def test_log_times(self):
        times = log_times((1.0, 100.0), 3)
        assert times == pytest.approx([1.0, 10.0, 100.0])
        with pytest.raises(ArgumentError):
            log_times((1.0, 5.0))
        with pytest.raises(ArgumentError):
            log_times((0.0, 10.0))

    def test_ring_is_one_dimensional(self, ring):
        fit = estimate_spectral_dimension([ring], t_range=(10.0, 1000.0), n_starts=2, method="eigen")
        estimate = spectral_dimension(fit)
        assert 0.85 <= estimate.value <= 1.15

    def test_complete_graph_reaches_equilibrium(self):
        n = 6
        complete = Network.from_edges(range(n), [(i, j, 1.0) for i in range(n) for j in range(i + 1, n)])
        fit = estimate_spectral_dimension([complete], t_range=(10.0, 100.0), method="eigen")
        assert any("equilibrium" in note for note in fit.warnings)

    def test_no_edges(self):
        with pytest.raises(ArgumentError):
            estimate_spectral_dimension([Network.from_edges([0], [])], t_range=(1.0, 10.0))
