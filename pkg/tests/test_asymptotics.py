import math

import numpy as np
import pytest

from jcm_thermolab.asymptotics import (
    asymptotic_distribution,
    limiting_atom_populations,
    limiting_photon_distribution,
    mean_photon_closed_form,
    mean_photon_number,
    photon_number_shift,
)
from jcm_thermolab.dynamics import (
    excited_probability_at,
    photon_distribution_at,
    time_average_oracle,
)
from jcm_thermolab.model import ModelParams
from jcm_thermolab.states import build_initial_state, dressed_amplitudes, poisson_coefficients

G = 0.001


def amplitudes(gamma=0.0, phi=0.0, n_bar=0.0, delta=0.0):
    p = ModelParams.from_detuning(delta, G)
    s = build_initial_state(gamma, phi, poisson_coefficients(n_bar))
    return dressed_amplitudes(s, p), p


class TestLimitingPhotonDistribution:
    def test_resonant_vacuum_splits_evenly(self):
        a, p = amplitudes()
        dist = limiting_photon_distribution(a, p)
        assert dist[0] == pytest.approx(0.5, abs=1e-12)
        assert dist[1] == pytest.approx(0.5, abs=1e-12)
        assert np.all(dist[2:] == 0.0)

    def test_normalized(self):
        rng = np.random.default_rng(13)
        for _ in range(20):
            a, p = amplitudes(
                gamma=rng.uniform(0, math.pi),
                phi=rng.uniform(0, 2 * math.pi),
                n_bar=rng.uniform(0, 40),
                delta=rng.uniform(-0.02, 0.02),
            )
            dist = limiting_photon_distribution(a, p)
            assert abs(float(np.sum(dist)) - 1.0) <= 1e-10
            assert np.all(dist >= 0.0)


class TestLimitingAtomPopulations:
    def test_resonance_universality(self):
        # at zero detuning the averaged populations are 1/2 regardless of
        # the initial condition
        rng = np.random.default_rng(17)
        for _ in range(100):
            a, p = amplitudes(
                gamma=rng.uniform(0, math.pi),
                phi=rng.uniform(0, 2 * math.pi),
                n_bar=rng.uniform(0, 100),
            )
            p_e, p_f = limiting_atom_populations(a, p)
            assert abs(p_e - 0.5) <= 1e-12
            assert p_e + p_f == 1.0

    def test_vacuum_excited_quartic_weights(self):
        a, p = amplitudes(delta=0.0015)
        from jcm_thermolab.model import mixing_angle

        theta0 = mixing_angle(0, p)
        p_e, _ = limiting_atom_populations(a, p)
        assert p_e == pytest.approx(math.cos(theta0) ** 4 + math.sin(theta0) ** 4, abs=1e-13)


class TestMeanPhotonNumber:
    def test_point_masses(self):
        assert mean_photon_number(np.array([1.0])) == 0.0
        assert mean_photon_number(np.array([0.5, 0.5])) == 0.5

    def test_resonant_vacuum_bound(self):
        a, p = amplitudes()
        dist = limiting_photon_distribution(a, p)
        assert mean_photon_number(dist) == pytest.approx(0.5, abs=1e-12)


class TestMeanPhotonClosedForm:
    def test_rejects_non_poisson_weight(self):
        with pytest.raises(ValueError, match="Poisson"):
            mean_photon_closed_form(0.5, 1.0, 0.0, c0_sq=0.5)

    def test_empty_cavity_reduces_to_ground_population(self):
        assert mean_photon_closed_form(0.37, 0.0, 1.2, c0_sq=1.0) == pytest.approx(0.37, abs=1e-15)

    def test_large_mean_limit(self):
        # e^{-100} is negligible: <n> ~= P_f + n_bar - sin^2(gamma/2)
        gamma = 1.1
        value = mean_photon_closed_form(0.45, 100.0, gamma, c0_sq=math.exp(-100.0))
        assert value == pytest.approx(0.45 + 100.0 - math.sin(gamma / 2) ** 2, abs=1e-9)

    @pytest.mark.parametrize("n_bar", [0.0, 1.0, 5.0, 100.0])
    @pytest.mark.parametrize("gamma", [0.0, math.pi / 3])
    @pytest.mark.parametrize("delta", [0.0, 0.01])
    def test_matches_direct_summation(self, n_bar, gamma, delta):
        photons = poisson_coefficients(n_bar)
        p = ModelParams.from_detuning(delta, G)
        s = build_initial_state(gamma, 0.0, photons)
        a = dressed_amplitudes(s, p)
        dist = limiting_photon_distribution(a, p)
        _, p_f = limiting_atom_populations(a, p)
        direct = mean_photon_number(dist)
        closed = mean_photon_closed_form(p_f, n_bar, gamma, c0_sq=float(photons.c[0] ** 2))
        assert abs(direct - closed) <= 1e-6


class TestPhotonNumberShift:
    def test_balanced_case_vanishes(self):
        assert photon_number_shift(0.5, math.pi / 2) == pytest.approx(0.0, abs=1e-15)

    def test_excited_atom_gives_ground_population(self):
        assert photon_number_shift(0.41, 0.0) == 0.41

    def test_large_mean_shift_against_direct_summation(self):
        for gamma in (0.0, math.pi / 3, 2 * math.pi / 3):
            for delta in (0.0, 0.01):
                dist = asymptotic_distribution(*amplitudes(gamma=gamma, n_bar=100.0, delta=delta), n_bar=100.0)
                assert abs(dist.delta_n - photon_number_shift(dist.p_f, gamma)) <= 1e-6


class TestAsymptoticDistributionRecord:
    def test_fields_consistent(self):
        a, p = amplitudes(gamma=0.8, phi=0.2, n_bar=3.0, delta=0.004)
        record = asymptotic_distribution(a, p, 3.0)
        assert record.p_e + record.p_f == 1.0
        assert 0.0 <= record.p_e <= 1.0
        assert record.mean_n >= 0.0
        assert record.delta_n == record.mean_n - 3.0
        assert abs(float(np.sum(record.p_n)) - 1.0) <= 1e-10


class TestOracleEquivalence:
    def test_closed_forms_match_time_average(self):
        # smoke-scale check; the full five-set sweep at 1e5 samples runs in
        # the acceptance suite
        a, p = amplitudes(gamma=math.pi / 3, phi=0.9, n_bar=1.0, delta=0.005)
        closed = asymptotic_distribution(a, p, 1.0)

        def observable(sv):
            return np.concatenate(([excited_probability_at(sv)], photon_distribution_at(sv)))

        result = time_average_oracle(a, p, observable, 1e4 * 2 * math.pi / G, 20_000)
        assert abs(float(result.mean[0]) - closed.p_e) <= 1e-3
        np.testing.assert_allclose(np.asarray(result.mean[1:11]), closed.p_n[:10], atol=1e-3)
        assert abs(mean_photon_number(np.asarray(result.mean[1:])) - closed.mean_n) <= 1e-3
