import math

import numpy as np
import pytest

from jcm_thermolab.model import ModelParams, mixing_angle
from jcm_thermolab.states import (
    build_initial_state,
    dressed_amplitudes,
    initial_bare_amplitudes,
    poisson_coefficients,
)


def params(delta=0.0, g=0.001):
    return ModelParams.from_detuning(delta, g)


class TestPoissonCoefficients:
    def test_empty_cavity_is_degenerate(self):
        ph = poisson_coefficients(0.0)
        assert ph.c[0] == 1.0
        assert np.all(ph.c[1:] == 0.0)
        assert ph.n_max == 32

    def test_single_photon_mean_ground_weight(self):
        # analytic Poisson mass at n = 0
        ph = poisson_coefficients(1.0)
        assert ph.c[0] ** 2 == pytest.approx(0.36787944117144233, abs=1e-14)

    def test_floor_on_truncation(self):
        assert poisson_coefficients(1e-6).n_max == 32

    @pytest.mark.parametrize("n_bar", [0.3, 1.0, 5.0, 42.5, 100.0])
    def test_normalized_after_truncation(self, n_bar):
        ph = poisson_coefficients(n_bar)
        assert abs(float(np.sum(ph.c**2)) - 1.0) <= 1e-12
        assert np.all(ph.c >= 0.0)

    def test_mean_recovered_from_emitted_coefficients(self):
        ph = poisson_coefficients(100.0, tail_bound=1e-12)
        mean = float(np.arange(ph.c.size) @ ph.c**2)
        assert abs(mean - 100.0) <= 1e-9
        assert 100 < ph.n_max < 300

    def test_rejects_bad_inputs(self):
        with pytest.raises(ValueError):
            poisson_coefficients(-0.1)
        with pytest.raises(ValueError):
            poisson_coefficients(1.0, tail_bound=0.0)
        with pytest.raises(ValueError):
            poisson_coefficients(1.0, tail_bound=1e-3)


class TestBuildInitialState:
    def test_excited_atom_needs_no_compensation(self):
        s = build_initial_state(0.0, 0.0, poisson_coefficients(3.0))
        assert s.norm == 1.0

    def test_vacuum_equator_state(self):
        # removing |0>|f> from the vacuum equator state leaves exactly |0>|e>
        s = build_initial_state(math.pi / 2, 0.0, poisson_coefficients(0.0))
        assert s.norm == pytest.approx(math.sqrt(2.0), abs=1e-15)
        amp_e, amp_f = initial_bare_amplitudes(s)
        assert abs(amp_e[0] - 1.0) <= 1e-12
        assert np.all(np.abs(amp_e[1:]) == 0.0)
        assert np.all(np.abs(amp_f) == 0.0)

    def test_degenerate_input_rejected(self):
        with pytest.raises(ValueError, match="degenerate"):
            build_initial_state(math.pi, 0.0, poisson_coefficients(0.0))

    @pytest.mark.parametrize("gamma,phi", [(-0.1, 0.0), (3.2, 0.0), (0.5, -0.1), (0.5, 7.0)])
    def test_angle_ranges(self, gamma, phi):
        with pytest.raises(ValueError):
            build_initial_state(gamma, phi, poisson_coefficients(1.0))

    def test_bare_state_normalized(self):
        rng = np.random.default_rng(5)
        for _ in range(25):
            s = build_initial_state(
                rng.uniform(0, math.pi),
                rng.uniform(0, 2 * math.pi),
                poisson_coefficients(rng.uniform(0, 30)),
            )
            amp_e, amp_f = initial_bare_amplitudes(s)
            total = float(np.sum(np.abs(amp_e) ** 2) + np.sum(np.abs(amp_f) ** 2))
            assert abs(total - 1.0) <= 1e-12
            assert amp_f[0] == 0.0


class TestDressedAmplitudes:
    def test_vacuum_excited_block(self):
        p = params(delta=0.002)
        s = build_initial_state(0.0, 0.0, poisson_coefficients(0.0))
        a = dressed_amplitudes(s, p)
        theta0 = mixing_angle(0, p)
        assert a.a_plus[0] == pytest.approx(math.cos(theta0), abs=1e-15)
        assert a.a_minus[0] == pytest.approx(-math.sin(theta0), abs=1e-15)
        assert np.all(a.a_plus[1:] == 0.0)
        assert np.all(a.a_minus[1:] == 0.0)

    def test_vacuum_excited_resonant(self):
        a = dressed_amplitudes(build_initial_state(0.0, 0.0, poisson_coefficients(0.0)), params())
        inv_sqrt2 = 1.0 / math.sqrt(2.0)
        assert a.a_plus[0].real == pytest.approx(inv_sqrt2, abs=1e-15)
        assert a.a_minus[0].real == pytest.approx(-inv_sqrt2, abs=1e-15)

    def test_total_probability_one(self):
        rng = np.random.default_rng(19)
        for _ in range(25):
            p = params(delta=rng.uniform(-0.02, 0.02))
            s = build_initial_state(
                rng.uniform(0, math.pi),
                rng.uniform(0, 2 * math.pi),
                poisson_coefficients(rng.uniform(0, 50)),
            )
            a = dressed_amplitudes(s, p)
            total = float(np.sum(np.abs(a.a_plus) ** 2 + np.abs(a.a_minus) ** 2))
            assert abs(total - 1.0) <= 1e-10

    def test_squared_amplitudes_match_independent_expansion(self):
        # expand |a_n_pm|^2 by hand in terms of C_n, theta_n, gamma, phi and
        # compare against the constructed amplitudes
        rng = np.random.default_rng(23)
        for _ in range(20):
            delta = rng.uniform(-0.02, 0.02)
            gamma = rng.uniform(0, math.pi)
            phi = rng.uniform(0, 2 * math.pi)
            n_bar = rng.uniform(0, 30)
            p = params(delta=delta)
            photons = poisson_coefficients(n_bar)
            s = build_initial_state(gamma, phi, photons)
            a = dressed_amplitudes(s, p)

            c = photons.c
            c_next = np.append(c[1:], 0.0)
            theta = mixing_angle(np.arange(c.size), p)
            norm_sq = s.norm**2
            cos2_half = math.cos(gamma / 2.0) ** 2
            sin2_half = math.sin(gamma / 2.0) ** 2
            cross = 0.5 * c * c_next * np.sin(2 * theta) * math.sin(gamma) * math.cos(phi)
            plus_sq = norm_sq * (
                c**2 * np.cos(theta) ** 2 * cos2_half
                + cross
                + c_next**2 * np.sin(theta) ** 2 * sin2_half
            )
            minus_sq = norm_sq * (
                c**2 * np.sin(theta) ** 2 * cos2_half
                - cross
                + c_next**2 * np.cos(theta) ** 2 * sin2_half
            )
            np.testing.assert_allclose(np.abs(a.a_plus) ** 2, plus_sq, atol=1e-12)
            np.testing.assert_allclose(np.abs(a.a_minus) ** 2, minus_sq, atol=1e-12)

    def test_azimuth_enters_through_cosine(self):
        p = params(delta=0.01)
        photons = poisson_coefficients(8.0)
        rng = np.random.default_rng(31)
        for _ in range(10):
            gamma = rng.uniform(0.1, math.pi - 0.1)
            phi = rng.uniform(1e-3, 2 * math.pi - 1e-3)
            a1 = dressed_amplitudes(build_initial_state(gamma, phi, photons), p)
            a2 = dressed_amplitudes(build_initial_state(gamma, 2 * math.pi - phi, photons), p)
            np.testing.assert_allclose(
                np.abs(a1.a_plus) ** 2, np.abs(a2.a_plus) ** 2, atol=1e-12
            )
            np.testing.assert_allclose(
                np.abs(a1.a_minus) ** 2, np.abs(a2.a_minus) ** 2, atol=1e-12
            )
