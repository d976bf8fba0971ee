"""Closed forms for the time-averaged (limiting) distributions.

Every oscillatory cross term between the two eigenstates of a block
averages to zero over an infinite horizon (the splitting Omega_n is
strictly positive for g > 0, and distinct blocks never share a frequency),
so the limiting probabilities are weighted sums of squared eigenbasis
amplitudes with the block rotation coefficients.  These expressions are
what `dynamics.time_average_oracle` must reproduce.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import ModelParams, mixing_angle
from .states import DressedAmplitudes

__all__ = [
    "AsymptoticDistribution",
    "limiting_photon_distribution",
    "limiting_atom_populations",
    "mean_photon_number",
    "mean_photon_closed_form",
    "photon_number_shift",
    "asymptotic_distribution",
]


@dataclass(frozen=True)
class AsymptoticDistribution:
    """Limiting photon distribution and atom populations, with the mean
    photon number and its shift from the initial mean."""

    p_n: np.ndarray
    p_e: float
    p_f: float
    mean_n: float
    delta_n: float


def _squared_weights(a: DressedAmplitudes, p: ModelParams):
    n = np.arange(a.a_plus.size)
    theta = mixing_angle(n, p)
    cos2 = np.cos(theta) ** 2
    sin2 = np.sin(theta) ** 2
    return np.abs(a.a_plus) ** 2, np.abs(a.a_minus) ** 2, cos2, sin2


def limiting_photon_distribution(a: DressedAmplitudes, p: ModelParams) -> np.ndarray:
    """Time-averaged photon distribution P(n), index 0..n_max+1.

    Block n feeds probability |a_n_plus|^2 cos^2(theta_n)
    + |a_n_minus|^2 sin^2(theta_n) into photon number n and the
    complementary weights into photon number n+1.
    """
    ap2, am2, cos2, sin2 = _squared_weights(a, p)
    dist = np.zeros(a.a_plus.size + 1)
    dist[:-1] += ap2 * cos2 + am2 * sin2
    dist[1:] += ap2 * sin2 + am2 * cos2
    return dist


def limiting_atom_populations(a: DressedAmplitudes, p: ModelParams) -> tuple[float, float]:
    """Time-averaged atom populations (P_e, P_f), with P_f = 1 - P_e.

    At resonance every mixing angle is pi/4 and P_e = 1/2 regardless of the
    initial condition.
    """
    ap2, am2, cos2, sin2 = _squared_weights(a, p)
    p_e = float(np.sum(ap2 * cos2 + am2 * sin2))
    return p_e, 1.0 - p_e


def mean_photon_number(dist: np.ndarray) -> float:
    """Mean of a photon-number distribution, sum over n >= 0 of n * P(n)."""
    dist = np.asarray(dist, dtype=float)
    return float(np.arange(dist.size) @ dist)


def mean_photon_closed_form(p_f: float, n_bar: float, gamma: float, c0_sq: float) -> float:
    """Equilibrium mean photon number for a Poisson (coherent) input:

        <n> = P_f + (n_bar - (1 - e^{-n_bar}) sin^2(gamma/2))
                    / (1 - e^{-n_bar} sin^2(gamma/2))

    Valid only on the Poisson family, where C_0^2 = e^{-n_bar}; `c0_sq` is
    checked against that identity and anything else is rejected.
    """
    if abs(c0_sq - math.exp(-n_bar)) > 1e-9:
        raise ValueError(
            f"closed form requires Poisson input: C_0^2 = {c0_sq!r} but "
            f"exp(-n_bar) = {math.exp(-n_bar)!r}"
        )
    sin2_half = math.sin(gamma / 2.0) ** 2
    exp_neg = math.exp(-n_bar)
    return p_f + (n_bar - (1.0 - exp_neg) * sin2_half) / (1.0 - exp_neg * sin2_half)


def photon_number_shift(p_f: float, gamma: float) -> float:
    """Large-n_bar shift of the equilibrium mean from the initial mean:
    delta_n ~= P_f - sin^2(gamma/2)."""
    return p_f - math.sin(gamma / 2.0) ** 2


def asymptotic_distribution(
    a: DressedAmplitudes, p: ModelParams, n_bar: float
) -> AsymptoticDistribution:
    """Assemble the full limiting-distribution record for one state."""
    p_n = limiting_photon_distribution(a, p)
    p_e, p_f = limiting_atom_populations(a, p)
    mean_n = mean_photon_number(p_n)
    return AsymptoticDistribution(
        p_n=p_n, p_e=p_e, p_f=p_f, mean_n=mean_n, delta_n=mean_n - n_bar
    )
