"""Separable atom-photon initial states and their dressed-basis expansion.

The atom starts on the Bloch sphere at polar angle gamma and azimuth phi,
the field in a coherent (Poisson) photon-number distribution with mean
n_bar.  The component on |0>|f> must be removed: that state lives outside
the block structure of the coupled Hamiltonian and never mixes, so a
normalization factor norm >= 1 compensates for the deleted amplitude.

Phase convention: the photon coefficients C_n are real and nonnegative.
The closed-form equilibrium results in `asymptotics` use products
C_n * C_{n+1} without conjugation and rely on this convention.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import ModelParams, mixing_angle

__all__ = [
    "PhotonCoefficients",
    "InitialState",
    "DressedAmplitudes",
    "poisson_coefficients",
    "build_initial_state",
    "initial_bare_amplitudes",
    "dressed_amplitudes",
]

#: Minimum truncation index kept even for sharply localized distributions.
N_MAX_FLOOR = 32

#: Squared-amplitude mass tolerated before an input is declared degenerate
#: (entirely the excluded |0>|f> state) rather than renormalized.
DEGENERATE_TOL = 1e-12


@dataclass(frozen=True)
class PhotonCoefficients:
    """Real nonnegative amplitudes C_n of the initial photon distribution,
    truncated at n_max and renormalized so that sum(C_n^2) = 1."""

    c: np.ndarray
    n_bar: float

    def __post_init__(self):
        c = np.asarray(self.c, dtype=float)
        object.__setattr__(self, "c", c)
        if c.ndim != 1 or c.size < 1:
            raise ValueError("c must be a nonempty 1-d array")
        if np.any(c < 0):
            raise ValueError("photon amplitudes must be nonnegative")
        total = float(np.sum(c**2))
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"photon amplitudes not normalized: sum C_n^2 = {total!r}")

    @property
    def n_max(self) -> int:
        return self.c.size - 1


@dataclass(frozen=True)
class InitialState:
    """Atomic Bloch angles, photon amplitudes, and the normalization that
    compensates for the removed |0>|f> component."""

    gamma: float
    phi: float
    photons: PhotonCoefficients
    norm: float


@dataclass(frozen=True)
class DressedAmplitudes:
    """Expansion coefficients of a state over the exact eigenbasis,
    one (plus, minus) pair per block index 0..n_max."""

    a_plus: np.ndarray
    a_minus: np.ndarray

    def __post_init__(self):
        a_plus = np.asarray(self.a_plus, dtype=complex)
        a_minus = np.asarray(self.a_minus, dtype=complex)
        object.__setattr__(self, "a_plus", a_plus)
        object.__setattr__(self, "a_minus", a_minus)
        if a_plus.shape != a_minus.shape or a_plus.ndim != 1:
            raise ValueError("a_plus and a_minus must be 1-d arrays of equal length")
        total = float(np.sum(np.abs(a_plus) ** 2 + np.abs(a_minus) ** 2))
        if abs(total - 1.0) > 1e-10:
            raise ValueError(f"dressed amplitudes not normalized: total = {total!r}")

    @property
    def n_max(self) -> int:
        return self.a_plus.size - 1


def poisson_coefficients(n_bar: float, tail_bound: float = 1e-12) -> PhotonCoefficients:
    """Amplitudes C_n = exp(-n_bar/2) n_bar^(n/2) / sqrt(n!) of a coherent field.

    Coherent cavity fields carry Poisson photon-number statistics; the
    closed-form equilibrium expressions in `asymptotics` are specific to
    this family, so it is the supported way to construct photon inputs.

    The probabilities are evaluated in log space and exponentiated, the
    series is cut at the smallest n_max whose cumulative mass reaches
    1 - tail_bound (never below ``N_MAX_FLOOR``), and the surviving
    coefficients are renormalized.

    Parameters
    ----------
    n_bar : float
        Mean photon number, >= 0.
    tail_bound : float
        Discarded probability mass, in (0, 1e-6].
    """
    if n_bar < 0:
        raise ValueError(f"n_bar must be >= 0, got {n_bar}")
    if not 0.0 < tail_bound <= 1e-6:
        raise ValueError(f"tail_bound must be in (0, 1e-6], got {tail_bound}")

    if n_bar == 0.0:
        c = np.zeros(N_MAX_FLOOR + 1)
        c[0] = 1.0
        return PhotonCoefficients(c=c, n_bar=0.0)

    n_hi = max(N_MAX_FLOOR, int(n_bar + 12.0 * math.sqrt(n_bar) + 24.0))
    while True:
        n = np.arange(n_hi + 1)
        log_fact = np.concatenate(([0.0], np.cumsum(np.log(np.arange(1.0, n_hi + 1.0)))))
        log_p = -n_bar + n * math.log(n_bar) - log_fact
        p = np.exp(log_p)
        cum = np.cumsum(p)
        if cum[-1] >= 1.0 - tail_bound:
            break
        n_hi = 2 * n_hi + 16

    n_max = max(N_MAX_FLOOR, int(np.searchsorted(cum, 1.0 - tail_bound)))
    p = p[: n_max + 1]
    p = p / p.sum()
    return PhotonCoefficients(c=np.sqrt(p), n_bar=float(n_bar))


def build_initial_state(gamma: float, phi: float, photons: PhotonCoefficients) -> InitialState:
    """Separable atom (x) field state with the |0>|f> component removed.

    The atom part is cos(gamma/2)|e> + exp(i phi) sin(gamma/2)|f>.  Deleting
    the |0>|f> amplitude C_0 sin(gamma/2) costs probability, compensated by
    norm = 1/sqrt(1 - C_0^2 sin^2(gamma/2)).

    Raises
    ------
    ValueError
        If the angles are out of range, or if essentially all probability
        sits on the excluded state (C_0^2 sin^2(gamma/2) >= 1 - 1e-12),
        e.g. n_bar = 0 with gamma = pi.
    """
    if not 0.0 <= gamma <= math.pi:
        raise ValueError(f"gamma must be in [0, pi], got {gamma}")
    if not 0.0 <= phi < 2.0 * math.pi:
        raise ValueError(f"phi must be in [0, 2*pi), got {phi}")
    removed = photons.c[0] ** 2 * math.sin(gamma / 2.0) ** 2
    if removed >= 1.0 - DEGENERATE_TOL:
        raise ValueError(
            "degenerate initial state: all probability on the excluded |0>|f> component"
        )
    return InitialState(
        gamma=float(gamma),
        phi=float(phi),
        photons=photons,
        norm=1.0 / math.sqrt(1.0 - removed),
    )


def initial_bare_amplitudes(s: InitialState) -> tuple[np.ndarray, np.ndarray]:
    """Bare-basis amplitudes of the initial ket.

    Returns
    -------
    amp_e : complex array, index 0..n_max
        Amplitudes on |n>|e>.
    amp_f : complex array, index 0..n_max+1
        Amplitudes on |n>|f>; amp_f[0] is identically 0.
    """
    c = s.photons.c
    cos_half = math.cos(s.gamma / 2.0)
    sin_half = math.sin(s.gamma / 2.0)
    phase = complex(math.cos(s.phi), math.sin(s.phi))
    amp_e = (s.norm * cos_half) * c.astype(complex)
    amp_f = np.zeros(c.size + 1, dtype=complex)
    # index n pairs with C_n; the slot n_max+1 only fills under evolution
    amp_f[1 : c.size] = (s.norm * sin_half * phase) * c[1:]
    return amp_e, amp_f


def dressed_amplitudes(s: InitialState, p: ModelParams) -> DressedAmplitudes:
    """Project the initial state onto the exact eigenbasis.

    Block n couples |n, e> with |n+1, f>, so

        a_n_plus  = norm (C_n cos(theta_n) cos(gamma/2)
                          + C_{n+1} sin(theta_n) e^{i phi} sin(gamma/2))
        a_n_minus = norm (C_{n+1} cos(theta_n) e^{i phi} sin(gamma/2)
                          - C_n sin(theta_n) cos(gamma/2))

    with C_{n_max+1} = 0.  The total probability sums to 1 because the
    blocks span exactly the complement of the excluded |0>|f> state.
    """
    c = s.photons.c
    n = np.arange(c.size)
    theta = mixing_angle(n, p)
    cos_t, sin_t = np.cos(theta), np.sin(theta)

    c_next = np.append(c[1:], 0.0)
    cos_half = math.cos(s.gamma / 2.0)
    sin_half = math.sin(s.gamma / 2.0)
    phase = complex(math.cos(s.phi), math.sin(s.phi))

    a_plus = s.norm * (c * cos_t * cos_half + c_next * sin_t * (phase * sin_half))
    a_minus = s.norm * (c_next * cos_t * (phase * sin_half) - c * sin_t * cos_half)
    return DressedAmplitudes(a_plus=a_plus, a_minus=a_minus)
