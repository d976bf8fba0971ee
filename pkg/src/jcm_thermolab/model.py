"""Physical constants and the analytic dressed-level structure of a single
two-level atom exchanging excitation with one quantized cavity mode.

Unit conventions
----------------
hbar = k_B = 1 and the field frequency omega defaults to 1, so energies are
quoted in units of hbar*omega and temperatures in units of hbar*omega/k_B.
All frequencies are angular.  The detuning delta = omega - omega_a is a
derived quantity, never stored separately.

The coupled Hamiltonian splits into independent two-dimensional blocks, one
per photon index n, each spanned by |n, e> and |n+1, f>.  Everything in this
module is the analytic spectrum of those blocks: the Rabi splitting
Omega_n = sqrt(delta^2 + (n+1) g^2), the mixing angle theta_n that rotates
the bare pair into the exact eigenstates, and the eigenenergies
E_pm(n) = omega (n + 1/2) +- Omega_n / 2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "ModelParams",
    "DressedMode",
    "rabi_frequency",
    "mixing_angle",
    "dressed_energies",
    "dressed_mode",
]


@dataclass(frozen=True, kw_only=True)
class ModelParams:
    """Constants of the cavity-atom system.

    Parameters
    ----------
    omega : float
        Field (cavity) angular frequency, > 0.
    omega_a : float
        Atomic transition angular frequency.
    g : float
        Atom-field coupling constant, > 0.
    hbar, k_b : float
        Unit-system constants, both fixed to 1 by convention.
    """

    omega: float = 1.0
    omega_a: float = 1.0
    g: float
    hbar: float = 1.0
    k_b: float = 1.0

    def __post_init__(self):
        if not self.omega > 0:
            raise ValueError(f"omega must be positive, got {self.omega}")
        if not self.g > 0:
            raise ValueError(f"coupling g must be positive, got {self.g}")
        if not (self.hbar > 0 and self.k_b > 0):
            raise ValueError("hbar and k_b must be positive")

    @property
    def detuning(self) -> float:
        """delta = omega - omega_a; zero at resonance."""
        return self.omega - self.omega_a

    @classmethod
    def from_detuning(cls, delta: float, g: float, omega: float = 1.0) -> "ModelParams":
        """Build parameters from the detuning instead of the atomic frequency."""
        return cls(omega=omega, omega_a=omega - delta, g=g)


@dataclass(frozen=True)
class DressedMode:
    """Spectrum of the n-th two-dimensional block: mixing angle, Rabi
    splitting and the two eigenenergies (e_plus > e_minus)."""

    n: int
    theta: float
    rabi: float
    e_plus: float
    e_minus: float


def _check_photon_index(n) -> None:
    if np.any(np.asarray(n) < 0):
        raise ValueError("photon index n must be >= 0")


def rabi_frequency(n, p: ModelParams):
    """Rabi splitting Omega_n = sqrt(delta^2 + (n+1) g^2), strictly positive.

    Accepts a scalar photon index or an integer array (vectorized).
    """
    _check_photon_index(n)
    n = np.asarray(n, dtype=float)
    out = np.sqrt(p.detuning**2 + (n + 1.0) * p.g**2)
    return out if out.ndim else float(out)


def mixing_angle(n, p: ModelParams):
    """Mixing angle theta_n in (0, pi/2), from tan(2 theta_n) = g sqrt(n+1) / delta.

    The branch is fixed by 2 theta_n = atan2(g sqrt(n+1), delta) in (0, pi),
    which keeps sin(theta_n) and cos(theta_n) both positive, gives exactly
    pi/4 at resonance, and is continuous through delta = 0.
    """
    _check_photon_index(n)
    n = np.asarray(n, dtype=float)
    out = 0.5 * np.arctan2(p.g * np.sqrt(n + 1.0), p.detuning)
    return out if out.ndim else float(out)


def dressed_energies(n, p: ModelParams):
    """Eigenenergy pair (E_plus, E_minus) of the n-th block.

    The midpoint is hbar*omega*(n + 1/2) and the gap is hbar*Omega_n.
    """
    _check_photon_index(n)
    n = np.asarray(n, dtype=float)
    mid = p.hbar * p.omega * (n + 0.5)
    half_gap = 0.5 * p.hbar * rabi_frequency(n, p)
    e_plus = mid + half_gap
    e_minus = mid - half_gap
    if e_plus.ndim:
        return e_plus, e_minus
    return float(e_plus), float(e_minus)


def dressed_mode(n: int, p: ModelParams) -> DressedMode:
    """Assemble the full DressedMode record for a single photon index."""
    e_plus, e_minus = dressed_energies(n, p)
    return DressedMode(
        n=int(n),
        theta=mixing_angle(n, p),
        rabi=rabi_frequency(n, p),
        e_plus=e_plus,
        e_minus=e_minus,
    )
