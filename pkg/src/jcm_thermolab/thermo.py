"""Entanglement thermodynamics of the time-averaged atom state.

The long-time-averaged reduced density operator of the atom is diagonal,
diag(P_e, P_f), and commutes with any diagonal effective Hamiltonian.
Fitting its eigenvalues Lambda_pm to a two-level canonical distribution,

    Lambda_pm = exp(+-beta*epsilon) / (2 cosh(beta*epsilon)),

defines the entanglement temperature T = 1/(k_B beta).  Matching the
finite-temperature populations of the same system fixes the level scale to
epsilon = hbar*omega/2.

Sign convention: the excited population carries the exp(+beta*epsilon)
weight, i.e. the excited state is the low-energy level of the effective
Hamiltonian (energy -epsilon, ground state +epsilon).  The internal energy
is therefore U = -epsilon*tanh(beta*epsilon), and beta > 0 corresponds to
P_e > P_f.  We implement this convention as stated and expose signed beta.

beta is the primary temperature variable: it stays finite and continuous
through the resonance point where T diverges.  T is derived for display
(+-inf is representable there, but never fed back into arithmetic).  Only
the product beta*epsilon is physically meaningful; records expose it too.

Entropies are in bits (log base 2), so the maximally mixed atom has
entropy exactly 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .model import ModelParams

__all__ = [
    "SaturatedStateError",
    "ThermoState",
    "reduced_density",
    "entanglement_entropy",
    "inverse_temperature",
    "partition_function",
    "thermo_functions",
    "tfd_populations",
    "thermo_state",
]

_LN2 = math.log(2.0)


class SaturatedStateError(ValueError):
    """One population is exactly zero: |beta| = infinity, no finite record."""


@dataclass(frozen=True)
class ThermoState:
    """Canonical-ensemble description of the averaged atom state.

    `beta` is always finite (saturated states are not representable, see
    `SaturatedStateError`); `temperature` may be +-inf at beta = 0;
    `free_energy` is None at beta = 0 where -ln(Z)/beta is undefined.
    """

    lambda_plus: float
    lambda_minus: float
    epsilon: float
    beta: float
    temperature: float
    z: float
    entropy_bits: float
    free_energy: Optional[float]
    internal_energy: float

    @property
    def beta_epsilon(self) -> float:
        """Dimensionless ratio beta*epsilon, the only physical combination."""
        return self.beta * self.epsilon


def reduced_density(p_e: float, p_f: float) -> np.ndarray:
    """Reduced density matrix of the atom, diag(P_e, P_f), in the basis
    (excited, ground).  Rejects non-normalized or negative populations."""
    if abs(p_e + p_f - 1.0) > 1e-10:
        raise ValueError(f"populations must sum to 1, got {p_e!r} + {p_f!r}")
    if p_e < 0 or p_f < 0:
        raise ValueError("populations must be nonnegative")
    return np.diag([float(p_e), float(p_f)])


def entanglement_entropy(lambda_plus: float, lambda_minus: float) -> float:
    """Base-2 Shannon entropy of the two eigenvalues, with 0*log(0) = 0."""

    def term(x: float) -> float:
        return 0.0 if x == 0.0 else x * math.log2(x)

    return -term(lambda_plus) - term(lambda_minus)


def inverse_temperature(lambda_plus: float, lambda_minus: float, epsilon: float) -> float:
    """Signed inverse entanglement temperature beta = ln(L+/L-)/(2 epsilon).

    beta = 0 iff the eigenvalues are equal; beta > 0 iff lambda_plus
    dominates.  A vanishing eigenvalue means |beta| = infinity and raises
    `SaturatedStateError` instead of returning a float infinity.
    """
    if not epsilon > 0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    if lambda_plus <= 0.0 or lambda_minus <= 0.0:
        raise SaturatedStateError(
            f"saturated populations ({lambda_plus!r}, {lambda_minus!r}): "
            "|beta| is infinite"
        )
    return (math.log(lambda_plus) - math.log(lambda_minus)) / (2.0 * epsilon)


def partition_function(beta: float, epsilon: float) -> float:
    """Two-level partition function Z = 2 cosh(beta*epsilon) >= 2."""
    if not math.isfinite(beta):
        raise ValueError(f"beta must be finite, got {beta}")
    return 2.0 * math.cosh(beta * epsilon)


def thermo_functions(beta: float, epsilon: float) -> tuple[Optional[float], float, float]:
    """Helmholtz free energy, internal energy, and entropy from Z.

    U = -epsilon * tanh(beta*epsilon) (excited level at -epsilon);
    F = -ln(Z)/beta, undefined (None) at beta = 0;
    S = beta*(U - F)*k_B in bits, computed as (beta*U + ln Z)/ln 2, which is
    exactly 1 bit at beta = 0 and matches the Shannon entropy of the
    canonical populations.
    """
    if not math.isfinite(beta):
        raise ValueError(f"beta must be finite, got {beta}")
    x = beta * epsilon
    internal = -epsilon * math.tanh(x)
    log_z = math.log(partition_function(beta, epsilon))
    entropy_bits = (beta * internal + log_z) / _LN2
    free: Optional[float] = None if beta == 0.0 else -log_z / beta
    return free, internal, entropy_bits


def tfd_populations(beta: float, omega: float, hbar: float = 1.0) -> tuple[float, float]:
    """Atomic populations of the thermal-vacuum description at inverse
    temperature beta:

        P_e = e^{beta hbar omega/2} / (e^{beta hbar omega/2} + e^{-beta hbar omega/2})

    and P_f its complement.  Evaluated via tanh for stability at any beta.
    These coincide with the canonical eigenvalues above once
    epsilon = hbar*omega/2, which is how that identification is made.
    """
    if not math.isfinite(beta):
        raise ValueError(f"beta must be finite, got {beta}")
    half = math.tanh(0.5 * beta * hbar * omega)
    return 0.5 * (1.0 + half), 0.5 * (1.0 - half)


def thermo_state(p_e: float, p_f: float, params: ModelParams) -> ThermoState:
    """Full thermodynamic record for averaged populations (P_e, P_f).

    Raises `SaturatedStateError` for zero populations (the record keeps
    beta finite by contract).  temperature is 1/(k_B beta), +inf at beta=0.
    """
    reduced_density(p_e, p_f)  # validates normalization and positivity
    epsilon = 0.5 * params.hbar * params.omega
    beta = inverse_temperature(p_e, p_f, epsilon)
    temperature = math.inf if beta == 0.0 else 1.0 / (params.k_b * beta)
    z = partition_function(beta, epsilon)
    free, internal, entropy_bits = thermo_functions(beta, epsilon)
    return ThermoState(
        lambda_plus=float(p_e),
        lambda_minus=float(p_f),
        epsilon=epsilon,
        beta=beta,
        temperature=temperature,
        z=z,
        entropy_bits=entropy_bits,
        free_energy=free,
        internal_energy=internal,
    )
