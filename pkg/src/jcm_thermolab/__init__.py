"""Entanglement thermodynamics of a two-level atom coupled to one quantized
cavity mode: exact dressed-state dynamics, time-averaged limiting
distributions, entanglement temperature, and the thermal-population
correspondence, with a brute-force time-integration oracle validating every
closed form."""

from .asymptotics import (
    AsymptoticDistribution,
    asymptotic_distribution,
    limiting_atom_populations,
    limiting_photon_distribution,
    mean_photon_closed_form,
    mean_photon_number,
    photon_number_shift,
)
from .dynamics import (
    StateVector,
    TimeAverageResult,
    dressed_projection,
    evolve,
    excited_probability_at,
    photon_distribution_at,
    time_average_oracle,
)
from .model import (
    DressedMode,
    ModelParams,
    dressed_energies,
    dressed_mode,
    mixing_angle,
    rabi_frequency,
)
from .states import (
    DressedAmplitudes,
    InitialState,
    PhotonCoefficients,
    build_initial_state,
    dressed_amplitudes,
    initial_bare_amplitudes,
    poisson_coefficients,
)
from .thermo import (
    SaturatedStateError,
    ThermoState,
    entanglement_entropy,
    inverse_temperature,
    partition_function,
    reduced_density,
    tfd_populations,
    thermo_functions,
    thermo_state,
)

__version__ = "0.1.0"
