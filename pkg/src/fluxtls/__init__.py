"""Flux qubit / two-level-system coupling simulator and analysis toolkit."""

from fluxtls.model import (
    BASIS_LABELS,
    DeviceParams,
    PhysicalConstants,
    energy_detuning,
    flux_offset_for_detuning,
    flux_sensitivity,
    frequency_detuning,
    full_hamiltonian,
    oscillation_frequency,
    qubit_frequency,
    subspace_hamiltonian,
)
from fluxtls.noise import (
    NoiseTrajectory,
    OneOverFSpectrum,
    WhiteTransverseChannel,
    dephasing_sigma,
    filter_coefficient,
    predicted_dephasing_time,
    quasistatic_sigma,
    sample_quasistatic,
    spectral_density,
    synthesize_trajectory,
)

__version__ = "0.1.0"
