"""Discord created at the two-site receiver of an engineered XY spin chain.

The package models an open chain of n spins whose coupling profile
interpolates between uniform and perfect-transfer engineering, propagates
a three-site sender state through it, and quantifies the quantum
correlations that arrive at the far end: the discord between the receiver
pair and the rest of the chain, and the discord inside the pair itself.
On top sit arrival-time optimization, profile sweeps, scaling fits, and
coverage maps of the creatable discord plane.
"""

from .chain import (
    AmplitudeMatrix,
    ChainSpec,
    CouplingProfile,
    SpectralDecomposition,
    amplitudes,
    coupling_profile,
    hamiltonian_matrix,
    perfect_transfer_time,
    spectral_decomposition,
)
from .correlations import (
    DiscordPair,
    ReceiverState,
    SenderState,
    discord_curves,
    discord_pair,
    q_ext,
    q_ext_from_rsq,
    q_r_closed_form,
    q_r_measurement_oracle,
    receiver_state,
    sender_state,
)
from .errors import (
    NoMaximumError,
    NumericsError,
    ParameterError,
    SpinDiscordError,
)
from .optimize import (
    FitResult,
    ScalingResult,
    TimeOptimum,
    find_first_maximum,
    fit_exponential,
    limiting_curve,
    phi_sweep,
    scaling_exponent,
    transfer_probability,
)
from .sweep import (
    D1,
    D2,
    D3,
    D4,
    FULL,
    SUBDOMAINS,
    CoverageReport,
    SubDomain,
    SweepPoint,
    coverage,
    run_map_experiment,
    subdomain,
    sweep,
)

__version__ = "0.1.0"

__all__ = [
    "AmplitudeMatrix",
    "ChainSpec",
    "CouplingProfile",
    "CoverageReport",
    "D1",
    "D2",
    "D3",
    "D4",
    "DiscordPair",
    "FULL",
    "FitResult",
    "NoMaximumError",
    "NumericsError",
    "ParameterError",
    "ReceiverState",
    "ScalingResult",
    "SenderState",
    "SpectralDecomposition",
    "SpinDiscordError",
    "SubDomain",
    "SUBDOMAINS",
    "SweepPoint",
    "TimeOptimum",
    "amplitudes",
    "coupling_profile",
    "coverage",
    "discord_curves",
    "discord_pair",
    "find_first_maximum",
    "fit_exponential",
    "hamiltonian_matrix",
    "limiting_curve",
    "perfect_transfer_time",
    "phi_sweep",
    "q_ext",
    "q_ext_from_rsq",
    "q_r_closed_form",
    "q_r_measurement_oracle",
    "receiver_state",
    "run_map_experiment",
    "scaling_exponent",
    "sender_state",
    "spectral_decomposition",
    "subdomain",
    "sweep",
    "transfer_probability",
]
