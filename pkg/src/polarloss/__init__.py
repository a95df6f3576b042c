"""Photon-loss channel with loss statistically correlated to polarization mixing.

Submodules:

- ``noise_model``: the correlated angle distribution, its sampler and moments.
- ``fock_sim``: exact single-photon circuit simulator (the independent oracle).
- ``density``: small Hermitian eigensolver, entropy, density-matrix checks.
- ``coherent_channel``: weak-coherent outputs and Holevo information.
- ``qubit_channel``: dual-rail qubit channel and erasure capacity.
- ``cli`` / ``sweep`` / ``verify``: command line, sweep plumbing, cross-checks.
"""

from .noise_model import (
    AngleSample,
    ChannelParams,
    GaussianMoments,
    ParameterError,
    SpreadWarning,
    distribution_distance,
    moments_closed_form,
    moments_oracle,
    monte_carlo_moments,
    pdf,
    sample,
    validate_params,
)
from .density import (
    DensityReport,
    EigenSolverError,
    HermitianMatrix,
    assert_density,
    eigenvalues,
    von_neumann_entropy,
)
from .fock_sim import (
    SinglePhotonState,
    apply_channel_once,
    beam_splitter,
    channel_output,
    input_state_weak_coherent,
)
from .coherent_channel import (
    CoherentEnsembleParams,
    HolevoResult,
    QuadSettings,
    average_state,
    ensemble_photon_weight,
    holevo_chi,
    output_state_closed_form,
)
from .qubit_channel import (
    DiscreteEnsemble,
    LogicalQubit,
    channel_output_exact,
    channel_output_mean_rotation,
    erasure_capacity,
    erasure_probability,
    holevo_for_ensemble,
    optimal_ensemble,
)
from .sweep import CurvePoint, parse_grid

__version__ = "0.1.0"

__all__ = [
    "AngleSample",
    "ChannelParams",
    "CoherentEnsembleParams",
    "CurvePoint",
    "DensityReport",
    "DiscreteEnsemble",
    "EigenSolverError",
    "GaussianMoments",
    "HermitianMatrix",
    "HolevoResult",
    "LogicalQubit",
    "ParameterError",
    "QuadSettings",
    "SinglePhotonState",
    "SpreadWarning",
    "apply_channel_once",
    "assert_density",
    "average_state",
    "beam_splitter",
    "channel_output",
    "channel_output_exact",
    "channel_output_mean_rotation",
    "distribution_distance",
    "eigenvalues",
    "ensemble_photon_weight",
    "erasure_capacity",
    "erasure_probability",
    "holevo_chi",
    "holevo_for_ensemble",
    "input_state_weak_coherent",
    "moments_closed_form",
    "moments_oracle",
    "monte_carlo_moments",
    "optimal_ensemble",
    "output_state_closed_form",
    "parse_grid",
    "pdf",
    "sample",
    "validate_params",
    "von_neumann_entropy",
]
