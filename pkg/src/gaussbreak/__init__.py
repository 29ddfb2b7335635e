"""Gaussian channel incompatibility analysis.

Phase-space representations of Gaussian states, channels and observables,
together with decision procedures for incompatibility breaking,
entanglement breaking and steerability, explicit incompatibility
witnesses, joint-observable construction, and outcome statistics.

Conventions (fixed package-wide, documented in :mod:`gaussbreak.phase_space`
and :mod:`gaussbreak.distributions`): modes are ordered (q1, p1, ..., qN, pN);
the symplectic form is the direct sum of [[0, 1], [-1, 0]] blocks; covariance
matrices use the anticommutator convention without the 1/2, so the vacuum has
V = I.
"""

from .classification import (
    DEFAULT_R_GRID,
    ChannelReport,
    ClassicalNoiseReport,
    EbCertificate,
    EbResult,
    EprProbe,
    SteerabilityBreakingReport,
    SteeringVerdict,
    classify_channel,
    classify_classical_noise,
    gib_form,
    is_eb,
    is_gib,
    is_steerability_breaking,
    is_steerable,
    steering_form,
)
from .compatibility import (
    CompatibilityVerdict,
    MarginSpec,
    joint_from_postprocessings,
    margin,
    pair_compatible,
    quad_pair_compatible,
)
from .distributions import (
    OutcomeGaussian,
    moment_distance,
    outcome_distribution,
    sample,
)
from .errors import (
    GaussBreakError,
    InvalidInputError,
    NumericalError,
    PreconditionError,
)
from .feasibility import FeasibilityResult, LmiProblem
from .feasibility import solve as solve_lmi
from .objects import (
    GaussianChannel,
    GaussianObservable,
    GaussianPostprocessing,
    GaussianState,
    InvariantCheck,
    ValidityReport,
    apply_channel_to_observable,
    apply_channel_to_state,
    apply_postprocessing,
    canonical_position,
    compose_channels,
    cp_form,
    epr_state,
    extend_channel,
    observable_form,
    one_sided_apply,
    quadrature_observable,
    vacuum_state,
    validate,
)
from .phase_space import (
    PSD_RTOL,
    SYMMETRY_RTOL,
    HermitianForm,
    PsdVerdict,
    check_psd,
    min_eig_vector,
    symplectic_form,
)
from .witness import IncompatibilityWitness, build_witness, verify_witness

__version__ = "1.0.0"

__all__ = [
    "__version__",
    # errors
    "GaussBreakError",
    "InvalidInputError",
    "PreconditionError",
    "NumericalError",
    # phase space
    "SYMMETRY_RTOL",
    "PSD_RTOL",
    "HermitianForm",
    "PsdVerdict",
    "check_psd",
    "min_eig_vector",
    "symplectic_form",
    # objects
    "GaussianState",
    "GaussianChannel",
    "GaussianObservable",
    "GaussianPostprocessing",
    "InvariantCheck",
    "ValidityReport",
    "validate",
    "vacuum_state",
    "epr_state",
    "quadrature_observable",
    "canonical_position",
    "apply_channel_to_state",
    "apply_channel_to_observable",
    "apply_postprocessing",
    "extend_channel",
    "one_sided_apply",
    "compose_channels",
    "cp_form",
    "observable_form",
    # classification
    "DEFAULT_R_GRID",
    "gib_form",
    "is_gib",
    "is_eb",
    "steering_form",
    "is_steerable",
    "is_steerability_breaking",
    "classify_classical_noise",
    "classify_channel",
    "ChannelReport",
    "EbResult",
    "EbCertificate",
    "SteeringVerdict",
    "EprProbe",
    "SteerabilityBreakingReport",
    "ClassicalNoiseReport",
    # witnesses and compatibility
    "IncompatibilityWitness",
    "build_witness",
    "verify_witness",
    "CompatibilityVerdict",
    "MarginSpec",
    "margin",
    "joint_from_postprocessings",
    "quad_pair_compatible",
    "pair_compatible",
    # feasibility
    "LmiProblem",
    "FeasibilityResult",
    "solve_lmi",
    # distributions
    "OutcomeGaussian",
    "outcome_distribution",
    "sample",
    "moment_distance",
]
