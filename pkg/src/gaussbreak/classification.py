"""Breaking properties of Gaussian channels.

Three progressively stronger-looking properties of a channel (A, B, c) turn
out to coincide or order strictly:

  - incompatibility breaking (every pair of observables becomes jointly
    measurable after the channel):  B - i A^T Omega A >= 0;
  - steerability breaking (no bipartite state remains steerable when the
    channel acts on the trusted side): equivalent to the same matrix
    condition, which the EPR probe grid illustrates numerically;
  - entanglement breaking:  B = B1 + B2 with B1 + i Omega >= 0 and
    B2 - i A^T Omega A >= 0, a strictly stronger property (the classical
    noise channel (I, I, 0) breaks incompatibility but not entanglement).

Steerability of a bipartite state (V, r) with split (n_a, n_b), trusted side
B, is decided by V + i (0 (+) Omega_B) >= 0: the state is unsteerable from A
to B exactly when that form is positive semidefinite.

The decision in :func:`is_steerability_breaking` rides on the algebraic
criterion; the EPR grid is diagnostic evidence.  The grid's largest r
dominates: for a channel that fails the criterion with margin delta, the
steering form of the probed output at parameter r keeps a negative
eigenvalue once exp(-r) * scale < delta, so by r = 8 any violation of
practical size is visible, while the kernel-limit quantity
min_{|z|=1} conj(z)^T Omega (B - i A^T Omega A) Omega^T z reports the
r -> infinity limit exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import PreconditionError
from .feasibility import LmiProblem, solve
from .objects import (
    GaussianChannel,
    GaussianState,
    ValidityReport,
    epr_state,
    one_sided_apply,
    validate,
)
from .phase_space import PSD_RTOL, HermitianForm, PsdVerdict, check_psd, symplectic_form

__all__ = [
    "DEFAULT_R_GRID",
    "EbCertificate",
    "EbResult",
    "SteeringVerdict",
    "EprProbe",
    "SteerabilityBreakingReport",
    "ClassicalNoiseReport",
    "ChannelReport",
    "gib_form",
    "is_gib",
    "is_eb",
    "steering_form",
    "is_steerable",
    "is_steerability_breaking",
    "classify_classical_noise",
    "classify_channel",
]

DEFAULT_R_GRID = (0.25, 0.5, 1.0, 2.0, 4.0, 8.0)


@dataclass(frozen=True)
class EbCertificate:
    """A feasible split B = B1 + B2 witnessing entanglement breaking."""

    b1: np.ndarray
    state_form: PsdVerdict       # B1 + i Omega
    measure_form: PsdVerdict     # (B - B1) - i A^T Omega A


@dataclass(frozen=True)
class EbResult:
    """Entanglement-breaking decision.

    ``feasible`` is True with a certificate, False when the solver stalled
    at a negative residual (heuristic infeasibility), and None when the
    iteration budget ran out undecided; ``status`` carries the raw solver
    status so callers can surface the heuristic nature of a "no".
    """

    status: str
    feasible: bool | None
    certificate: EbCertificate | None
    residual: float
    iterations: int


@dataclass(frozen=True)
class SteeringVerdict:
    steerable: bool
    verdict: PsdVerdict
    split: tuple[int, int]


@dataclass(frozen=True)
class EprProbe:
    r: float
    steerable: bool
    min_eigenvalue: float


@dataclass(frozen=True)
class SteerabilityBreakingReport:
    breaking: bool
    gib_verdict: PsdVerdict
    grid: tuple[EprProbe, ...]
    kernel_min_eigenvalue: float


@dataclass(frozen=True)
class ClassicalNoiseReport:
    """Classification of a classical noise channel (A = I)."""

    gib: bool
    eb: EbResult
    noise_form: PsdVerdict       # B + i Omega
    wigner_positive: bool
    note: str


@dataclass(frozen=True)
class ChannelReport:
    """Everything the ``classify`` front end reports for one channel."""

    validity: ValidityReport
    gib: bool | None
    gib_verdict: PsdVerdict | None
    eb: EbResult | None
    steerability: SteerabilityBreakingReport | None
    classical_noise: ClassicalNoiseReport | None


def _require_valid(ch: GaussianChannel, tolerance: float) -> None:
    report = validate(ch, tolerance)
    if not report.valid:
        worst = min((c.min_eigenvalue for c in report.checks
                     if c.min_eigenvalue is not None), default=float("nan"))
        raise PreconditionError(
            f"channel is not completely positive at tolerance (min eigenvalue {worst:.3e})")


def gib_form(ch: GaussianChannel) -> HermitianForm:
    """The incompatibility-breaking form B - i A^T Omega A."""
    om = symplectic_form(ch.in_modes)
    return HermitianForm(ch.b, -ch.a.T @ om @ ch.a)


def is_gib(ch: GaussianChannel, tolerance: float = PSD_RTOL) -> tuple[bool, PsdVerdict]:
    """Decide incompatibility breaking: B - i A^T Omega A >= 0."""
    _require_valid(ch, tolerance)
    verdict = check_psd(gib_form(ch), tolerance)
    return verdict.is_psd, verdict


def is_eb(ch: GaussianChannel, tolerance: float = PSD_RTOL,
          max_iter: int = 5000) -> EbResult:
    """Decide entanglement breaking by searching for a noise split.

    Feasibility of  B1 + i Omega >= 0  and  (B - B1) - i A^T Omega A >= 0
    over symmetric B1 is delegated to the alternating-projection engine; a
    feasible B1 is re-verified and returned as a certificate.
    """
    _require_valid(ch, tolerance)
    om_out = symplectic_form(ch.out_modes)
    om_in = symplectic_form(ch.in_modes)
    w = ch.a.T @ om_in @ ch.a
    dim = 2 * ch.out_modes

    def state_constraint(b1: np.ndarray) -> HermitianForm:
        return HermitianForm(b1, om_out)

    def measure_constraint(b1: np.ndarray) -> HermitianForm:
        return HermitianForm(ch.b - b1, -w)

    problem = LmiProblem(dim, dim, (state_constraint, measure_constraint), symmetric=True)
    result = solve(problem, tolerance=tolerance, max_iter=max_iter)
    if result.feasible:
        b1 = result.solution
        certificate = EbCertificate(
            b1=b1,
            state_form=check_psd(state_constraint(b1), tolerance),
            measure_form=check_psd(measure_constraint(b1), tolerance),
        )
        return EbResult("feasible", True, certificate, result.residual, result.iterations)
    feasible: bool | None = False if result.status == "infeasible_at_tolerance" else None
    return EbResult(result.status, feasible, None, result.residual, result.iterations)


def steering_form(st: GaussianState, split: tuple[int, int]) -> HermitianForm:
    """V + i (0 (+) Omega_B) for a bipartite state with the given split."""
    n_a, n_b = split
    if n_a < 1 or n_b < 1 or n_a + n_b != st.n_modes:
        raise PreconditionError(
            f"split: expected positive counts summing to {st.n_modes}, got {split}")
    pad = np.zeros_like(st.v)
    pad[2 * n_a:, 2 * n_a:] = symplectic_form(n_b)
    return HermitianForm(st.v, pad)


def is_steerable(st: GaussianState, split: tuple[int, int],
                 tolerance: float = PSD_RTOL) -> SteeringVerdict:
    """Steerability from side A to side B under the Gaussian criterion."""
    verdict = check_psd(steering_form(st, split), tolerance)
    return SteeringVerdict(steerable=not verdict.is_psd, verdict=verdict,
                           split=(int(split[0]), int(split[1])))


def is_steerability_breaking(ch: GaussianChannel,
                             r_grid: tuple[float, ...] = DEFAULT_R_GRID,
                             tolerance: float = PSD_RTOL) -> SteerabilityBreakingReport:
    """Decide steerability breaking; probe the EPR family as diagnostics.

    The decision equals the incompatibility-breaking criterion.  For each
    grid r, the channel is applied to the first side of the two-sided
    squeezed state on its input modes and the output's steerability is
    recorded; the kernel-limit eigenvalue reports the r -> infinity limit.
    """
    gib, gib_verdict = is_gib(ch, tolerance)
    om_out = symplectic_form(ch.out_modes)
    kernel = check_psd(gib_form(ch).congruence(om_out.T), tolerance)
    probes = []
    for r in r_grid:
        state = epr_state(ch.in_modes, float(r))
        out = one_sided_apply(ch, state, "A", (ch.in_modes, ch.in_modes))
        sv = is_steerable(out, (ch.out_modes, ch.in_modes), tolerance)
        probes.append(EprProbe(r=float(r), steerable=sv.steerable,
                               min_eigenvalue=sv.verdict.min_eigenvalue))
    return SteerabilityBreakingReport(
        breaking=gib,
        gib_verdict=gib_verdict,
        grid=tuple(probes),
        kernel_min_eigenvalue=kernel.min_eigenvalue,
    )


def classify_classical_noise(ch: GaussianChannel,
                             tolerance: float = PSD_RTOL) -> ClassicalNoiseReport:
    """Classify a classical noise channel (I, B, c).

    Requires A = I.  Such a channel convolves outcomes with a classical
    Gaussian kernel of covariance parameter B; it breaks incompatibility
    exactly when B + i Omega >= 0, i.e. when B qualifies as a state
    covariance, in which case the added noise is the Wigner function of a
    Gaussian state.  Entanglement breaking needs twice the noise: a split
    B = B1 + B2 with both halves state-like.
    """
    if ch.in_modes != ch.out_modes or not np.allclose(
            ch.a, np.eye(2 * ch.in_modes), rtol=0.0, atol=1e-12):
        raise PreconditionError("classical noise classification requires A = I")
    gib, _ = is_gib(ch, tolerance)
    om = symplectic_form(ch.out_modes)
    noise_form = check_psd(HermitianForm(ch.b, om), tolerance)
    eb = is_eb(ch, tolerance)
    note = ("noise covariance is a valid state covariance: the added noise "
            "is the Wigner function of a Gaussian state"
            if gib else
            "noise covariance is below the vacuum scale; incompatibility survives")
    return ClassicalNoiseReport(
        gib=gib,
        eb=eb,
        noise_form=noise_form,
        wigner_positive=gib,
        note=note,
    )


def classify_channel(ch: GaussianChannel,
                     r_grid: tuple[float, ...] = DEFAULT_R_GRID,
                     tolerance: float = PSD_RTOL) -> ChannelReport:
    """Run the full classification suite on one channel.

    An invalid channel yields a report whose classification fields are all
    None; classical-noise entries appear only when A = I.
    """
    validity = validate(ch, tolerance)
    if not validity.valid:
        return ChannelReport(validity, None, None, None, None, None)
    gib, gib_verdict = is_gib(ch, tolerance)
    eb = is_eb(ch, tolerance)
    steer = is_steerability_breaking(ch, r_grid, tolerance)
    classical = None
    if ch.in_modes == ch.out_modes and np.allclose(
            ch.a, np.eye(2 * ch.in_modes), rtol=0.0, atol=1e-12):
        classical = classify_classical_noise(ch, tolerance)
    return ChannelReport(validity, gib, gib_verdict, eb, steer, classical)
