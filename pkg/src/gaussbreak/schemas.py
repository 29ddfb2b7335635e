"""Typed document and report schemas.

Object documents are the on-disk and on-the-wire representation of states,
channels, observables and postprocessings: a ``kind`` tag, explicit mode or
outcome counts, matrices as nested row-major arrays, and a
``format_version`` field.  Unknown fields are rejected.  The same pydantic
models back the HTTP service and the command line front end, so a document
accepted by one is accepted by the other.

Report models mirror the result dataclasses of the analysis modules; they
are plain data for JSON rendering, not behaviour.
"""

from __future__ import annotations

from typing import Annotated, Literal, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, TypeAdapter, ValidationError

from . import classification as cls
from . import compatibility as compat
from .distributions import OutcomeGaussian
from .errors import InvalidInputError
from .objects import (
    GaussianChannel,
    GaussianObservable,
    GaussianPostprocessing,
    GaussianState,
    InvariantCheck,
    ValidityReport,
)
from .phase_space import PsdVerdict
from .witness import IncompatibilityWitness

FORMAT_VERSION = "1"

__all__ = [
    "FORMAT_VERSION",
    "StateDoc",
    "ChannelDoc",
    "ObservableDoc",
    "PostprocessingDoc",
    "ObjectDoc",
    "parse_document",
    "to_object",
    "from_object",
    "PsdVerdictModel",
    "CheckModel",
    "ValidateReport",
    "EbCertificateModel",
    "EbModel",
    "ProbeModel",
    "SteerBreakModel",
    "ClassicalNoiseModel",
    "ClassifyReport",
    "WitnessReport",
    "CompatReport",
    "SteerReport",
    "EprSweepReport",
    "SampleReport",
    "ErrorBody",
    "ErrorReport",
]


class _Doc(BaseModel):
    model_config = ConfigDict(extra="forbid")

    format_version: Literal["1"] = FORMAT_VERSION
    description: str | None = None


class StateDoc(_Doc):
    kind: Literal["state"]
    n_modes: int = Field(ge=1)
    v: list[list[float]]
    r: list[float]


class ChannelDoc(_Doc):
    kind: Literal["channel"]
    in_modes: int = Field(ge=1)
    out_modes: int = Field(ge=1)
    a: list[list[float]]
    b: list[list[float]]
    c: list[float]


class ObservableDoc(_Doc):
    kind: Literal["observable"]
    n_modes: int = Field(ge=1)
    outcome_dim: int = Field(ge=1)
    k: list[list[float]]
    l: list[list[float]]
    m: list[float]


class PostprocessingDoc(_Doc):
    kind: Literal["postprocessing"]
    source_dim: int = Field(ge=1)
    target_dim: int = Field(ge=1)
    a: list[list[float]]
    b: list[list[float]]
    c: list[float]


ObjectDoc = Annotated[
    Union[StateDoc, ChannelDoc, ObservableDoc, PostprocessingDoc],
    Field(discriminator="kind"),
]

_OBJECT_ADAPTER: TypeAdapter = TypeAdapter(ObjectDoc)


def _validation_message(exc: ValidationError) -> str:
    parts = []
    for err in exc.errors()[:3]:
        loc = ".".join(str(p) for p in err["loc"]) or "document"
        parts.append(f"{loc}: {err['msg']}")
    return "; ".join(parts)


def parse_document(data) -> StateDoc | ChannelDoc | ObservableDoc | PostprocessingDoc:
    """Validate raw JSON data against the object document schema."""
    try:
        return _OBJECT_ADAPTER.validate_python(data)
    except ValidationError as exc:
        raise InvalidInputError(_validation_message(exc)) from exc


def _matrix(rows: list[list[float]], name: str) -> np.ndarray:
    widths = {len(row) for row in rows}
    if len(rows) == 0 or len(widths) != 1:
        raise InvalidInputError(f"{name}: expected a rectangular nonempty matrix")
    return np.array(rows, dtype=float)


def to_object(doc) -> GaussianState | GaussianChannel | GaussianObservable | GaussianPostprocessing:
    """Convert a parsed document into the corresponding domain object.

    Declared mode and outcome counts are cross-checked against the matrix
    shapes; mismatches are rejected naming the offending field.
    """
    if isinstance(doc, StateDoc):
        v = _matrix(doc.v, "v")
        if v.shape != (2 * doc.n_modes, 2 * doc.n_modes):
            raise InvalidInputError(
                f"v: expected shape {(2 * doc.n_modes,) * 2} for n_modes={doc.n_modes}, "
                f"got {v.shape}")
        st = GaussianState(v, np.array(doc.r, dtype=float))
        return st
    if isinstance(doc, ChannelDoc):
        a = _matrix(doc.a, "a")
        if a.shape != (2 * doc.in_modes, 2 * doc.out_modes):
            raise InvalidInputError(
                f"a: expected shape {(2 * doc.in_modes, 2 * doc.out_modes)} for "
                f"in_modes={doc.in_modes}, out_modes={doc.out_modes}, got {a.shape}")
        return GaussianChannel(a, _matrix(doc.b, "b"), np.array(doc.c, dtype=float))
    if isinstance(doc, ObservableDoc):
        k = _matrix(doc.k, "k")
        if k.shape != (2 * doc.n_modes, doc.outcome_dim):
            raise InvalidInputError(
                f"k: expected shape {(2 * doc.n_modes, doc.outcome_dim)} for "
                f"n_modes={doc.n_modes}, outcome_dim={doc.outcome_dim}, got {k.shape}")
        return GaussianObservable(k, _matrix(doc.l, "l"), np.array(doc.m, dtype=float))
    if isinstance(doc, PostprocessingDoc):
        a = _matrix(doc.a, "a")
        if a.shape != (doc.source_dim, doc.target_dim):
            raise InvalidInputError(
                f"a: expected shape {(doc.source_dim, doc.target_dim)}, got {a.shape}")
        return GaussianPostprocessing(a, _matrix(doc.b, "b"), np.array(doc.c, dtype=float))
    raise InvalidInputError(f"unsupported document type {type(doc).__name__}")


def from_object(obj, description: str | None = None):
    """Convert a domain object into its document form."""
    if isinstance(obj, GaussianState):
        return StateDoc(kind="state", description=description, n_modes=obj.n_modes,
                        v=obj.v.tolist(), r=obj.r.tolist())
    if isinstance(obj, GaussianChannel):
        return ChannelDoc(kind="channel", description=description,
                          in_modes=obj.in_modes, out_modes=obj.out_modes,
                          a=obj.a.tolist(), b=obj.b.tolist(), c=obj.c.tolist())
    if isinstance(obj, GaussianObservable):
        return ObservableDoc(kind="observable", description=description,
                             n_modes=obj.n_modes, outcome_dim=obj.outcome_dim,
                             k=obj.k.tolist(), l=obj.l.tolist(), m=obj.m.tolist())
    if isinstance(obj, GaussianPostprocessing):
        return PostprocessingDoc(kind="postprocessing", description=description,
                                 source_dim=obj.source_dim, target_dim=obj.target_dim,
                                 a=obj.a.tolist(), b=obj.b.tolist(), c=obj.c.tolist())
    raise InvalidInputError(f"unsupported object type {type(obj).__name__}")


# --------------------------------------------------------------------------
# report models


class PsdVerdictModel(BaseModel):
    is_psd: bool
    min_eigenvalue: float
    tolerance: float
    witness_real: list[float]
    witness_imag: list[float]

    @classmethod
    def from_verdict(cls_, v: PsdVerdict) -> "PsdVerdictModel":
        return cls_(is_psd=v.is_psd, min_eigenvalue=v.min_eigenvalue,
                    tolerance=v.tolerance_used,
                    witness_real=v.witness_vector.real.tolist(),
                    witness_imag=v.witness_vector.imag.tolist())


class CheckModel(BaseModel):
    name: str
    passed: bool
    min_eigenvalue: float | None
    tolerance: float | None
    detail: str = ""

    @classmethod
    def from_check(cls_, c: InvariantCheck) -> "CheckModel":
        return cls_(name=c.name, passed=c.passed, min_eigenvalue=c.min_eigenvalue,
                    tolerance=c.tolerance, detail=c.detail)


class ValidateReport(BaseModel):
    format_version: str = FORMAT_VERSION
    kind: str
    valid: bool
    checks: list[CheckModel]

    @classmethod
    def from_report(cls_, r: ValidityReport) -> "ValidateReport":
        return cls_(kind=r.kind, valid=r.valid,
                    checks=[CheckModel.from_check(c) for c in r.checks])


class EbCertificateModel(BaseModel):
    b1: list[list[float]]
    state_form: PsdVerdictModel
    measure_form: PsdVerdictModel


class EbModel(BaseModel):
    status: str
    feasible: bool | None
    residual: float
    iterations: int
    certificate: EbCertificateModel | None

    @classmethod
    def from_result(cls_, r: cls.EbResult) -> "EbModel":
        cert = None
        if r.certificate is not None:
            cert = EbCertificateModel(
                b1=r.certificate.b1.tolist(),
                state_form=PsdVerdictModel.from_verdict(r.certificate.state_form),
                measure_form=PsdVerdictModel.from_verdict(r.certificate.measure_form),
            )
        return cls_(status=r.status, feasible=r.feasible, residual=r.residual,
                    iterations=r.iterations, certificate=cert)


class ProbeModel(BaseModel):
    r: float
    steerable: bool
    min_eigenvalue: float


class SteerBreakModel(BaseModel):
    breaking: bool
    kernel_min_eigenvalue: float
    gib_verdict: PsdVerdictModel
    grid: list[ProbeModel]

    @classmethod
    def from_report(cls_, r: cls.SteerabilityBreakingReport) -> "SteerBreakModel":
        return cls_(breaking=r.breaking,
                    kernel_min_eigenvalue=r.kernel_min_eigenvalue,
                    gib_verdict=PsdVerdictModel.from_verdict(r.gib_verdict),
                    grid=[ProbeModel(r=p.r, steerable=p.steerable,
                                     min_eigenvalue=p.min_eigenvalue) for p in r.grid])


class ClassicalNoiseModel(BaseModel):
    gib: bool
    wigner_positive: bool
    note: str
    noise_form: PsdVerdictModel
    eb: EbModel

    @classmethod
    def from_report(cls_, r: cls.ClassicalNoiseReport) -> "ClassicalNoiseModel":
        return cls_(gib=r.gib, wigner_positive=r.wigner_positive, note=r.note,
                    noise_form=PsdVerdictModel.from_verdict(r.noise_form),
                    eb=EbModel.from_result(r.eb))


class ClassifyReport(BaseModel):
    format_version: str = FORMAT_VERSION
    valid: bool
    checks: list[CheckModel]
    gib: bool | None
    gib_verdict: PsdVerdictModel | None
    eb: EbModel | None
    steerability_breaking: SteerBreakModel | None
    classical_noise: ClassicalNoiseModel | None

    @classmethod
    def from_report(cls_, r: cls.ChannelReport) -> "ClassifyReport":
        return cls_(
            valid=r.validity.valid,
            checks=[CheckModel.from_check(c) for c in r.validity.checks],
            gib=r.gib,
            gib_verdict=None if r.gib_verdict is None
            else PsdVerdictModel.from_verdict(r.gib_verdict),
            eb=None if r.eb is None else EbModel.from_result(r.eb),
            steerability_breaking=None if r.steerability is None
            else SteerBreakModel.from_report(r.steerability),
            classical_noise=None if r.classical_noise is None
            else ClassicalNoiseModel.from_report(r.classical_noise),
        )


class WitnessReport(BaseModel):
    format_version: str = FORMAT_VERSION
    x: list[float]
    y: list[float]
    violation: float
    certificate: float
    verified: bool
    e1: ObservableDoc
    e2: ObservableDoc
    f1: ObservableDoc
    f2: ObservableDoc

    @classmethod
    def from_witness(cls_, w: IncompatibilityWitness, verified: bool) -> "WitnessReport":
        return cls_(x=w.x.tolist(), y=w.y.tolist(), violation=w.violation,
                    certificate=w.certificate, verified=verified,
                    e1=from_object(w.e1), e2=from_object(w.e2),
                    f1=from_object(w.f1), f2=from_object(w.f2))


class CompatReport(BaseModel):
    format_version: str = FORMAT_VERSION
    compatible: bool
    boundary: bool
    certificate: float
    status: str
    iterations: int | None
    joint: ObservableDoc | None

    @classmethod
    def from_verdict(cls_, v: compat.CompatibilityVerdict) -> "CompatReport":
        return cls_(compatible=v.compatible, boundary=v.boundary,
                    certificate=v.certificate, status=v.status,
                    iterations=v.iterations,
                    joint=None if v.joint is None else from_object(v.joint))


class SteerReport(BaseModel):
    format_version: str = FORMAT_VERSION
    steerable: bool
    min_eigenvalue: float
    tolerance: float
    split: list[int]

    @classmethod
    def from_verdict(cls_, v: cls.SteeringVerdict) -> "SteerReport":
        return cls_(steerable=v.steerable, min_eigenvalue=v.verdict.min_eigenvalue,
                    tolerance=v.verdict.tolerance_used, split=list(v.split))


class EprSweepReport(BaseModel):
    format_version: str = FORMAT_VERSION
    breaking: bool
    kernel_min_eigenvalue: float
    gib_verdict: PsdVerdictModel
    grid: list[ProbeModel]

    @classmethod
    def from_report(cls_, r: cls.SteerabilityBreakingReport) -> "EprSweepReport":
        inner = SteerBreakModel.from_report(r)
        return cls_(breaking=inner.breaking,
                    kernel_min_eigenvalue=inner.kernel_min_eigenvalue,
                    gib_verdict=inner.gib_verdict, grid=inner.grid)


class SampleReport(BaseModel):
    format_version: str = FORMAT_VERSION
    n: int
    seed: int
    mean: list[float]
    covariance: list[list[float]]
    samples: list[list[float]]

    @classmethod
    def from_samples(cls_, dist: OutcomeGaussian, n: int, seed: int,
                     samples: np.ndarray) -> "SampleReport":
        return cls_(n=n, seed=seed, mean=dist.mean.tolist(),
                    covariance=dist.covariance.tolist(), samples=samples.tolist())


class ErrorBody(BaseModel):
    category: str
    message: str
    file: str | None = None
    field: str | None = None


class ErrorReport(BaseModel):
    format_version: str = FORMAT_VERSION
    error: ErrorBody
