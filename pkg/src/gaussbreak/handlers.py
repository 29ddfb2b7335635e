"""Analysis operations shared by the CLI and the HTTP service.

Each handler takes domain objects plus plain parameters and returns a
report model from :mod:`gaussbreak.schemas`.  Front ends differ only in how
they obtain the inputs (files vs request bodies) and how they render the
reports; the analysis path is identical, which is what makes the CLI a thin
client of the same engine the service exposes.
"""

from __future__ import annotations

import numpy as np

from . import schemas
from .classification import classify_channel, is_steerability_breaking, is_steerable
from .compatibility import pair_compatible
from .distributions import outcome_distribution, sample
from .errors import InvalidInputError
from .objects import (
    GaussianChannel,
    GaussianObservable,
    GaussianState,
    apply_channel_to_observable,
    apply_channel_to_state,
    one_sided_apply,
    validate,
)
from .witness import build_witness, verify_witness

__all__ = [
    "handle_validate",
    "handle_classify",
    "handle_act",
    "handle_witness",
    "handle_joint",
    "handle_steer",
    "handle_epr_sweep",
    "handle_sample",
]


def _expect(obj, kind, what: str):
    if not isinstance(obj, kind):
        raise InvalidInputError(
            f"{what}: expected a {kind.__name__} document, got {type(obj).__name__}")
    return obj


def handle_validate(obj) -> schemas.ValidateReport:
    """Run every structural invariant of the object and report each one."""
    return schemas.ValidateReport.from_report(validate(obj))


def handle_classify(ch) -> schemas.ClassifyReport:
    _expect(ch, GaussianChannel, "classify input")
    return schemas.ClassifyReport.from_report(classify_channel(ch))


def handle_act(ch, target):
    """Push a state forward or pull an observable back through a channel."""
    _expect(ch, GaussianChannel, "act channel")
    if isinstance(target, GaussianState):
        return schemas.from_object(apply_channel_to_state(ch, target))
    if isinstance(target, GaussianObservable):
        return schemas.from_object(apply_channel_to_observable(ch, target))
    raise InvalidInputError(
        f"act target: expected a state or observable document, got {type(target).__name__}")


def handle_witness(ch) -> schemas.WitnessReport:
    """Build a transformed quadrature pair witnessing non-GIB, then verify it."""
    _expect(ch, GaussianChannel, "witness input")
    w = build_witness(ch)
    return schemas.WitnessReport.from_witness(w, verified=verify_witness(w, ch))


def handle_joint(first, second, channel=None) -> schemas.CompatReport:
    """Decide pair compatibility, optionally after a channel acts on both."""
    _expect(first, GaussianObservable, "joint first observable")
    _expect(second, GaussianObservable, "joint second observable")
    if channel is not None:
        _expect(channel, GaussianChannel, "joint channel")
        first = apply_channel_to_observable(channel, first)
        second = apply_channel_to_observable(channel, second)
    return schemas.CompatReport.from_verdict(pair_compatible(first, second))


def handle_steer(st, split: tuple[int, int], channel=None,
                 side: str = "A") -> schemas.SteerReport:
    """Steerability of a bipartite state, optionally after a one-sided channel."""
    _expect(st, GaussianState, "steer state")
    n_a, n_b = int(split[0]), int(split[1])
    if channel is not None:
        _expect(channel, GaussianChannel, "steer channel")
        st = one_sided_apply(channel, st, side, (n_a, n_b))
        if side == "A":
            n_a = channel.out_modes
        else:
            n_b = channel.out_modes
    return schemas.SteerReport.from_verdict(is_steerable(st, (n_a, n_b)))


def handle_epr_sweep(ch, grid=None) -> schemas.EprSweepReport:
    _expect(ch, GaussianChannel, "epr-sweep input")
    if grid is None:
        report = is_steerability_breaking(ch)
    else:
        report = is_steerability_breaking(ch, r_grid=tuple(float(r) for r in grid))
    return schemas.EprSweepReport.from_report(report)


def handle_sample(st, obs, n: int, seed: int) -> schemas.SampleReport:
    _expect(st, GaussianState, "sample state")
    _expect(obs, GaussianObservable, "sample observable")
    if n < 1:
        raise InvalidInputError(f"n: expected a positive sample count, got {n}")
    dist = outcome_distribution(st, obs)
    draws = sample(dist, n, seed)
    return schemas.SampleReport.from_samples(dist, n, int(seed), np.asarray(draws))
