"""Constructive witnesses of surviving incompatibility.

When a channel (A, B, c) fails the breaking criterion, i.e.
B - i A^T Omega A has a negative eigenvalue, an explicit pair of noiseless
input quadratures stays incompatible after the channel.  Writing an
eigenvector for the most negative eigenvalue as z = x + iy, realness of the
quadratic forms gives

    conj(z)^T (B - i A^T Omega A) z = x^T B x + y^T B y + 2 x^T A^T Omega A y < 0,

and since x^T A^T Omega A x = 0 for every real x, neither x nor y can vanish.
The transformed pair (A x, x^T B x, x^T c), (A y, y^T B y, y^T c) then
violates the quadrature pair criterion:

    violation = (x^T A^T Omega A y)^2 - 1/4 (x^T B x + y^T B y)^2 > 0,

which by the arithmetic-geometric mean inequality forces the closed-form
certificate (x^T B x)(y^T B y) - (x^T A^T Omega A y)^2 below zero.

Phase fixing: the eigenvector is defined up to a complex phase, and the
inequality chain above survives a common rescaling of (x, y) but not an
uneven one.  The builder therefore rotates z by the closed-form phase that
equalises ||x|| and ||y|| exactly (always possible: the norm difference
alpha*cos(2 theta) - beta*sin(2 theta) sweeps through zero), normalises both
to unit length, and flips the overall sign so the first significant entry
of x is positive.  With balanced norms the violation is bounded below by
the square of the eigenvalue margin, so it stays strictly positive.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .compatibility import quad_pair_compatible
from .errors import InvalidInputError, NumericalError, PreconditionError
from .classification import gib_form, is_gib
from .objects import (
    GaussianChannel,
    GaussianObservable,
    apply_channel_to_observable,
    quadrature_observable,
    validate,
)
from .phase_space import PSD_RTOL, min_eig_vector, real_vector, symplectic_form

__all__ = ["IncompatibilityWitness", "build_witness", "verify_witness"]


@dataclass(frozen=True)
class IncompatibilityWitness:
    """An incompatible post-channel quadrature pair, with its scores.

    ``e1``/``e2`` are the noiseless input quadratures (x, 0, 0), (y, 0, 0);
    ``f1``/``f2`` their images under the channel; ``violation`` the positive
    quantity defined in the module docstring and ``certificate`` the
    (negative) closed-form compatibility certificate of the image pair.
    """

    x: np.ndarray
    y: np.ndarray
    e1: GaussianObservable
    e2: GaussianObservable
    f1: GaussianObservable
    f2: GaussianObservable
    violation: float
    certificate: float


def _balanced_split(z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Rotate z by a phase so real and imaginary parts have equal norms."""
    x, y = z.real, z.imag
    alpha = float(x @ x - y @ y)
    beta = float(2.0 * (x @ y))
    phi = np.arctan2(alpha, beta)
    theta = 0.5 * phi
    xr = np.cos(theta) * x - np.sin(theta) * y
    yr = np.sin(theta) * x + np.cos(theta) * y
    return xr, yr


def build_witness(ch: GaussianChannel, tolerance: float = PSD_RTOL) -> IncompatibilityWitness:
    """Construct a verified witness pair for a non-breaking channel.

    Raises ``PreconditionError`` when the channel is invalid or breaks
    incompatibility at the given tolerance (then no witness exists).
    """
    if not validate(ch, tolerance).valid:
        raise PreconditionError("witness construction requires a completely positive channel")
    gib, verdict = is_gib(ch, tolerance)
    if gib:
        raise PreconditionError(
            "channel breaks incompatibility at tolerance "
            f"(min eigenvalue {verdict.min_eigenvalue:.3e}); no witness exists")
    lam, z = min_eig_vector(gib_form(ch))
    x, y = _balanced_split(z)
    nx, ny = float(np.linalg.norm(x)), float(np.linalg.norm(y))
    if min(nx, ny) < 1e-12:  # pragma: no cover - balancing guarantees nonzero parts
        raise NumericalError("eigenvector split degenerated; cannot form a quadrature pair")
    x, y = x / nx, y / ny
    lead = np.argmax(np.abs(x) > 1e-12)
    if x[lead] < 0:
        x, y = -x, -y
    om = symplectic_form(ch.in_modes)
    w = ch.a.T @ om @ ch.a
    overlap = float(x @ w @ y)
    lx, ly = float(x @ ch.b @ x), float(y @ ch.b @ y)
    violation = overlap ** 2 - 0.25 * (lx + ly) ** 2
    certificate = lx * ly - overlap ** 2
    if violation <= 0:  # pragma: no cover - guaranteed by the eigenvalue margin
        raise NumericalError(
            f"witness construction failed: violation {violation:.3e} not positive "
            f"(eigenvalue {lam:.3e})")
    e1 = quadrature_observable(x)
    e2 = quadrature_observable(y)
    return IncompatibilityWitness(
        x=x,
        y=y,
        e1=e1,
        e2=e2,
        f1=apply_channel_to_observable(ch, e1),
        f2=apply_channel_to_observable(ch, e2),
        violation=violation,
        certificate=certificate,
    )


def verify_witness(w: IncompatibilityWitness, ch: GaussianChannel) -> bool:
    """Re-derive the transformed pair from (x, y) and re-test incompatibility.

    Nothing stored beyond the quadrature directions is trusted: the images
    are recomputed from the channel and the closed-form certificate is
    recomputed from scratch.  True iff every candidate joint completion has
    negative determinant, i.e. the certificate is strictly negative.
    """
    x = real_vector(w.x, size=2 * ch.out_modes, name="x")
    y = real_vector(w.y, size=2 * ch.out_modes, name="y")
    if not np.any(x) or not np.any(y):
        raise InvalidInputError("witness vectors must be nonzero")
    image_x = ch.a @ x
    image_y = ch.a @ y
    lx = float(x @ ch.b @ x)
    ly = float(y @ ch.b @ y)
    if not np.any(image_x) or not np.any(image_y):
        # a channel may annihilate a direction; the image pair is then trivial
        return False
    verdict = quad_pair_compatible(image_x, lx, image_y, ly)
    return (not verdict.compatible) and verdict.certificate < 0
