"""Outcome statistics of Gaussian observables on Gaussian states.

Derivation of the moment formulas
---------------------------------
The outcome measure of an observable (K, L, m) in a state (V, r) has
Fourier transform

    muhat(p) = chi(K p) exp(-1/4 p^T L p - i m^T p)
             = exp(-1/4 p^T (K^T Omega^T V Omega K + L) p
                   - i p^T (K^T Omega r + m)),

so matching against the ordinary characteristic function
exp(i p^T mean - 1/2 p^T Sigma p) of a Gaussian probability law gives

    covariance  Sigma = (K^T Omega^T V Omega K + L) / 2
    mean              = -(K^T Omega r + m).

The 1/4 in the quadratic convention is what turns into the probability
covariance Sigma/..., and this module is the single place where that
conversion happens.  The sign of the mean is fixed by the displacement
anchor: a state displaced by +q0 in the q direction of one mode shifts the
outcomes of the q-tracking quadrature, parameter k = (0, 1), by exactly
+q0.  Equivalently, the outcome of parameter K tracks the linear form
-K^T Omega r of the mode means.

Because the displacement parameter m enters the mean negatively, a
postprocessing (A, B, c) -- which maps m to c + A^T m -- pushes the
outcome distribution forward through the affine map t -> A^T t - c,
followed by convolution with N(0, B/2).

Sampling
--------
``sample`` is deterministic given a seed and identical across platforms up
to libm rounding: uniform doubles come from numpy's PCG64 bit generator,
standard normals from the Box-Muller transform applied to those uniforms,
and correlated outcomes from the symmetric square root of the covariance
(eigendecomposition with negative roundoff eigenvalues clipped to zero).
The exact recipe is documented in docs/format.md.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError
from .objects import GaussianObservable, GaussianState
from .phase_space import real_matrix, real_vector, symmetric_part, symplectic_form

__all__ = ["OutcomeGaussian", "outcome_distribution", "sample", "moment_distance"]


@dataclass(frozen=True)
class OutcomeGaussian:
    """Mean vector and (probability) covariance of an outcome distribution."""

    mean: np.ndarray
    covariance: np.ndarray

    def __init__(self, mean, covariance) -> None:
        mean = real_vector(mean, name="mean")
        covariance = real_matrix(covariance, rows=mean.shape[0], cols=mean.shape[0],
                                 name="covariance")
        covariance = symmetric_part(covariance, name="covariance")
        covariance.setflags(write=False)
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "covariance", covariance)

    @property
    def dim(self) -> int:
        return self.mean.shape[0]


def outcome_distribution(st: GaussianState, obs: GaussianObservable) -> OutcomeGaussian:
    """Moments of the outcome law of ``obs`` measured on ``st``.

    See the module docstring for the derivation;
    Sigma = (K^T Omega^T V Omega K + L)/2 and mean = -(K^T Omega r + m).
    On the vacuum, a noiseless unit quadrature has variance 1/2.
    """
    if st.n_modes != obs.n_modes:
        raise InvalidInputError(
            f"mode mismatch: state has {st.n_modes} modes, observable has {obs.n_modes}")
    om = symplectic_form(st.n_modes)
    cov = 0.5 * (obs.k.T @ om.T @ st.v @ om @ obs.k + obs.l)
    mean = -(obs.k.T @ om @ st.r + obs.m)
    return OutcomeGaussian(mean, cov)


def _standard_normals(rng: np.random.Generator, count: int) -> np.ndarray:
    """Box-Muller normals from PCG64 uniforms (see module docstring)."""
    pairs = (count + 1) // 2
    u1 = 1.0 - rng.random(pairs)  # in (0, 1], keeps the log finite
    u2 = rng.random(pairs)
    radius = np.sqrt(-2.0 * np.log(u1))
    angle = 2.0 * np.pi * u2
    z = np.empty(2 * pairs)
    z[0::2] = radius * np.cos(angle)
    z[1::2] = radius * np.sin(angle)
    return z[:count]


def sample(dist: OutcomeGaussian, n: int, seed: int) -> np.ndarray:
    """Draw ``n`` outcomes as an (n, dim) array, deterministically in ``seed``.

    Outcomes are mean + F z with z a vector of Box-Muller standard normals
    and F the symmetric square root of the covariance.
    """
    if n < 1:
        raise InvalidInputError(f"n: expected a positive integer, got {n}")
    w, u = np.linalg.eigh(dist.covariance)
    if w.min(initial=0.0) < -1e-9 * max(1.0, float(np.abs(w).max(initial=0.0))):
        raise InvalidInputError("covariance: not positive semidefinite")
    factor = u @ np.diag(np.sqrt(np.clip(w, 0.0, None))) @ u.T
    rng = np.random.Generator(np.random.PCG64(seed))
    z = _standard_normals(rng, n * dist.dim).reshape(n, dist.dim)
    return dist.mean + z @ factor.T


def moment_distance(d1: OutcomeGaussian, d2: OutcomeGaussian) -> float:
    """max of the euclidean mean distance and the spectral covariance distance."""
    if d1.dim != d2.dim:
        raise InvalidInputError(
            f"dimension mismatch: distributions have dims {d1.dim} and {d2.dim}")
    dm = float(np.linalg.norm(d1.mean - d2.mean))
    dc = float(np.linalg.norm(d1.covariance - d2.covariance, ord=2))
    return max(dm, dc)
