"""Joint measurability of Gaussian observables.

A finite family is compatible when it arises as postprocessings of a single
parent observable; for Gaussian observables this reduces to a matrix
completion problem.  For a pair (K1, L1, m1), (K2, L2, m2) on the same
modes, compatibility holds iff some real off-diagonal block X makes

    [[L1, X  ],      - i (K1 K2)^T Omega (K1 K2)   >= 0,
     [X^T, L2]]

and a witness of compatibility is the completed joint observable itself.
For a pair of noisy quadratures (x, lx), (y, ly) the answer is closed form:
the 2x2 completion [[lx, l - i w], [l + i w, ly]] with w = x^T Omega y is
positive semidefinite for some l iff lx*ly - w^2 >= 0, and l = 0 is then
optimal, so the scalar

    certificate = lx * ly - (x^T Omega y)^2

decides the pair (negative means incompatible).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import InvalidInputError
from .feasibility import LmiProblem, FeasibilityResult, solve
from .objects import (
    GaussianObservable,
    GaussianPostprocessing,
    apply_postprocessing,
)
from .phase_space import PSD_RTOL, HermitianForm, real_vector, symplectic_form

__all__ = [
    "MarginSpec",
    "CompatibilityVerdict",
    "margin",
    "joint_from_postprocessings",
    "quad_pair_compatible",
    "pair_compatible",
]

# Certificates this close to zero are decided "compatible at the boundary"
# and flagged, rather than pretending the sign of roundoff is meaningful.
BOUNDARY_EPS = 1e-6


@dataclass(frozen=True)
class MarginSpec:
    """An ordered partition of a joint observable's outcome coordinates."""

    block_dims: tuple[int, ...]

    def __init__(self, block_dims: Sequence[int]) -> None:
        dims = tuple(int(d) for d in block_dims)
        if not dims or any(d < 1 for d in dims):
            raise InvalidInputError(f"block_dims: expected positive block sizes, got {block_dims!r}")
        object.__setattr__(self, "block_dims", dims)

    @property
    def total_dim(self) -> int:
        return sum(self.block_dims)

    def offset(self, j: int) -> int:
        if not 0 <= j < len(self.block_dims):
            raise InvalidInputError(
                f"block index {j} out of range for {len(self.block_dims)} blocks")
        return sum(self.block_dims[:j])


@dataclass(frozen=True)
class CompatibilityVerdict:
    """Outcome of a compatibility decision.

    ``certificate`` is the deciding scalar: for the closed-form quadrature
    pair test it is lx*ly - (x^T Omega y)^2; for the completion problem it is
    the smallest eigenvalue of the completed joint form when feasible, and
    the solver's best (negative) residual when not.  ``boundary`` flags
    certificates within 1e-6 of zero.  ``status`` records how the decision
    was reached (``closed_form`` or a solver status).
    """

    compatible: bool
    boundary: bool
    certificate: float
    joint: GaussianObservable | None
    status: str
    iterations: int | None = None


def _selector(ms: MarginSpec, j: int) -> np.ndarray:
    a = np.zeros((ms.total_dim, ms.block_dims[j]))
    off = ms.offset(j)
    for i in range(ms.block_dims[j]):
        a[off + i, i] = 1.0
    return a


def margin(obs: GaussianObservable, ms: MarginSpec, j: int) -> GaussianObservable:
    """The j-th marginal of a joint observable under an outcome partition.

    Implemented as the noiseless selector postprocessing (A_j, 0, 0) with
    A_j picking the j-th coordinate block, so the result is
    (K_j, L_jj, m_j), the corresponding sub-blocks of the parent triple.
    """
    if ms.total_dim != obs.outcome_dim:
        raise InvalidInputError(
            f"margin spec covers {ms.total_dim} outcomes, observable has {obs.outcome_dim}")
    sel = _selector(ms, j)
    pp = GaussianPostprocessing(sel, np.zeros((sel.shape[1],) * 2), np.zeros(sel.shape[1]))
    return apply_postprocessing(pp, obs)


def joint_from_postprocessings(g: GaussianObservable,
                               pps: Sequence[GaussianPostprocessing]) -> GaussianObservable:
    """Stack postprocessings of one parent into a single joint observable.

    The joint is the single postprocessing (A_1 | ... | A_n) with block
    diagonal noise blockdiag(B_j) and stacked offsets, applied to g.  Its
    j-th block margin is exactly the j-th postprocessed observable (the
    coordinate selector commutes with the stacking), and it is valid
    whenever g and the postprocessings are, because one postprocessing of
    a valid observable is valid: L0 - i K0^T Omega K0 has (j, j') block
    B_j delta_{jj'} + A_j^T (L - i K^T Omega K) A_{j'}.  Dropping the
    j != j' noise cross terms here would break positivity, so the whole
    parent noise L is carried into the joint, not just its diagonal
    blocks.
    """
    if not pps:
        raise InvalidInputError("pps: expected at least one postprocessing")
    for idx, pp in enumerate(pps):
        if pp.source_dim != g.outcome_dim:
            raise InvalidInputError(
                f"pps[{idx}]: expects {pp.source_dim} outcomes, parent has {g.outcome_dim}")
    dims = [pp.target_dim for pp in pps]
    total = sum(dims)
    a0 = np.hstack([pp.a for pp in pps])
    b0 = np.zeros((total, total))
    pos = 0
    for pp, dim in zip(pps, dims):
        b0[pos:pos + dim, pos:pos + dim] = pp.b
        pos += dim
    c0 = np.concatenate([pp.c for pp in pps])
    combined = GaussianPostprocessing(a0, b0, c0)
    return apply_postprocessing(combined, g)


def quad_pair_compatible(x, lx: float, y, ly: float) -> CompatibilityVerdict:
    """Closed-form compatibility test for two noisy quadratures.

    The pair (x, lx), (y, ly) is compatible iff
    lx * ly >= (x^T Omega y)^2, in which case the zero off-diagonal
    completion is optimal and the returned joint is
    (K = (x|y), L = diag(lx, ly), m = 0).
    """
    x = real_vector(x, name="x")
    y = real_vector(y, size=x.shape[0], name="y")
    if x.shape[0] % 2 != 0 or x.shape[0] == 0:
        raise InvalidInputError(f"x: phase-space dimension must be positive even, got {x.shape[0]}")
    if not np.any(x):
        raise InvalidInputError("x: expected a nonzero vector")
    if not np.any(y):
        raise InvalidInputError("y: expected a nonzero vector")
    if not (np.isfinite(lx) and lx >= 0):
        raise InvalidInputError(f"lx: expected a nonnegative real, got {lx!r}")
    if not (np.isfinite(ly) and ly >= 0):
        raise InvalidInputError(f"ly: expected a nonnegative real, got {ly!r}")
    om = symplectic_form(x.shape[0] // 2)
    overlap = float(x @ om @ y)
    certificate = float(lx) * float(ly) - overlap ** 2
    boundary = abs(certificate) <= BOUNDARY_EPS
    compatible = certificate >= -BOUNDARY_EPS
    joint = None
    if compatible:
        joint = GaussianObservable(
            np.column_stack([x, y]),
            np.diag([float(lx), float(ly)]),
            np.zeros(2),
        )
    return CompatibilityVerdict(
        compatible=compatible,
        boundary=boundary,
        certificate=certificate,
        joint=joint,
        status="closed_form",
    )


def pair_compatible(e1: GaussianObservable, e2: GaussianObservable,
                    tolerance: float = PSD_RTOL,
                    max_iter: int = 5000) -> CompatibilityVerdict:
    """Decide compatibility of two observables by matrix completion.

    Searches for the off-diagonal block X making the stacked form positive
    semidefinite (see the module docstring), using the alternating-projection
    feasibility engine; the diagonal blocks and the pairing K = (K1 | K2) are
    fixed by the inputs.  A feasible completion is returned as a full joint
    observable, which reproduces e1 and e2 as its block margins.
    """
    if e1.n_modes != e2.n_modes:
        raise InvalidInputError(
            f"mode mismatch: observables live on {e1.n_modes} and {e2.n_modes} modes")
    m1, m2 = e1.outcome_dim, e2.outcome_dim
    k = np.hstack([e1.k, e2.k])
    om = symplectic_form(e1.n_modes)
    pairing = k.T @ om @ k

    def constraint(x_block: np.ndarray) -> HermitianForm:
        l = np.zeros((m1 + m2, m1 + m2))
        l[:m1, :m1] = e1.l
        l[m1:, m1:] = e2.l
        l[:m1, m1:] = x_block
        l[m1:, :m1] = x_block.T
        return HermitianForm(l, -pairing)

    problem = LmiProblem(m1, m2, (constraint,))
    result: FeasibilityResult = solve(problem, tolerance=tolerance, max_iter=max_iter)
    if result.feasible:
        joint = GaussianObservable(
            k,
            constraint(result.solution).s,
            np.concatenate([e1.m, e2.m]),
        )
        certificate = result.residual
        return CompatibilityVerdict(
            compatible=True,
            boundary=abs(certificate) <= BOUNDARY_EPS,
            certificate=certificate,
            joint=joint,
            status=result.status,
            iterations=result.iterations,
        )
    return CompatibilityVerdict(
        compatible=False,
        boundary=abs(result.residual) <= BOUNDARY_EPS,
        certificate=result.residual,
        joint=None,
        status=result.status,
        iterations=result.iterations,
    )
