"""A small linear-matrix-inequality feasibility engine.

Problems are of the form: find a real matrix X (optionally symmetric) such
that finitely many affine Hermitian forms H_j(X) are positive semidefinite.
The solver runs alternating projections in the lifted space of points
(X, M_1, ..., M_k) between

  (a) the affine set  { (X, H_1(X), ..., H_k(X)) },  and
  (b) the product     R^d x PSD x ... x PSD,

starting from the fixed zero point, so identical inputs give identical
iteration traces.  The projection onto a PSD cone is an eigendecomposition
on the real symmetric embedding with negative eigenvalues clipped to zero;
the projection onto the affine set is a dense least-squares solve whose
normal matrix is inverted once per problem (the variable spaces here have at
most a few hundred dimensions).

Feasibility is declared when every form clears the same relative threshold
as ``check_psd`` (eigenvalue >= -tolerance * max(1, largest entry)), and a
feasible solution is re-verified through ``check_psd`` before it is
returned.  Infeasibility is a heuristic: if the best residual improves by
less than 1e-12 over a 100-sweep window while still negative, the problem is
reported ``infeasible_at_tolerance``; if the iteration budget runs out first
the status is ``max_iterations``.  Neither is ever silently mapped to a
clean "no".
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import InvalidInputError, NumericalError
from .phase_space import PSD_RTOL, HermitianForm, check_psd

__all__ = ["LmiProblem", "FeasibilityResult", "solve"]

STALL_WINDOW = 100
STALL_IMPROVEMENT = 1e-12


@dataclass(frozen=True)
class LmiProblem:
    """Find X with every ``constraints[j](X) >= 0``.

    ``constraints`` are affine maps from the variable matrix to a
    :class:`HermitianForm`.  ``symmetric`` restricts the search to symmetric
    matrices (``var_rows == var_cols`` then).
    """

    var_rows: int
    var_cols: int
    constraints: tuple[Callable[[np.ndarray], HermitianForm], ...]
    symmetric: bool = False

    def __init__(self, var_rows: int, var_cols: int,
                 constraints: Sequence[Callable[[np.ndarray], HermitianForm]],
                 symmetric: bool = False) -> None:
        if var_rows < 1 or var_cols < 1:
            raise InvalidInputError(f"variable shape must be nonempty, got {(var_rows, var_cols)}")
        if symmetric and var_rows != var_cols:
            raise InvalidInputError("symmetric variables must be square")
        if not constraints:
            raise InvalidInputError("constraints: expected at least one affine form")
        object.__setattr__(self, "var_rows", int(var_rows))
        object.__setattr__(self, "var_cols", int(var_cols))
        object.__setattr__(self, "constraints", tuple(constraints))
        object.__setattr__(self, "symmetric", bool(symmetric))


@dataclass(frozen=True)
class FeasibilityResult:
    """Solver outcome.

    ``status`` is ``feasible``, ``infeasible_at_tolerance`` or
    ``max_iterations``; ``residual`` is the worst (most negative) constraint
    eigenvalue at the best iterate seen (or at the solution when feasible),
    and ``solution`` is populated only for a feasible outcome.
    """

    status: str
    feasible: bool
    solution: np.ndarray | None
    residual: float
    iterations: int
    tolerance: float


def _variable_basis(rows: int, cols: int, symmetric: bool) -> list[np.ndarray]:
    basis = []
    if symmetric:
        for i in range(rows):
            for j in range(i, cols):
                e = np.zeros((rows, cols))
                if i == j:
                    e[i, j] = 1.0
                else:
                    e[i, j] = e[j, i] = 2.0 ** -0.5
                basis.append(e)
    else:
        for i in range(rows):
            for j in range(cols):
                e = np.zeros((rows, cols))
                e[i, j] = 1.0
                basis.append(e)
    return basis


def _devec(v: np.ndarray, basis: list[np.ndarray]) -> np.ndarray:
    x = np.zeros_like(basis[0])
    for coeff, e in zip(v, basis):
        x = x + coeff * e
    return x


def _form_vec(h: HermitianForm) -> np.ndarray:
    return np.concatenate([h.s.ravel(), h.a.ravel()])


def solve(problem: LmiProblem, tolerance: float = PSD_RTOL,
          max_iter: int = 5000) -> FeasibilityResult:
    """Run alternating projections from the zero starting point.

    See the module docstring for the scheme and the stopping rules.
    """
    if max_iter < 1:
        raise InvalidInputError(f"max_iter: expected a positive integer, got {max_iter}")
    if not (tolerance >= 0.0):
        raise InvalidInputError(f"tolerance: expected a nonnegative real, got {tolerance!r}")
    basis = _variable_basis(problem.var_rows, problem.var_cols, problem.symmetric)
    d = len(basis)
    zero_x = np.zeros((problem.var_rows, problem.var_cols))
    h0 = [f(zero_x) for f in problem.constraints]
    offset = np.concatenate([_form_vec(h) for h in h0])
    columns = []
    for e in basis:
        cols = [f(e) for f in problem.constraints]
        columns.append(np.concatenate(
            [_form_vec(c) - _form_vec(h) for c, h in zip(cols, h0)]))
    g = np.stack(columns, axis=1)  # lifted linear map, one column per basis element
    normal_inv = np.linalg.inv(np.eye(d) + g.T @ g)

    v = np.zeros(d)
    best_residual = -np.inf
    checkpoint = -np.inf
    iterations = 0
    for sweep in range(1, max_iter + 1):
        iterations = sweep
        x = _devec(v, basis)
        forms = [f(x) for f in problem.constraints]
        # one eigendecomposition per form feeds both the verdict and the
        # projection onto the PSD cone
        passed = True
        residual = np.inf
        w_plus_parts = []
        for h in forms:
            w, u = np.linalg.eigh(h.embedding())
            residual = min(residual, float(w[0]))
            if w[0] < -tolerance * h.scale():
                passed = False
            proj = (u * np.clip(w, 0.0, None)) @ u.T
            n = h.dim
            s = 0.5 * (proj[:n, :n] + proj[n:, n:])
            a = 0.5 * (proj[n:, :n] - proj[:n, n:])
            w_plus_parts.append(np.concatenate([s.ravel(), a.ravel()]))
        best_residual = max(best_residual, residual)
        if passed:
            verdicts = [check_psd(h, tolerance) for h in forms]
            if not all(vd.is_psd for vd in verdicts):  # pragma: no cover - same test
                raise NumericalError("feasible candidate failed re-verification")
            return FeasibilityResult(
                status="feasible",
                feasible=True,
                solution=x,
                residual=residual,
                iterations=iterations,
                tolerance=tolerance,
            )
        if sweep % STALL_WINDOW == 0:
            if best_residual - checkpoint < STALL_IMPROVEMENT:
                return FeasibilityResult(
                    status="infeasible_at_tolerance",
                    feasible=False,
                    solution=None,
                    residual=best_residual,
                    iterations=iterations,
                    tolerance=tolerance,
                )
            checkpoint = best_residual
        w_plus = np.concatenate(w_plus_parts)
        v = normal_inv @ (v + g.T @ (w_plus - offset))

    return FeasibilityResult(
        status="max_iterations",
        feasible=False,
        solution=None,
        residual=best_residual,
        iterations=iterations,
        tolerance=tolerance,
    )
