"""LMI feasibility engine: statuses, soundness, determinism, oracle agreement."""

import numpy as np
import pytest

import gen
from gaussbreak import LmiProblem, quadrature_observable, solve_lmi
from gaussbreak.compatibility import pair_compatible, quad_pair_compatible
from gaussbreak.errors import InvalidInputError
from gaussbreak.objects import GaussianObservable
from gaussbreak.phase_space import HermitianForm, check_psd


def _form(s, a=None):
    s = np.atleast_2d(np.asarray(s, dtype=float))
    if a is None:
        a = np.zeros_like(s)
    return HermitianForm(s, a)


def test_box_constrained_variable_is_found():
    # find symmetric x with x - I >= 0 and 3I - x >= 0
    eye = np.eye(2)
    problem = LmiProblem(
        var_rows=2, var_cols=2,
        constraints=(lambda x: _form(x - eye), lambda x: _form(3 * eye - x)),
        symmetric=True)
    result = solve_lmi(problem)
    assert result.status == "feasible" and result.feasible
    assert result.residual >= -1e-9
    x = result.solution
    assert np.array_equal(x, x.T)
    assert check_psd(_form(x - eye)).is_psd
    assert check_psd(_form(3 * eye - x)).is_psd


def test_constant_infeasible_constraint():
    problem = LmiProblem(
        var_rows=1, var_cols=1,
        constraints=(lambda x: _form(-np.eye(2)),))
    result = solve_lmi(problem)
    assert result.status == "infeasible_at_tolerance"
    assert not result.feasible
    assert result.residual == pytest.approx(-1.0, abs=1e-12)


def test_rectangular_variable_feasible():
    # x (1x2) with [[1, x], [x^T, 1]] - like chain through an affine map
    def constraint(x):
        s = np.eye(3)
        s[0, 1:] = x[0]
        s[1:, 0] = x[0]
        return _form(s)

    problem = LmiProblem(var_rows=1, var_cols=2, constraints=(constraint,))
    result = solve_lmi(problem)
    assert result.feasible
    assert check_psd(constraint(result.solution)).is_psd


def test_feasible_answers_reverify_independently():
    rng = np.random.default_rng(30)
    for _ in range(50):
        x = rng.normal(size=4)
        y = rng.normal(size=4)
        lx, ly = float(rng.uniform(0.5, 2)), float(rng.uniform(0.5, 2))
        verdict = pair_compatible(
            GaussianObservable(x.reshape(-1, 1), [[lx]], [0.0]),
            GaussianObservable(y.reshape(-1, 1), [[ly]], [0.0]))
        if verdict.compatible:
            assert verdict.joint is not None
            from gaussbreak.objects import observable_form
            assert check_psd(observable_form(verdict.joint)).is_psd


def test_identical_inputs_identical_traces():
    rng = np.random.default_rng(31)
    x, y = rng.normal(size=4), rng.normal(size=4)
    e1 = GaussianObservable(x.reshape(-1, 1), [[0.9]], [0.0])
    e2 = GaussianObservable(y.reshape(-1, 1), [[1.1]], [0.0])
    first = pair_compatible(e1, e2)
    second = pair_compatible(e1, e2)
    assert first.status == second.status
    assert first.iterations == second.iterations
    assert first.certificate == second.certificate
    if first.joint is not None:
        assert np.array_equal(first.joint.l, second.joint.l)


def test_oracle_agreement_on_quadrature_completions():
    rng = np.random.default_rng(32)
    checked = 0
    while checked < 200:
        x, lx, y, ly = gen.quadrature_pair(rng, int(rng.integers(1, 3)))
        closed = quad_pair_compatible(x, lx, y, ly)
        if abs(closed.certificate) <= 1e-6:
            continue
        checked += 1
        solved = pair_compatible(
            GaussianObservable(x.reshape(-1, 1), [[lx]], [0.0]),
            GaussianObservable(y.reshape(-1, 1), [[ly]], [0.0]))
        assert solved.compatible == closed.compatible, (x, lx, y, ly)


def test_problem_validation():
    with pytest.raises(InvalidInputError):
        LmiProblem(var_rows=0, var_cols=1, constraints=(lambda x: _form(x),))
    with pytest.raises(InvalidInputError):
        LmiProblem(var_rows=2, var_cols=3, constraints=(lambda x: _form(x),),
                   symmetric=True)
    with pytest.raises(InvalidInputError):
        LmiProblem(var_rows=1, var_cols=1, constraints=())


def test_max_iterations_status():
    eye = np.eye(2)
    problem = LmiProblem(
        var_rows=2, var_cols=2,
        constraints=(lambda x: _form(x - eye), lambda x: _form(3 * eye - x)),
        symmetric=True)
    result = solve_lmi(problem, max_iter=1)
    assert result.status in ("feasible", "max_iterations")
    if result.status == "max_iterations":
        assert result.feasible is None or result.feasible is False


def test_quadrature_observable_helper_matches_manual():
    q = quadrature_observable((0.0, 1.0))
    assert q.outcome_dim == 1
    assert q.l[0, 0] == 0.0
