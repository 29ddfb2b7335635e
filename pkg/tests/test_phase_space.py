"""Core matrix layer: symplectic form, Hermitian forms, PSD checks."""

import numpy as np
import pytest

from gaussbreak import HermitianForm, check_psd, min_eig_vector, symplectic_form
from gaussbreak.errors import InvalidInputError
from gaussbreak.phase_space import antisymmetric_part, symmetric_part


def random_form(rng, n, shift=0.0):
    s = rng.normal(size=(n, n))
    s = (s + s.T) / 2 + shift * np.eye(n)
    a = rng.normal(size=(n, n))
    a = (a - a.T) / 2
    return HermitianForm(s, a)


def test_symplectic_form_structure():
    for n in range(1, 5):
        om = symplectic_form(n)
        assert om.shape == (2 * n, 2 * n)
        assert np.array_equal(om[:2, :2], [[0.0, 1.0], [-1.0, 0.0]])
        assert np.array_equal(om.T, -om)
        assert np.allclose(om.T @ om, np.eye(2 * n))
        # off-diagonal mode blocks vanish
        if n > 1:
            assert not om[:2, 2:].any()


def test_symplectic_form_rejects_bad_mode_count():
    with pytest.raises(InvalidInputError):
        symplectic_form(0)
    with pytest.raises(InvalidInputError):
        symplectic_form(-3)


def test_symmetrization_tolerates_roundoff_and_rejects_gross():
    m = np.array([[1.0, 2.0], [2.0 + 1e-12, 3.0]])
    s = symmetric_part(m)
    assert np.array_equal(s, s.T)
    with pytest.raises(InvalidInputError):
        symmetric_part(np.array([[1.0, 2.0], [2.5, 3.0]]))
    with pytest.raises(InvalidInputError):
        antisymmetric_part(np.array([[0.0, 2.0], [-2.5, 0.0]]))


def test_hermitian_form_matrix_and_embedding():
    rng = np.random.default_rng(3)
    h = random_form(rng, 6)
    m = h.matrix()
    assert np.allclose(m, m.conj().T)
    emb = h.embedding()
    assert emb.shape == (12, 12)
    assert np.array_equal(emb, emb.T)


def test_embedding_spectrum_doubles_complex_spectrum():
    rng = np.random.default_rng(4)
    for _ in range(200):
        n = int(rng.integers(1, 9))
        h = random_form(rng, n)
        w_emb = np.sort(np.linalg.eigvalsh(h.embedding()))
        w_cpx = np.sort(np.linalg.eigvalsh(h.matrix()))
        assert np.allclose(w_emb, np.sort(np.repeat(w_cpx, 2)), atol=1e-9)


def test_check_psd_matches_embedding_sign():
    rng = np.random.default_rng(5)
    for _ in range(1000):
        n = int(rng.integers(1, 9))
        shift = float(rng.normal(scale=2.0))
        h = random_form(rng, n, shift=shift)
        verdict = check_psd(h)
        w_min = float(np.linalg.eigvalsh(h.embedding())[0])
        assert verdict.is_psd == (w_min >= -verdict.tolerance_used)
        assert verdict.min_eigenvalue == pytest.approx(w_min, abs=1e-12)


def test_check_psd_transpose_invariant():
    # S + iA is psd exactly when its transpose S - iA is.
    rng = np.random.default_rng(6)
    for _ in range(300):
        n = int(rng.integers(1, 7))
        h = random_form(rng, n, shift=float(rng.normal()))
        assert check_psd(h).is_psd == check_psd(h.transpose()).is_psd


def test_negative_witness_certifies_failure():
    rng = np.random.default_rng(7)
    found = 0
    for _ in range(200):
        h = random_form(rng, int(rng.integers(1, 7)))
        verdict = check_psd(h)
        if verdict.is_psd:
            continue
        found += 1
        z = verdict.witness_vector
        assert np.linalg.norm(z) == pytest.approx(1.0, abs=1e-12)
        value = float(np.real(z.conj() @ h.matrix() @ z))
        assert value < 0
        assert value == pytest.approx(verdict.min_eigenvalue, abs=1e-9)
    assert found > 50


def test_min_eig_vector_solves_eigen_equation():
    rng = np.random.default_rng(8)
    h = random_form(rng, 8)
    lam, z = min_eig_vector(h)
    residual = h.matrix() @ z - lam * z
    assert np.linalg.norm(residual) < 1e-9 * max(1.0, abs(lam))


def test_tolerance_is_relative_to_scale():
    # A 1e12-scale matrix with a 1-unit negative dip is psd at 1e-9 relative.
    s = np.diag([1e12, 1e12, -1.0])
    h = HermitianForm(s, np.zeros((3, 3)))
    verdict = check_psd(h)
    assert verdict.is_psd
    assert verdict.tolerance_used == pytest.approx(1e-9 * 1e12)
    assert not check_psd(h, tolerance=1e-15).is_psd


def test_congruence_transforms_both_parts():
    rng = np.random.default_rng(9)
    h = random_form(rng, 4)
    m = rng.normal(size=(4, 3))
    g = h.congruence(m)
    assert np.allclose(g.matrix(), m.T @ h.matrix() @ m)


def test_form_addition():
    rng = np.random.default_rng(10)
    h1 = random_form(rng, 4)
    h2 = random_form(rng, 4)
    assert np.allclose((h1 + h2).matrix(), h1.matrix() + h2.matrix())


def test_rejects_nonfinite_and_bad_shapes():
    with pytest.raises(InvalidInputError):
        HermitianForm(np.array([[np.nan, 0.0], [0.0, 1.0]]), np.zeros((2, 2)))
    with pytest.raises(InvalidInputError):
        HermitianForm(np.eye(2), np.zeros((3, 3)))
    with pytest.raises(InvalidInputError):
        HermitianForm(np.ones((2, 3)), np.zeros((2, 3)))
