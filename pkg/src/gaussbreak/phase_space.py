"""Phase-space primitives: the symplectic form and Hermitian-form algebra.

Conventions
-----------
Modes are ordered (q1, p1, ..., qN, pN).  The symplectic form is the direct
sum of 2x2 blocks,

    Omega = diag([[0, 1], [-1, 0]], ...)            (2N x 2N)

so that Omega^T = -Omega and Omega^T Omega = I.

A Hermitian form S + iA is stored as a pair of real matrices (S symmetric,
A antisymmetric).  Positive semidefiniteness of S + iA is decided on the
real symmetric embedding

    E = [[S, -A],
         [A,  S]]                                   (2n x 2n)

whose spectrum is that of S + iA with every eigenvalue doubled.  Eigenvalues
and eigenvectors are computed with ``numpy.linalg.eigh`` on E; a complex
eigenvector is recovered from an embedded eigenvector (u; v) as z = u + iv.
Any real unit vector in the (doubled) eigenspace yields the same complex
eigenvector up to a phase, since (u; v) -> (-v; u) corresponds to z -> iz.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import InvalidInputError, NumericalError

__all__ = [
    "symplectic_form",
    "HermitianForm",
    "PsdVerdict",
    "check_psd",
    "min_eig_vector",
    "real_matrix",
    "real_vector",
]

# Relative asymmetry beyond this is treated as a malformed input rather than
# as roundoff to be repaired silently.
SYMMETRY_RTOL = 1e-8

# Default relative eigenvalue tolerance for positivity decisions.
PSD_RTOL = 1e-9


def real_matrix(entries, rows: int | None = None, cols: int | None = None,
                name: str = "matrix") -> np.ndarray:
    """Validate and copy a real matrix.

    Rejects non-2d input, non-finite entries and, when ``rows``/``cols`` are
    given, shape mismatches.  The returned array is float64, C-contiguous and
    marked read-only.
    """
    a = np.array(entries, dtype=float, copy=True)
    if a.ndim != 2:
        raise InvalidInputError(f"{name}: expected a 2d array, got ndim={a.ndim}")
    if rows is not None and a.shape[0] != rows:
        raise InvalidInputError(f"{name}: expected {rows} rows, got {a.shape[0]}")
    if cols is not None and a.shape[1] != cols:
        raise InvalidInputError(f"{name}: expected {cols} columns, got {a.shape[1]}")
    if not np.all(np.isfinite(a)):
        raise InvalidInputError(f"{name}: entries must be finite")
    a.setflags(write=False)
    return a


def real_vector(entries, size: int | None = None, name: str = "vector") -> np.ndarray:
    """Validate and copy a real vector (float64, read-only)."""
    v = np.array(entries, dtype=float, copy=True)
    if v.ndim != 1:
        raise InvalidInputError(f"{name}: expected a 1d array, got ndim={v.ndim}")
    if size is not None and v.shape[0] != size:
        raise InvalidInputError(f"{name}: expected length {size}, got {v.shape[0]}")
    if not np.all(np.isfinite(v)):
        raise InvalidInputError(f"{name}: entries must be finite")
    v.setflags(write=False)
    return v


def symmetric_part(a: np.ndarray, name: str = "matrix") -> np.ndarray:
    """Symmetrise ``a``, rejecting relative asymmetry beyond 1e-8."""
    scale = max(1.0, float(np.abs(a).max(initial=0.0)))
    if np.abs(a - a.T).max(initial=0.0) > SYMMETRY_RTOL * scale:
        raise InvalidInputError(f"{name}: not symmetric within tolerance")
    return 0.5 * (a + a.T)


def antisymmetric_part(a: np.ndarray, name: str = "matrix") -> np.ndarray:
    """Antisymmetrise ``a``, rejecting relative deviation beyond 1e-8."""
    scale = max(1.0, float(np.abs(a).max(initial=0.0)))
    if np.abs(a + a.T).max(initial=0.0) > SYMMETRY_RTOL * scale:
        raise InvalidInputError(f"{name}: not antisymmetric within tolerance")
    return 0.5 * (a - a.T)


@lru_cache(maxsize=None)
def _symplectic_form_cached(n_modes: int) -> np.ndarray:
    block = np.array([[0.0, 1.0], [-1.0, 0.0]])
    out = np.kron(np.eye(n_modes), block)
    out.setflags(write=False)
    return out


def symplectic_form(n_modes: int) -> np.ndarray:
    """Return the 2N x 2N symplectic form for ``n_modes`` modes.

    Examples
    --------
    >>> symplectic_form(1)
    array([[ 0.,  1.],
           [-1.,  0.]])
    """
    if not isinstance(n_modes, (int, np.integer)) or n_modes < 1:
        raise InvalidInputError(f"n_modes: expected a positive integer, got {n_modes!r}")
    return _symplectic_form_cached(int(n_modes))


@dataclass(frozen=True)
class HermitianForm:
    """The Hermitian matrix S + iA, held as real parts (S symmetric, A antisymmetric).

    Construction symmetrises S and antisymmetrises A, rejecting inputs whose
    deviation exceeds 1e-8 relative to the largest entry.
    """

    s: np.ndarray
    a: np.ndarray

    def __init__(self, s, a) -> None:
        s = real_matrix(s, name="s")
        a = real_matrix(a, rows=s.shape[0], cols=s.shape[1], name="a")
        if s.shape[0] != s.shape[1]:
            raise InvalidInputError(f"s: expected a square matrix, got {s.shape}")
        s = symmetric_part(s, name="s")
        a = antisymmetric_part(a, name="a")
        s.setflags(write=False)
        a.setflags(write=False)
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "a", a)

    @property
    def dim(self) -> int:
        return self.s.shape[0]

    def matrix(self) -> np.ndarray:
        """The complex Hermitian matrix S + iA."""
        return self.s + 1j * self.a

    def embedding(self) -> np.ndarray:
        """The real symmetric embedding [[S, -A], [A, S]] (spectrum doubled)."""
        return np.block([[self.s, -self.a], [self.a, self.s]])

    def scale(self) -> float:
        """max(1, largest absolute entry), used for relative tolerances."""
        return max(1.0, float(np.abs(self.s).max(initial=0.0)),
                   float(np.abs(self.a).max(initial=0.0)))

    def transpose(self) -> "HermitianForm":
        """The transposed form S - iA.  Shares the spectrum of S + iA."""
        return HermitianForm(self.s, -self.a)

    def __add__(self, other: "HermitianForm") -> "HermitianForm":
        if not isinstance(other, HermitianForm):
            return NotImplemented
        return HermitianForm(self.s + other.s, self.a + other.a)

    def congruence(self, m: np.ndarray) -> "HermitianForm":
        """Return M^T (S + iA) M for a real matrix M."""
        m = np.asarray(m, dtype=float)
        return HermitianForm(m.T @ self.s @ m, m.T @ self.a @ m)


@dataclass(frozen=True)
class PsdVerdict:
    """Outcome of a positivity check.

    Attributes
    ----------
    is_psd : bool
        True when the smallest eigenvalue clears ``-tolerance_used``.
    min_eigenvalue : float
        Smallest eigenvalue of S + iA.
    witness_vector : numpy.ndarray
        Unit complex vector z with conj(z)^T (S + iA) z = min_eigenvalue.
    tolerance_used : float
        Absolute threshold applied, i.e. rtol * max(1, largest entry).
    """

    is_psd: bool
    min_eigenvalue: float
    witness_vector: np.ndarray
    tolerance_used: float


def _min_eigenpair(h: HermitianForm) -> tuple[float, np.ndarray]:
    try:
        w, v = np.linalg.eigh(h.embedding())
    except np.linalg.LinAlgError as exc:  # pragma: no cover - defensive
        raise NumericalError(f"eigendecomposition failed: {exc}") from exc
    n = h.dim
    vec = v[:, 0]
    z = vec[:n] + 1j * vec[n:]
    nrm = np.linalg.norm(z)
    if nrm == 0.0:  # pragma: no cover - cannot happen for orthonormal output
        raise NumericalError("eigensolver returned a zero vector")
    z = z / nrm
    z.setflags(write=False)
    return float(w[0]), z


def min_eig_vector(h: HermitianForm) -> tuple[float, np.ndarray]:
    """Smallest eigenvalue of S + iA and a unit eigenvector.

    The pair is computed on the real embedding; the complex eigenvector is
    z = u + iv where (u; v) is an embedded eigenvector for the smallest
    eigenvalue.

    Examples
    --------
    The form -i Omega on one mode has eigenvalues -1 and 1; the eigenvector
    for -1 is proportional to (1, -i).
    """
    return _min_eigenpair(h)


def check_psd(h: HermitianForm, tolerance: float = PSD_RTOL) -> PsdVerdict:
    """Decide S + iA >= 0 at a relative tolerance.

    The decision threshold is ``tolerance * max(1, largest absolute entry)``;
    the verdict records the threshold actually applied together with the
    smallest eigenvalue and a witness eigenvector.
    """
    if not (tolerance >= 0.0):
        raise InvalidInputError(f"tolerance: expected a nonnegative real, got {tolerance!r}")
    lam, z = _min_eigenpair(h)
    thresh = tolerance * h.scale()
    return PsdVerdict(
        is_psd=bool(lam >= -thresh),
        min_eigenvalue=lam,
        witness_vector=z,
        tolerance_used=thresh,
    )
