"""Gaussian states, channels, observables and classical postprocessings.

All four objects are finite parameter triples; no Hilbert-space arrays are
ever formed.  Conventions (see also :mod:`gaussbreak.phase_space`):

  - A state is (V, r) with V the matrix of anticommutator second moments
    (no factor 1/2), so the vacuum has V = I, and validity reads
    V + i Omega >= 0.  Its characteristic function is

        chi(x) = exp(-1/4 x^T Omega^T V Omega x - i (Omega r)^T x).

  - A channel from N to N' modes is (A, B, c) with A real 2N x 2N', B real
    symmetric 2N' x 2N', c in R^{2N'}, acting on characteristic functions as

        chi_out(x) = chi_in(A x) exp(-1/4 x^T B x - i c^T x),

    completely positive iff  B + i Omega_{N'} - i A^T Omega_N A >= 0.

  - An observable with M outcomes on N modes is (K, L, m), K real 2N x M,
    L real symmetric M x M, valid iff  L - i K^T Omega K >= 0.

  - A postprocessing from M to M' outcomes is (A, B, c), A real M x M',
    B real symmetric M' x M' positive semidefinite, c in R^{M'}.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError
from .phase_space import (
    PSD_RTOL,
    HermitianForm,
    PsdVerdict,
    check_psd,
    real_matrix,
    real_vector,
    symmetric_part,
    symplectic_form,
)

__all__ = [
    "GaussianState",
    "GaussianChannel",
    "GaussianObservable",
    "GaussianPostprocessing",
    "InvariantCheck",
    "ValidityReport",
    "validate",
    "vacuum_state",
    "epr_state",
    "quadrature_observable",
    "canonical_position",
    "apply_channel_to_observable",
    "apply_channel_to_state",
    "one_sided_apply",
    "apply_postprocessing",
    "compose_channels",
]


def _even(n: int, name: str) -> int:
    if n % 2 != 0 or n == 0:
        raise InvalidInputError(f"{name}: phase-space dimension must be a positive even number, got {n}")
    return n // 2


@dataclass(frozen=True)
class GaussianState:
    """A Gaussian state (V, r); ``v`` is 2N x 2N, ``r`` has length 2N."""

    v: np.ndarray
    r: np.ndarray

    def __init__(self, v, r) -> None:
        v = real_matrix(v, name="v")
        if v.shape[0] != v.shape[1]:
            raise InvalidInputError(f"v: expected a square matrix, got {v.shape}")
        _even(v.shape[0], "v")
        v = symmetric_part(v, name="v")
        v.setflags(write=False)
        r = real_vector(r, size=v.shape[0], name="r")
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "r", r)

    @property
    def n_modes(self) -> int:
        return self.v.shape[0] // 2


@dataclass(frozen=True)
class GaussianChannel:
    """A Gaussian channel (A, B, c) from ``in_modes`` to ``out_modes`` modes."""

    a: np.ndarray
    b: np.ndarray
    c: np.ndarray

    def __init__(self, a, b, c) -> None:
        a = real_matrix(a, name="a")
        _even(a.shape[0], "a (rows)")
        _even(a.shape[1], "a (columns)")
        b = real_matrix(b, rows=a.shape[1], cols=a.shape[1], name="b")
        b = symmetric_part(b, name="b")
        b.setflags(write=False)
        c = real_vector(c, size=a.shape[1], name="c")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)

    @property
    def in_modes(self) -> int:
        return self.a.shape[0] // 2

    @property
    def out_modes(self) -> int:
        return self.a.shape[1] // 2


@dataclass(frozen=True)
class GaussianObservable:
    """A Gaussian observable (K, L, m) with ``outcome_dim`` outcomes on ``n_modes`` modes."""

    k: np.ndarray
    l: np.ndarray
    m: np.ndarray

    def __init__(self, k, l, m) -> None:
        k = real_matrix(k, name="k")
        _even(k.shape[0], "k (rows)")
        if k.shape[1] < 1:
            raise InvalidInputError("k: expected at least one outcome column")
        l = real_matrix(l, rows=k.shape[1], cols=k.shape[1], name="l")
        l = symmetric_part(l, name="l")
        l.setflags(write=False)
        m = real_vector(m, size=k.shape[1], name="m")
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "l", l)
        object.__setattr__(self, "m", m)

    @property
    def n_modes(self) -> int:
        return self.k.shape[0] // 2

    @property
    def outcome_dim(self) -> int:
        return self.k.shape[1]


@dataclass(frozen=True)
class GaussianPostprocessing:
    """A classical Gaussian postprocessing (A, B, c) from ``source_dim`` to ``target_dim`` outcomes.

    Acting on an observable (K, L, m) it produces (K A, B + A^T L A, c + A^T m).
    """

    a: np.ndarray
    b: np.ndarray
    c: np.ndarray

    def __init__(self, a, b, c) -> None:
        a = real_matrix(a, name="a")
        if a.shape[0] < 1 or a.shape[1] < 1:
            raise InvalidInputError(f"a: expected nonempty dimensions, got {a.shape}")
        b = real_matrix(b, rows=a.shape[1], cols=a.shape[1], name="b")
        b = symmetric_part(b, name="b")
        b.setflags(write=False)
        c = real_vector(c, size=a.shape[1], name="c")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)

    @property
    def source_dim(self) -> int:
        return self.a.shape[0]

    @property
    def target_dim(self) -> int:
        return self.a.shape[1]


@dataclass(frozen=True)
class InvariantCheck:
    """One line of a validity report."""

    name: str
    passed: bool
    min_eigenvalue: float | None = None
    tolerance: float | None = None
    detail: str = ""


@dataclass(frozen=True)
class ValidityReport:
    kind: str
    checks: tuple[InvariantCheck, ...]

    @property
    def valid(self) -> bool:
        return all(c.passed for c in self.checks)


def _psd_check(name: str, form: HermitianForm, tolerance: float) -> InvariantCheck:
    verdict = check_psd(form, tolerance)
    return InvariantCheck(
        name=name,
        passed=verdict.is_psd,
        min_eigenvalue=verdict.min_eigenvalue,
        tolerance=verdict.tolerance_used,
    )


def cp_form(ch: GaussianChannel) -> HermitianForm:
    """Complete-positivity form B + i(Omega_out - A^T Omega_in A)."""
    om_in = symplectic_form(ch.in_modes)
    om_out = symplectic_form(ch.out_modes)
    return HermitianForm(ch.b, om_out - ch.a.T @ om_in @ ch.a)


def observable_form(obs: GaussianObservable) -> HermitianForm:
    """Observable positivity form L - i K^T Omega K."""
    om = symplectic_form(obs.n_modes)
    return HermitianForm(obs.l, -obs.k.T @ om @ obs.k)


def validate(obj, tolerance: float = PSD_RTOL) -> ValidityReport:
    """Run every defining invariant of a state, channel, observable or postprocessing.

    Structural invariants (shapes, symmetry, finiteness) are enforced at
    construction; this reports the positivity conditions, which a parsed
    document may well fail.
    """
    if isinstance(obj, GaussianState):
        om = symplectic_form(obj.n_modes)
        checks = (_psd_check("uncertainty_relation", HermitianForm(obj.v, om), tolerance),)
        return ValidityReport("state", checks)
    if isinstance(obj, GaussianChannel):
        checks = (_psd_check("complete_positivity", cp_form(obj), tolerance),)
        return ValidityReport("channel", checks)
    if isinstance(obj, GaussianObservable):
        zero = np.zeros((obj.outcome_dim, obj.outcome_dim))
        checks = (
            _psd_check("positivity", observable_form(obj), tolerance),
            _psd_check("noise_psd", HermitianForm(obj.l, zero), tolerance),
        )
        return ValidityReport("observable", checks)
    if isinstance(obj, GaussianPostprocessing):
        zero = np.zeros((obj.target_dim, obj.target_dim))
        checks = (_psd_check("noise_psd", HermitianForm(obj.b, zero), tolerance),)
        return ValidityReport("postprocessing", checks)
    raise InvalidInputError(f"validate: unsupported object type {type(obj).__name__}")


def vacuum_state(n_modes: int) -> GaussianState:
    """The N-mode vacuum, V = I and r = 0."""
    if n_modes < 1:
        raise InvalidInputError(f"n_modes: expected a positive integer, got {n_modes}")
    return GaussianState(np.eye(2 * n_modes), np.zeros(2 * n_modes))


def epr_state(n_modes_per_side: int, r: float) -> GaussianState:
    """Two-sided squeezed state on 2N modes with squeezing parameter r >= 0.

    The covariance is

        V0(r) = [[cosh(r) I, sinh(r) Z],
                 [sinh(r) Z, cosh(r) I]],   Z = diag(1, -1, 1, -1, ...),

    with zero displacement.  These states are pure: the smallest eigenvalue
    of V0(r) + i Omega is zero for every r.
    """
    if n_modes_per_side < 1:
        raise InvalidInputError(
            f"n_modes_per_side: expected a positive integer, got {n_modes_per_side}")
    if not np.isfinite(r) or r < 0:
        raise InvalidInputError(f"r: expected a finite nonnegative real, got {r!r}")
    n = n_modes_per_side
    eye = np.eye(2 * n)
    zed = np.kron(np.eye(n), np.diag([1.0, -1.0]))
    v = np.block([
        [np.cosh(r) * eye, np.sinh(r) * zed],
        [np.sinh(r) * zed, np.cosh(r) * eye],
    ])
    return GaussianState(v, np.zeros(4 * n))


def quadrature_observable(k) -> GaussianObservable:
    """Single-outcome observable (K = k as a column, L = 0, m = 0).

    Always valid: K^T Omega K vanishes for a single column.  Note on
    labelling: with the conventions fixed in :mod:`gaussbreak.distributions`,
    the outcome of the parameter k tracks the linear form
    sum_j (k_{2j} q_j - k_{2j-1} p_j) of the mode means, so on one mode
    k = (0, 1) tracks +q and k = (-1, 0) tracks +p.
    """
    k = real_vector(k, name="k")
    if k.shape[0] == 0 or not np.any(k):
        raise InvalidInputError("k: expected a nonzero vector")
    col = k.reshape(-1, 1)
    return GaussianObservable(col, np.zeros((1, 1)), np.zeros(1))


def canonical_position(n_modes: int) -> GaussianObservable:
    """The N-outcome observable measuring every q_j jointly.

    Per mode the parameter column is (0, 1), which under the sign
    conventions fixed in :mod:`gaussbreak.distributions` tracks +q_j; for
    one mode this reduces to ``quadrature_observable((0, 1))``.
    """
    if n_modes < 1:
        raise InvalidInputError(f"n_modes: expected a positive integer, got {n_modes}")
    k = np.zeros((2 * n_modes, n_modes))
    for j in range(n_modes):
        k[2 * j + 1, j] = 1.0
    return GaussianObservable(k, np.zeros((n_modes, n_modes)), np.zeros(n_modes))


def apply_channel_to_observable(ch: GaussianChannel, obs: GaussianObservable) -> GaussianObservable:
    """Heisenberg action: (K, L, m) -> (A K, L + K^T B K, m + K^T c).

    The observable must live on the channel's output modes; the result lives
    on its input modes.  Validity is preserved, since

        L' - i K'^T Omega_in K'
            = (L - i K^T Omega_out K) + K^T (B + i Omega_out - i A^T Omega_in A) K.
    """
    if obs.n_modes != ch.out_modes:
        raise InvalidInputError(
            f"mode mismatch: observable has {obs.n_modes} modes, channel emits {ch.out_modes}")
    return GaussianObservable(
        ch.a @ obs.k,
        obs.l + obs.k.T @ ch.b @ obs.k,
        obs.m + obs.k.T @ ch.c,
    )


def apply_channel_to_state(ch: GaussianChannel, st: GaussianState) -> GaussianState:
    """Schroedinger action of a channel on a state.

    Derivation.  Writing chi(x) = exp(-1/4 x^T Om^T V Om x - i (Om r)^T x)
    for the input state and inserting it into
    chi_out(x) = chi(A x) exp(-1/4 x^T B x - i c^T x) gives

        chi_out(x) = exp(-1/4 x^T (A^T Om_in^T V Om_in A + B) x
                         - i (A^T Om_in r + c)^T x),

    and matching against the output parametrisation
    Om_out^T V' Om_out = A^T Om_in^T V Om_in A + B,  Om_out r' = A^T Om_in r + c
    (Om^{-1} = Om^T) yields

        V' = Om_out (A^T Om_in^T V Om_in A + B) Om_out^T,
        r' = Om_out^T (A^T Om_in r + c).

    For a channel extended by an identity, A -> A (+) I, B -> B (+) 0,
    this reduces to the congruence form
    V' = Om (A (+) I)^T Om^T V Om (A (+) I) Om^T + Om (B (+) 0) Om^T, which is
    the one-sided special case handled by :func:`one_sided_apply`.
    """
    if st.n_modes != ch.in_modes:
        raise InvalidInputError(
            f"mode mismatch: state has {st.n_modes} modes, channel accepts {ch.in_modes}")
    om_in = symplectic_form(ch.in_modes)
    om_out = symplectic_form(ch.out_modes)
    v = om_out @ (ch.a.T @ om_in.T @ st.v @ om_in @ ch.a + ch.b) @ om_out.T
    r = om_out.T @ (ch.a.T @ om_in @ st.r + ch.c)
    return GaussianState(v, r)


def extend_channel(ch: GaussianChannel, side: str, other_modes: int) -> GaussianChannel:
    """Pad a channel with an identity on the other side of a bipartition.

    ``side='A'`` gives (A (+) I, B (+) 0, c (+) 0); ``side='B'`` gives
    (I (+) A, 0 (+) B, 0 (+) c).
    """
    if side not in ("A", "B"):
        raise InvalidInputError(f"side: expected 'A' or 'B', got {side!r}")
    if other_modes < 1:
        raise InvalidInputError(f"other_modes: expected a positive integer, got {other_modes}")
    eye = np.eye(2 * other_modes)
    zb = np.zeros((2 * other_modes, 2 * other_modes))
    zc = np.zeros(2 * other_modes)
    if side == "A":
        blocks = ((ch.a, eye), (ch.b, zb), (ch.c, zc))
    else:
        blocks = ((eye, ch.a), (zb, ch.b), (zc, ch.c))
    (a1, a2), (b1, b2), (c1, c2) = blocks
    a = np.block([
        [a1, np.zeros((a1.shape[0], a2.shape[1]))],
        [np.zeros((a2.shape[0], a1.shape[1])), a2],
    ])
    b = np.block([
        [b1, np.zeros((b1.shape[0], b2.shape[1]))],
        [np.zeros((b2.shape[0], b1.shape[1])), b2],
    ])
    return GaussianChannel(a, b, np.concatenate([c1, c2]))


def one_sided_apply(ch: GaussianChannel, st: GaussianState, side: str,
                    split: tuple[int, int]) -> GaussianState:
    """Apply a channel to one side of a bipartite state.

    ``split = (n_a, n_b)`` declares the mode partition of ``st`` (side A
    first).  The channel's input mode count must match the chosen side; the
    other side is left untouched.
    """
    n_a, n_b = split
    if n_a < 1 or n_b < 1 or n_a + n_b != st.n_modes:
        raise InvalidInputError(
            f"split: expected positive counts summing to {st.n_modes}, got {split}")
    if side == "A":
        if ch.in_modes != n_a:
            raise InvalidInputError(
                f"mode mismatch: channel accepts {ch.in_modes} modes, side A has {n_a}")
        ext = extend_channel(ch, "A", n_b)
    elif side == "B":
        if ch.in_modes != n_b:
            raise InvalidInputError(
                f"mode mismatch: channel accepts {ch.in_modes} modes, side B has {n_b}")
        ext = extend_channel(ch, "B", n_a)
    else:
        raise InvalidInputError(f"side: expected 'A' or 'B', got {side!r}")
    return apply_channel_to_state(ext, st)


def apply_postprocessing(pp: GaussianPostprocessing, obs: GaussianObservable) -> GaussianObservable:
    """Classical postprocessing: (K, L, m) -> (K A, B + A^T L A, c + A^T m).

    Validity is preserved:  (B + A^T L A) - i (K A)^T Omega (K A)
    = B + A^T (L - i K^T Omega K) A >= 0 whenever B >= 0 and obs is valid.
    """
    if pp.source_dim != obs.outcome_dim:
        raise InvalidInputError(
            f"outcome mismatch: postprocessing expects {pp.source_dim} outcomes, "
            f"observable has {obs.outcome_dim}")
    return GaussianObservable(
        obs.k @ pp.a,
        pp.b + pp.a.T @ obs.l @ pp.a,
        pp.c + pp.a.T @ obs.m,
    )


def compose_channels(second: GaussianChannel, first: GaussianChannel) -> GaussianChannel:
    """Serial composition, ``second`` after ``first`` (Schroedinger order).

    The composite triple is (A1 A2, B2 + A2^T B1 A2, c2 + A2^T c1), with
    (A1, B1, c1) = first and (A2, B2, c2) = second; its input modes are those
    of ``first`` and output modes those of ``second``.
    """
    if first.out_modes != second.in_modes:
        raise InvalidInputError(
            f"mode mismatch: first emits {first.out_modes} modes, second accepts {second.in_modes}")
    return GaussianChannel(
        first.a @ second.a,
        second.b + second.a.T @ first.b @ second.a,
        second.c + second.a.T @ first.c,
    )
