"""Spin-j primitives: angular momentum matrices, state containers, SU(2)
coherent states and Husimi values on the sphere.

Basis convention used throughout the package: |j,m> with m = j, j-1, ..., -j,
so amplitude index 0 belongs to m = +j and the north-pole coherent state is
(1, 0, ..., 0).  Half-integer spins are stored exactly as the integer 2j.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "SpinQuantum",
    "SphericalPoint",
    "AngularMomentumOps",
    "PureState",
    "DensityMatrix",
    "build_angular_momentum",
    "coherent_amplitudes",
    "coherent_state",
    "husimi_value",
    "husimi_product_grid",
    "jz_eigenstate",
    "rotation_operator",
    "unitary_exp",
]

_NORM_TOL = 1e-12
_DM_TOL = 1e-10
# stand-in for log(0) in amplitude exponents; k*_LOG_ZERO underflows exp() to 0
# for every k >= 1 while k = 0 contributes exactly 0
_LOG_ZERO = -1e30

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class SpinQuantum:
    """Spin quantum number j held as the integer 2j (exact for half-integers).

    The Hilbert-space dimension is N = 2j + 1.
    """

    two_j: int

    def __post_init__(self):
        if not isinstance(self.two_j, (int, np.integer)):
            raise TypeError(f"two_j must be an integer, got {type(self.two_j).__name__}")
        if self.two_j < 1:
            raise ValueError(f"two_j must be >= 1 (dimension >= 2), got {self.two_j}")
        object.__setattr__(self, "two_j", int(self.two_j))

    @property
    def j(self) -> float:
        return self.two_j / 2.0

    @property
    def dim(self) -> int:
        return self.two_j + 1

    @classmethod
    def from_dim(cls, n: int) -> "SpinQuantum":
        if n < 2:
            raise ValueError(f"dimension must be >= 2, got {n}")
        return cls(int(n) - 1)

    def m_values(self) -> np.ndarray:
        """m = j, j-1, ..., -j in amplitude-index order."""
        return (self.two_j - 2.0 * np.arange(self.dim)) / 2.0


@dataclass(frozen=True)
class SphericalPoint:
    """Point (theta, phi) on the unit sphere, radians.

    theta must lie in [0, pi]; phi is wrapped into [0, 2*pi).
    """

    theta: float
    phi: float

    def __post_init__(self):
        th = float(self.theta)
        ph = float(self.phi)
        if not (0.0 <= th <= math.pi):
            raise ValueError(f"theta must lie in [0, pi], got {self.theta!r}")
        if not math.isfinite(ph):
            raise ValueError(f"phi must be finite, got {self.phi!r}")
        object.__setattr__(self, "theta", th)
        object.__setattr__(self, "phi", ph % TWO_PI)

    def antipode(self) -> "SphericalPoint":
        return SphericalPoint(math.pi - self.theta, self.phi + math.pi)

    def unit_vector(self) -> np.ndarray:
        st = math.sin(self.theta)
        return np.array(
            [st * math.cos(self.phi), st * math.sin(self.phi), math.cos(self.theta)]
        )


class AngularMomentumOps:
    """Matrices jx, jy, jz in the |j,m> basis (read-only)."""

    __slots__ = ("q", "jx", "jy", "jz")

    def __init__(self, q: SpinQuantum, jx: np.ndarray, jy: np.ndarray, jz: np.ndarray):
        self.q = q
        self.jx = _readonly(jx)
        self.jy = _readonly(jy)
        self.jz = _readonly(jz)


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.array(a, copy=True)
    a.flags.writeable = False
    return a


def build_angular_momentum(q: SpinQuantum) -> AngularMomentumOps:
    """Angular momentum matrices from the standard ladder construction.

    J+|j,m> = sqrt(j(j+1) - m(m+1)) |j,m+1>; with descending-m ordering the
    raising operator populates the first superdiagonal.
    """
    n = q.dim
    j = q.j
    m = q.m_values()
    jp = np.zeros((n, n), dtype=complex)
    cols = np.arange(1, n)
    jp[cols - 1, cols] = np.sqrt(j * (j + 1.0) - m[cols] * (m[cols] + 1.0))
    jm = jp.conj().T
    jx = 0.5 * (jp + jm)
    jy = -0.5j * (jp - jm)
    jz = np.diag(m.astype(complex))
    return AngularMomentumOps(q, jx, jy, jz)


class PureState:
    """Unit-norm amplitude vector in the |j,m> basis."""

    __slots__ = ("amplitudes", "q")

    def __init__(self, amplitudes):
        a = np.asarray(amplitudes, dtype=complex)
        if a.ndim != 1 or a.size < 2:
            raise ValueError("amplitudes must be a 1-D vector of length >= 2")
        nrm = np.linalg.norm(a)
        if abs(nrm - 1.0) > _NORM_TOL:
            raise ValueError(f"state norm {nrm!r} deviates from 1 beyond {_NORM_TOL}")
        self.amplitudes = _readonly(a)
        self.q = SpinQuantum(a.size - 1)

    @classmethod
    def normalized(cls, amplitudes) -> "PureState":
        a = np.asarray(amplitudes, dtype=complex)
        nrm = np.linalg.norm(a)
        if nrm == 0.0:
            raise ValueError("cannot normalize the zero vector")
        return cls(a / nrm)

    def overlap(self, other: "PureState") -> complex:
        """<self|other>."""
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def fidelity(self, other: "PureState") -> float:
        return abs(self.overlap(other)) ** 2

    def __repr__(self):  # pragma: no cover - debugging aid
        return f"PureState(N={self.q.dim})"


class DensityMatrix:
    """Hermitian, unit-trace, positive-semidefinite matrix in the |j,m> basis.

    Validation runs once at construction (tolerance 1e-10), not per call.
    """

    __slots__ = ("rho", "q")

    def __init__(self, rho):
        r = np.asarray(rho, dtype=complex)
        if r.ndim != 2 or r.shape[0] != r.shape[1] or r.shape[0] < 2:
            raise ValueError("rho must be a square matrix of dimension >= 2")
        if np.abs(r - r.conj().T).max() > _DM_TOL:
            raise ValueError("rho is not Hermitian within 1e-10")
        tr = np.trace(r).real
        if abs(tr - 1.0) > _DM_TOL:
            raise ValueError(f"trace {tr!r} deviates from 1 beyond 1e-10")
        if np.linalg.eigvalsh(r).min() < -_DM_TOL:
            raise ValueError("rho has an eigenvalue below -1e-10")
        self.rho = _readonly(r)
        self.q = SpinQuantum(r.shape[0] - 1)

    @classmethod
    def from_pure(cls, state: PureState) -> "DensityMatrix":
        a = state.amplitudes
        return cls(np.outer(a, a.conj()))

    @classmethod
    def maximally_mixed(cls, q: SpinQuantum) -> "DensityMatrix":
        return cls(np.eye(q.dim) / q.dim)


def _half_log_binom(two_j: int) -> np.ndarray:
    """0.5 * ln C(2j, k) for k = 0..2j, via log-gamma (overflow-safe)."""
    lg = np.array([math.lgamma(i + 1.0) for i in range(two_j + 1)])
    return 0.5 * (lg[-1] - lg - lg[::-1])


def _safe_log(x: np.ndarray) -> np.ndarray:
    out = np.full(x.shape, _LOG_ZERO)
    pos = x > 0.0
    out[pos] = np.log(x[pos])
    return out


def _theta_magnitudes(q: SpinQuantum, theta: np.ndarray) -> np.ndarray:
    """Real factors sin^k(theta/2) cos^(2j-k)(theta/2) sqrt(C(2j,k)), shape (T, N)."""
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    two_j = q.two_j
    k = np.arange(two_j + 1)
    ls = _safe_log(np.sin(theta / 2.0))
    lc = _safe_log(np.cos(theta / 2.0))
    return np.exp(ls[:, None] * k + lc[:, None] * (two_j - k) + _half_log_binom(two_j))


def _phi_phases_conj(q: SpinQuantum, phi: np.ndarray) -> np.ndarray:
    """exp(-i k phi) for k = 0..2j, shape (P, N); conjugate of the amplitude phase."""
    phi = np.atleast_1d(np.asarray(phi, dtype=float))
    k = np.arange(q.two_j + 1)
    return np.exp(-1j * phi[:, None] * k)


def coherent_amplitudes(q: SpinQuantum, theta, phi) -> np.ndarray:
    """Amplitudes of |theta,phi> in the |j,m> basis for broadcastable angle arrays.

    Component on |j,m> (index k = j - m) is
    sin^k(theta/2) cos^(2j-k)(theta/2) exp(i k phi) sqrt(C(2j, k)).
    Returns shape broadcast(theta, phi) + (N,).
    """
    theta_b, phi_b = np.broadcast_arrays(np.asarray(theta, float), np.asarray(phi, float))
    shape = theta_b.shape
    th = np.atleast_1d(theta_b).ravel()
    ph = np.atleast_1d(phi_b).ravel()
    amps = _theta_magnitudes(q, th) * np.conj(_phi_phases_conj(q, ph))
    return amps.reshape(shape + (q.dim,))


def coherent_state(q: SpinQuantum, p: SphericalPoint) -> PureState:
    """SU(2) coherent state localized at p (rotated reference state |j,j>)."""
    return PureState(coherent_amplitudes(q, p.theta, p.phi))


def husimi_value(state: PureState | DensityMatrix, p: SphericalPoint) -> float:
    """Husimi value at p: |<psi|theta,phi>|^2 for pure states, <alpha|rho|alpha> for mixed."""
    a = coherent_amplitudes(state.q, p.theta, p.phi)
    if isinstance(state, PureState):
        return float(abs(np.vdot(state.amplitudes, a)) ** 2)
    # tiny negative values from rounding are clipped; rho is validated PSD
    return max(float(np.vdot(a, state.rho @ a).real), 0.0)


def husimi_product_grid(
    state: PureState | DensityMatrix, theta: np.ndarray, phi: np.ndarray
) -> np.ndarray:
    """Husimi values on the tensor grid theta x phi, shape (len(theta), len(phi)).

    Exploits the separable amplitude structure, so cost is O(T P N) with small
    constants instead of building every coherent state from scratch.
    """
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    phi = np.atleast_1d(np.asarray(phi, dtype=float))
    mag = _theta_magnitudes(state.q, theta)
    phc = _phi_phases_conj(state.q, phi)
    if isinstance(state, PureState):
        # <alpha|psi> = sum_k mag[t,k] conj(phase)[p,k] psi_k
        z = (mag[:, None, :] * phc[None, :, :]) @ state.amplitudes
        return (z.real**2 + z.imag**2)
    rho = state.rho
    a_conj = mag[:, None, :] * phc[None, :, :]
    h = np.einsum("tpk,kl,tpl->tp", a_conj, rho, a_conj.conj()).real
    return np.maximum(h, 0.0)


def jz_eigenstate(q: SpinQuantum, m) -> PureState:
    """Basis state |j,m>; m may be float or Fraction-like with 2m integer."""
    two_m = _validated_two_m(q, m)
    v = np.zeros(q.dim, dtype=complex)
    v[(q.two_j - two_m) // 2] = 1.0
    return PureState(v)


def _validated_two_m(q: SpinQuantum, m) -> int:
    two_m_f = 2.0 * float(m)
    two_m = round(two_m_f)
    if abs(two_m_f - two_m) > 1e-9:
        raise ValueError(f"m = {m!r} is not a half-integer")
    if (two_m - q.two_j) % 2 != 0:
        raise ValueError(f"m = {m!r} has wrong parity for j = {q.j}")
    if abs(two_m) > q.two_j:
        raise ValueError(f"|m| = {abs(two_m) / 2} exceeds j = {q.j}")
    return two_m


def unitary_exp(h: np.ndarray, scale: float = 1.0) -> np.ndarray:
    """exp(-1j * scale * h) for Hermitian h, via eigendecomposition.

    Unitary to rounding for any real scale (no series truncation).
    """
    w, v = np.linalg.eigh(h)
    return (v * np.exp(-1j * scale * w)) @ v.conj().T


def rotation_operator(q: SpinQuantum, axis, angle: float) -> np.ndarray:
    """Rotation exp(-i angle n.J) about the unit(-normalized) axis n."""
    n = np.asarray(axis, dtype=float)
    nrm = np.linalg.norm(n)
    if n.shape != (3,) or nrm == 0.0:
        raise ValueError("axis must be a nonzero 3-vector")
    n = n / nrm
    ops = build_angular_momentum(q)
    return unitary_exp(n[0] * ops.jx + n[1] * ops.jy + n[2] * ops.jz, angle)
