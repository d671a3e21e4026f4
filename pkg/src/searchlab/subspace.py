"""Two-level algebra on span{|w>, |r>}.

States are amplitude pairs ``(a_w, a_r)``, operators are 2x2 Hermitian
matrices in the ``{|w>, |r>}`` basis, and propagation is either exact
(Pauli decomposition of the matrix exponential) or fixed-step RK4.

Bloch convention: ``|w>`` is the North Pole, ``|r>`` the South Pole, and::

    x = 2 Re(a_w conj(a_r)),  y = 2 Im(a_w conj(a_r)),  z = |a_w|^2 - |a_r|^2
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterator, NamedTuple, Optional

import numpy as np

from . import kernels
from .errors import InvalidStateError, NormDriftError, NotHermitianError

NORM_TOL = 1e-12
DRIFT_FLAG = 1e-8
DRIFT_FAIL = 1e-6


@dataclass(frozen=True)
class SubspaceState:
    """Amplitudes on ``|w>`` and ``|r>``."""

    a_w: complex
    a_r: complex

    @property
    def vec(self) -> np.ndarray:
        return np.array([self.a_w, self.a_r], dtype=np.complex128)

    @property
    def norm(self) -> float:
        return math.hypot(abs(self.a_w), abs(self.a_r))

    @property
    def success_prob(self) -> float:
        """``|<w|psi>|^2``."""
        return abs(self.a_w) ** 2

    def phase_fixed(self) -> "SubspaceState":
        return make_state(self.a_w, self.a_r)

    @classmethod
    def from_vec(cls, v) -> "SubspaceState":
        return cls(complex(v[0]), complex(v[1]))


W_STATE = SubspaceState(1 + 0j, 0j)
R_STATE = SubspaceState(0j, 1 + 0j)


def make_state(a_w: complex, a_r: complex) -> SubspaceState:
    """Normalize and fix the global phase.

    The phase is chosen so that ``a_r`` is real and non-negative; when
    ``a_r == 0`` it is ``a_w`` that is made real and non-negative.

    Raises
    ------
    InvalidStateError
        For the zero vector or non-finite input.
    """
    a_w, a_r = complex(a_w), complex(a_r)
    n = math.hypot(abs(a_w), abs(a_r))
    if not math.isfinite(n) or n == 0.0:
        raise InvalidStateError(f"cannot normalize ({a_w}, {a_r})")
    if a_r != 0:
        phase = a_r / abs(a_r)
        return SubspaceState(a_w / phase / n, complex(abs(a_r) / n))
    return SubspaceState(complex(abs(a_w) / n), 0j)


def uniform_state(N: int) -> SubspaceState:
    """The equal superposition ``|s>`` over N basis states."""
    return SubspaceState(complex(1.0 / math.sqrt(N)), complex(math.sqrt((N - 1) / N)))


class BlochPoint(NamedTuple):
    x: float
    y: float
    z: float

    def as_array(self) -> np.ndarray:
        return np.array(self, dtype=float)


def bloch_coords(state: SubspaceState) -> BlochPoint:
    c = state.a_w * state.a_r.conjugate()
    z = abs(state.a_w) ** 2 - abs(state.a_r) ** 2
    return BlochPoint(2.0 * c.real, 2.0 * c.imag, z)


def bloch_array(amps) -> np.ndarray:
    """Vectorized :func:`bloch_coords` for an (M, 2) amplitude array."""
    amps = np.asarray(amps, dtype=np.complex128)
    c = amps[:, 0] * np.conj(amps[:, 1])
    z = np.abs(amps[:, 0]) ** 2 - np.abs(amps[:, 1]) ** 2
    return np.column_stack([2.0 * c.real, 2.0 * c.imag, z])


def fidelity(a: SubspaceState, b: SubspaceState) -> float:
    """``|<a|b>|^2``, clipped to [0, 1]."""
    ov = a.a_w.conjugate() * b.a_w + a.a_r.conjugate() * b.a_r
    return min(1.0, abs(ov) ** 2)


@dataclass(frozen=True)
class Hermitian2:
    """2x2 Hermitian operator in the ``{|w>, |r>}`` basis."""

    h11: complex
    h12: complex
    h21: complex
    h22: complex

    def __post_init__(self):
        entries = [complex(self.h11), complex(self.h12), complex(self.h21), complex(self.h22)]
        if not all(math.isfinite(abs(e)) for e in entries):
            raise NotHermitianError("non-finite entry")
        tol = 1e-12 * max(1.0, max(abs(e) for e in entries))
        h11, h12, h21, h22 = entries
        if abs(h11.imag) > tol or abs(h22.imag) > tol or abs(h21 - h12.conjugate()) > tol:
            raise NotHermitianError(f"not Hermitian: {entries}")
        object.__setattr__(self, "h11", complex(h11.real, 0.0))
        object.__setattr__(self, "h22", complex(h22.real, 0.0))
        object.__setattr__(self, "h12", h12)
        object.__setattr__(self, "h21", h12.conjugate())

    @classmethod
    def from_matrix(cls, m) -> "Hermitian2":
        m = np.asarray(m, dtype=np.complex128)
        if m.shape != (2, 2):
            raise ValueError(f"expected a 2x2 matrix, got shape {m.shape}")
        return cls(m[0, 0], m[0, 1], m[1, 0], m[1, 1])

    @classmethod
    def zero(cls) -> "Hermitian2":
        return cls(0j, 0j, 0j, 0j)

    @classmethod
    def identity(cls) -> "Hermitian2":
        return cls(1 + 0j, 0j, 0j, 1 + 0j)

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.h11, self.h12], [self.h21, self.h22]], dtype=np.complex128)

    def __add__(self, other: "Hermitian2") -> "Hermitian2":
        return Hermitian2(self.h11 + other.h11, self.h12 + other.h12,
                          self.h21 + other.h21, self.h22 + other.h22)

    def __sub__(self, other: "Hermitian2") -> "Hermitian2":
        return Hermitian2(self.h11 - other.h11, self.h12 - other.h12,
                          self.h21 - other.h21, self.h22 - other.h22)

    def __mul__(self, c: float) -> "Hermitian2":
        c = float(c)
        return Hermitian2(c * self.h11, c * self.h12, c * self.h21, c * self.h22)

    __rmul__ = __mul__

    def apply(self, state: SubspaceState) -> SubspaceState:
        return SubspaceState(self.h11 * state.a_w + self.h12 * state.a_r,
                             self.h21 * state.a_w + self.h22 * state.a_r)

    def pauli(self):
        """Return ``(a, bx, by, bz)`` with ``H = a I + bx X + by Y + bz Z``."""
        a = 0.5 * (self.h11.real + self.h22.real)
        bz = 0.5 * (self.h11.real - self.h22.real)
        return a, self.h12.real, -self.h12.imag, bz

    def norm(self) -> float:
        """Operator (spectral) norm, ``max |lambda|``."""
        a, bx, by, bz = self.pauli()
        return abs(a) + math.sqrt(bx * bx + by * by + bz * bz)

    def max_abs_diff(self, other: "Hermitian2") -> float:
        return float(np.max(np.abs(self.matrix - other.matrix)))


@dataclass(frozen=True)
class EigenDecomposition2:
    lambda0: float
    lambda1: float
    v0: SubspaceState
    v1: SubspaceState
    degenerate: bool = False

    @property
    def gap(self) -> float:
        return self.lambda1 - self.lambda0


def eigen2(H: Hermitian2) -> EigenDecomposition2:
    """Closed-form eigendecomposition, ``lambda0 <= lambda1``.

    Each eigenvector is built from whichever row of ``H - lambda I`` avoids
    cancellation. A (numerically) degenerate spectrum returns ``|w>, |r>``
    with ``degenerate=True``.
    """
    a, bx, by, bz = H.pauli()
    h12 = H.h12
    r = math.sqrt(bz * bz + abs(h12) ** 2)
    if r <= 1e-14 * abs(a) or r == 0.0:
        return EigenDecomposition2(a - r, a + r, W_STATE, R_STATE, degenerate=True)
    if bz >= 0:
        v1 = (complex(bz + r), h12.conjugate())
    else:
        v1 = (h12, complex(r - bz))
    v0 = (-v1[1].conjugate(), v1[0].conjugate())
    return EigenDecomposition2(a - r, a + r, make_state(*v0), make_state(*v1))


def evolve_const(H: Hermitian2, psi: SubspaceState, dt: float) -> SubspaceState:
    """Exact ``exp(-i H dt) psi`` via ``cos(r dt) I - i sin(r dt) (H - aI)/r``."""
    a, bx, by, bz = H.pauli()
    r = math.sqrt(bx * bx + by * by + bz * bz)
    x = r * dt
    c = math.cos(x)
    sr = dt * (math.sin(x) / x if x != 0.0 else 1.0)  # sin(r dt)/r
    ph = complex(math.cos(a * dt), -math.sin(a * dt))
    k11 = H.h11 - a
    k22 = H.h22 - a
    aw = c * psi.a_w - 1j * sr * (k11 * psi.a_w + H.h12 * psi.a_r)
    ar = c * psi.a_r - 1j * sr * (H.h21 * psi.a_w + k22 * psi.a_r)
    return SubspaceState(ph * aw, ph * ar)


def propagator(H: Hermitian2, dt: float) -> np.ndarray:
    """The 2x2 unitary ``exp(-i H dt)``."""
    cols = [evolve_const(H, W_STATE, dt).vec, evolve_const(H, R_STATE, dt).vec]
    return np.column_stack(cols)


class Sample(NamedTuple):
    t: float
    s: Optional[float]
    state: SubspaceState
    bloch: BlochPoint


@dataclass
class Trajectory:
    """Time-ordered samples of a two-level evolution.

    ``amplitudes`` has shape (M, 2); ``s`` is ``None`` for evolutions that
    are not parameterized by a schedule.
    """

    t: np.ndarray
    amplitudes: np.ndarray
    s: Optional[np.ndarray] = None
    max_norm_drift: float = 0.0
    label: str = ""
    bloch: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        self.t = np.asarray(self.t, dtype=float)
        self.amplitudes = np.asarray(self.amplitudes, dtype=np.complex128)
        if self.s is not None:
            self.s = np.asarray(self.s, dtype=float)
        if self.amplitudes.shape != (len(self.t), 2):
            raise ValueError("amplitudes must have shape (len(t), 2)")
        if len(self.t) > 1 and not np.all(np.diff(self.t) > 0):
            raise ValueError("sample times must be strictly increasing")
        self.bloch = bloch_array(self.amplitudes)

    def __len__(self):
        return len(self.t)

    @property
    def flagged(self) -> bool:
        """True when the integrator's norm drift exceeded the flag threshold."""
        return self.max_norm_drift > DRIFT_FLAG

    @property
    def final_state(self) -> SubspaceState:
        return SubspaceState.from_vec(self.amplitudes[-1])

    @property
    def success_prob_final(self) -> float:
        return float(abs(self.amplitudes[-1, 0]) ** 2)

    @property
    def path_length(self) -> float:
        return path_length(self)

    def state(self, k: int) -> SubspaceState:
        return SubspaceState.from_vec(self.amplitudes[k])

    @property
    def samples(self) -> Iterator[Sample]:
        for k in range(len(self.t)):
            s = None if self.s is None else float(self.s[k])
            yield Sample(float(self.t[k]), s, self.state(k), BlochPoint(*self.bloch[k]))


def trajectory_from_states(t, states, s=None, label="") -> Trajectory:
    amps = np.array([[st.a_w, st.a_r] for st in states], dtype=np.complex128)
    return Trajectory(t, amps, s=s, label=label)


def path_length(traj) -> float:
    """Accumulated great-circle angle between consecutive Bloch points.

    Accepts a :class:`Trajectory` or an (M, 3) array of Bloch vectors.
    """
    pts = traj.bloch if hasattr(traj, "bloch") else np.asarray(traj, dtype=float)
    if len(pts) < 2:
        raise ValueError("path length needs at least 2 samples")
    dots = np.einsum("ij,ij->i", pts[:-1], pts[1:])
    return float(np.sum(np.arccos(np.clip(dots, -1.0, 1.0))))


def _check_drift(drift: float):
    if drift > DRIFT_FAIL:
        raise NormDriftError(f"norm drift {drift:.3e} exceeds {DRIFT_FAIL:g}; use more steps")


def integrate_sampled(h_half, psi0: SubspaceState, t0: float, t1: float, s_half=None,
                      label="") -> Trajectory:
    """RK4 over a Hamiltonian pre-sampled on the half-step grid.

    ``h_half`` has shape (2*steps + 1, 2, 2): entry ``j`` is ``H`` at
    ``t0 + j*dt/2``. ``s_half``, if given, is the matching schedule and is
    recorded at whole steps.
    """
    h_half = np.asarray(h_half, dtype=np.complex128)
    steps = (h_half.shape[0] - 1) // 2
    dt = (t1 - t0) / steps
    states, drift = kernels.rk4_sampled(h_half, psi0.vec, dt)
    _check_drift(drift)
    t = t0 + dt * np.arange(steps + 1)
    t[-1] = t1
    s = None if s_half is None else np.asarray(s_half)[::2]
    return Trajectory(t, states, s=s, max_norm_drift=float(drift), label=label)


def evolve_timedep(H_of_t: Callable, psi0: SubspaceState, t0: float, t1: float, steps: int,
                   *, vectorized: bool = False, s_of_t: Optional[Callable] = None) -> Trajectory:
    """Integrate ``i d/dt psi = H(t) psi`` with classical fixed-step RK4.

    Parameters
    ----------
    H_of_t : callable
        ``H_of_t(t) -> Hermitian2``. With ``vectorized=True`` it instead
        takes an array of times and returns an (M, 2, 2) array.
    psi0 : SubspaceState
    t0, t1 : float
        Integration interval, ``t1 > t0``.
    steps : int
        Number of RK4 steps; one sample is recorded per step.
    s_of_t : callable, optional
        Schedule to record alongside each sample.

    Returns
    -------
    Trajectory
        ``flagged`` is set when the norm drifted beyond 1e-8.

    Raises
    ------
    NormDriftError
        If the norm drifts by more than 1e-6.
    """
    if steps < 1:
        raise ValueError("steps must be >= 1")
    if not t1 > t0:
        raise ValueError("need t1 > t0")
    times = t0 + (t1 - t0) * np.arange(2 * steps + 1) / (2 * steps)
    if vectorized:
        h = np.asarray(H_of_t(times), dtype=np.complex128)
    else:
        h = np.array([H_of_t(float(tt)).matrix for tt in times])
    s_half = None if s_of_t is None else np.array([s_of_t(float(tt)) for tt in times])
    return integrate_sampled(h, psi0, t0, t1, s_half=s_half)
