"""The four search evolutions in the {|w>, |r>} subspace.

* Grover's discrete iterate ``U = R_{s-perp} R_w``.
* The complete-graph quantum walk ``H = -gamma N |s><s| - |w><w|``.
* The local adiabatic algorithm ``H(s) = (1-s)(I - |s><s|) + s(I - |w><w|)``
  driven by the arctan schedule.
* The chiral star-graph walk ``H_F = (i/sqrt(N)) (|w><s| - |s><w|)``.

Scalar inputs give scalar outputs; the gap and schedule functions also
accept numpy arrays.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DomainError, NonCanonicalWarning
from .subspace import (
    Hermitian2,
    SubspaceState,
    Trajectory,
    W_STATE,
    evolve_const,
    integrate_sampled,
    make_state,
    trajectory_from_states,
    uniform_state,
)

SCHEDULE_RC = "rc-arctan"
SCHEDULE_SIN2 = "sin2"
BISECTION_STEPS = 60
DEFAULT_DT = 0.01


@dataclass(frozen=True)
class SearchInstance:
    """Problem size ``N``, 1-based marked index ``w``, jumping rate and schedule slack.

    ``gamma`` defaults to ``1/N`` and ``eps`` to 1.
    """

    N: int
    w: int = 1
    gamma: Optional[float] = None
    eps: float = 1.0

    def __post_init__(self):
        if int(self.N) != self.N or self.N < 2:
            raise ValueError(f"N must be an integer >= 2, got {self.N}")
        object.__setattr__(self, "N", int(self.N))
        if not 1 <= self.w <= self.N:
            raise ValueError(f"marked index w={self.w} outside [1, {self.N}]")
        if self.gamma is None:
            object.__setattr__(self, "gamma", 1.0 / self.N)
        if not self.gamma > 0:
            raise ValueError("gamma must be > 0")
        if not self.eps > 0:
            raise ValueError("eps must be > 0")

    @property
    def canonical(self) -> bool:
        """True when ``gamma == 1/N``, the search-optimal jumping rate."""
        return math.isclose(self.gamma, 1.0 / self.N, rel_tol=1e-12)

    @property
    def k(self) -> float:
        return math.sqrt(self.N - 1)

    def with_eps(self, eps: float) -> "SearchInstance":
        return SearchInstance(self.N, self.w, self.gamma, eps)


@dataclass(frozen=True)
class SchedulePoint:
    s: float
    t: float
    schedule_id: str


def initial_state(inst: SearchInstance) -> SubspaceState:
    return uniform_state(inst.N)


# -- Grover -------------------------------------------------------------------

def grover_operator(inst: SearchInstance) -> np.ndarray:
    """``U = R_{s-perp} R_w`` as a real 2x2 matrix."""
    sv = initial_state(inst).vec.real
    r_w = np.diag([-1.0, 1.0])
    r_sperp = np.eye(2) - 2.0 * np.outer(sv, sv)
    return r_sperp @ r_w


def grover_state(k: int, inst: SearchInstance) -> SubspaceState:
    """State after ``k`` applications of ``U`` to ``|s>``; amplitudes stay real."""
    if k < 0:
        raise ValueError("k must be >= 0")
    u = grover_operator(inst)
    v = initial_state(inst).vec.real
    for _ in range(int(k)):
        v = u @ v
    return SubspaceState(complex(v[0]), complex(v[1]))


def grover_iterations(inst: SearchInstance) -> int:
    """``round(pi sqrt(N) / 4)``."""
    return int(round(math.pi * math.sqrt(inst.N) / 4))


def grover_trajectory(inst: SearchInstance, iterations: Optional[int] = None) -> Trajectory:
    """Iterates ``0..K``; the time column is the iterate count."""
    K = grover_iterations(inst) if iterations is None else iterations
    states = [grover_state(0, inst)]
    u = grover_operator(inst)
    v = states[0].vec.real
    for _ in range(K):
        v = u @ v
        states.append(SubspaceState(complex(v[0]), complex(v[1])))
    return trajectory_from_states(np.arange(K + 1, dtype=float), states, label="grover")


# -- Complete-graph walk ------------------------------------------------------

def fg_hamiltonian(inst: SearchInstance) -> Hermitian2:
    """``-gamma N |s><s| - |w><w|`` in the ``{|w>, |r>}`` basis.

    For ``gamma = 1/N`` this is ``(-1/N) [[N+1, sqrt(N-1)], [sqrt(N-1), N-1]]``.
    Other jumping rates are allowed but raise :class:`NonCanonicalWarning`.
    """
    N, g = inst.N, inst.gamma
    if not inst.canonical:
        warnings.warn(f"gamma={g} differs from 1/N={1.0 / N}", NonCanonicalWarning, stacklevel=2)
    k = inst.k
    if inst.canonical:
        return Hermitian2(-(N + 1) / N, -k / N, -k / N, -(N - 1) / N)
    return Hermitian2(-g - 1.0, -g * k, -g * k, -g * (N - 1))


def fg_success_time(inst: SearchInstance) -> float:
    return math.pi * math.sqrt(inst.N) / 2


def fg_state(t: float, inst: SearchInstance) -> SubspaceState:
    """Closed-form walk state with the ``e^{it}`` prefactor dropped, phase-fixed."""
    if t < 0:
        raise DomainError("t must be >= 0")
    if not inst.canonical:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", NonCanonicalWarning)
            H = fg_hamiltonian(inst)
        return evolve_const(H, initial_state(inst), t).phase_fixed()
    N = inst.N
    x = t / math.sqrt(N)
    c, sn = math.cos(x), math.sin(x)
    return make_state(complex(c / math.sqrt(N), sn), math.sqrt((N - 1) / N) * c)


def fg_trajectory(inst: SearchInstance, samples: int, t_end: Optional[float] = None) -> Trajectory:
    T = fg_success_time(inst) if t_end is None else t_end
    ts = np.linspace(0.0, T, samples)
    return trajectory_from_states(ts, [fg_state(t, inst) for t in ts], label="fg")


# -- Local adiabatic search ---------------------------------------------------

def _check_s(s):
    arr = np.asarray(s, dtype=float)
    if np.any(~np.isfinite(arr)) or np.any(arr < 0.0) or np.any(arr > 1.0):
        raise DomainError(f"schedule value outside [0, 1]: {s}")


def _out(x, like):
    return float(x) if np.ndim(like) == 0 else x


def rc_hamiltonian(s: float, inst: SearchInstance) -> Hermitian2:
    """Interpolating search Hamiltonian restricted to ``{|w>, |r>}``."""
    _check_s(s)
    N = inst.N
    a = (1.0 - s) * (N - 1) / N
    b = -(1.0 - s) * inst.k / N
    return Hermitian2(a, b, b, 1.0 - a)


def rc_matrices(s, inst: SearchInstance) -> np.ndarray:
    """Stacked ``rc_hamiltonian`` for an array of schedule values, shape (M, 2, 2)."""
    s = np.asarray(s, dtype=float)
    N = inst.N
    a = (1.0 - s) * (N - 1) / N
    b = -(1.0 - s) * inst.k / N
    h = np.empty(s.shape + (2, 2), dtype=np.complex128)
    h[..., 0, 0] = a
    h[..., 0, 1] = b
    h[..., 1, 0] = b
    h[..., 1, 1] = 1.0 - a
    return h


def rc_gap(s, inst: SearchInstance):
    """``g(s) = sqrt((N - 4(N-1) s (1-s)) / N)``."""
    _check_s(s)
    N = inst.N
    s_arr = np.asarray(s, dtype=float)
    g = np.sqrt((N - 4.0 * (N - 1) * s_arr * (1.0 - s_arr)) / N)
    return _out(g, s)


def rc_ground_state(s: float, inst: SearchInstance) -> SubspaceState:
    """Normalized instantaneous ground state, real with ``a_w >= 0``.

    Uses the eigenvector ratio ``(2(1-s) - N(1-2s) + N g) / (2 sqrt(N-1)(1-s))``
    scaled by its denominator, so ``s = 1`` gives ``|w>`` without a 0/0.
    For ``s < 1/2`` the reciprocal (excited-branch) form is used to avoid
    cancellation in the numerator.
    """
    _check_s(s)
    if s == 1.0:
        return W_STATE
    num, den = _rc_ground_ratio(float(s), inst)
    n = math.hypot(num, den)
    return SubspaceState(complex(num / n), complex(den / n))


def _rc_ground_ratio(s: float, inst: SearchInstance):
    """``(num, den)`` with ``num/den`` the ground-state ``|w>`` coefficient."""
    N, k = inst.N, inst.k
    g = math.sqrt((N - 4.0 * (N - 1) * s * (1.0 - s)) / N)
    scaled = 2.0 * k * (1.0 - s)
    if s >= 0.5:
        return 2.0 * (1.0 - s) + N * (2.0 * s - 1.0) + N * g, scaled
    # Ground and excited coefficients multiply to -1.
    return scaled, N * (1.0 - 2.0 * s) + N * g - 2.0 * (1.0 - s)


def rc_runtime(inst: SearchInstance) -> float:
    """``T = N / (eps sqrt(N-1)) * arctan(sqrt(N-1))``."""
    k = inst.k
    return inst.N / (inst.eps * k) * math.atan(k)


def rc_schedule_t(s, inst: SearchInstance):
    """Time at which the arctan schedule reaches ``s``."""
    _check_s(s)
    k, N = inst.k, inst.N
    s_arr = np.asarray(s, dtype=float)
    t = N / (2.0 * inst.eps * k) * (np.arctan(k * (2.0 * s_arr - 1.0)) + math.atan(k))
    return _out(t, s)


def _check_t(t, T):
    arr = np.asarray(t, dtype=float)
    slack = 1e-12 * T
    if np.any(~np.isfinite(arr)) or np.any(arr < -slack) or np.any(arr > T + slack):
        raise DomainError(f"time outside [0, T={T}]: {t}")
    return np.clip(arr, 0.0, T)


def rc_schedule_s(t, inst: SearchInstance):
    """Invert the schedule by bisection on the monotone map ``s -> t(s)``."""
    T = rc_runtime(inst)
    tt = _check_t(t, T)
    lo = np.zeros_like(tt)
    hi = np.ones_like(tt)
    for _ in range(BISECTION_STEPS):
        mid = 0.5 * (lo + hi)
        below = rc_schedule_t(mid, inst) < tt
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    s = 0.5 * (lo + hi)
    s = np.where(tt == 0.0, 0.0, np.where(tt == T, 1.0, s))
    return _out(s, t)


def rc_schedule_s_closed(t, inst: SearchInstance):
    """Closed-form inverse ``s = (1 + tan(2 eps k t / N - arctan k) / k) / 2``.

    The tangent argument stays inside ``(-pi/2, pi/2)`` for ``t`` in
    ``[0, T]``, so no branch correction is needed in this form.
    """
    T = rc_runtime(inst)
    tt = _check_t(t, T)
    k = inst.k
    s = 0.5 * (1.0 + np.tan(2.0 * inst.eps * k * tt / inst.N - math.atan(k)) / k)
    return _out(np.clip(s, 0.0, 1.0), t)


def rc_schedule_point(t: float, inst: SearchInstance) -> SchedulePoint:
    return SchedulePoint(rc_schedule_s(t, inst), float(t), SCHEDULE_RC)


def default_steps(T: float, dt: float = DEFAULT_DT, multiple_of: int = 1) -> int:
    """Smallest multiple of ``multiple_of`` giving a step no larger than ``dt``."""
    blocks = max(1, math.ceil(T / (dt * multiple_of)))
    return blocks * multiple_of


def rc_evolve(inst: SearchInstance, steps: Optional[int] = None) -> Trajectory:
    """Integrate the adiabatic search from ``|s>`` over ``[0, T]``.

    The Hamiltonian ``H(s(t))`` is sampled on the RK4 half-step grid with the
    bisection inverse of the schedule. ``steps`` defaults to ``dt <= 0.01``.
    """
    T = rc_runtime(inst)
    steps = default_steps(T) if steps is None else int(steps)
    times = T * np.arange(2 * steps + 1) / (2 * steps)
    s_half = rc_schedule_s(times, inst)
    traj = integrate_sampled(rc_matrices(s_half, inst), initial_state(inst), 0.0, T,
                             s_half=s_half, label="rc")
    return traj


def adiabatic_error(final: SubspaceState) -> float:
    """``sqrt(1 - |<w|final>|^2)`` for a normalized final state."""
    return math.sqrt(max(0.0, 1.0 - abs(final.a_w) ** 2))


def rc_ground_trajectory(inst: SearchInstance, samples: int) -> Trajectory:
    """Instantaneous ground states sampled uniformly in ``s``."""
    ss = np.linspace(0.0, 1.0, samples)
    ts = rc_schedule_t(ss, inst)
    return trajectory_from_states(ts, [rc_ground_state(float(s), inst) for s in ss], s=ss,
                                  label="rc-ground")


# -- Chiral star-graph walk ---------------------------------------------------

def fenner_hamiltonian(inst: SearchInstance) -> Hermitian2:
    """``(i/N) [[0, sqrt(N-1)], [-sqrt(N-1), 0]]``."""
    k, N = inst.k, inst.N
    return Hermitian2(0j, 1j * k / N, -1j * k / N, 0j)


def fenner_rate(inst: SearchInstance) -> float:
    """State-space rotation rate ``sqrt(N-1)/N``."""
    return inst.k / inst.N


def fenner_state(t: float, inst: SearchInstance) -> SubspaceState:
    """Rotation of ``|s>`` by ``sqrt(N-1) t / N``; amplitudes are real."""
    if t < 0:
        raise DomainError("t must be >= 0")
    N, k = inst.N, inst.k
    x = k * t / N
    c, sn = math.cos(x), math.sin(x)
    rn = math.sqrt(N)
    return SubspaceState(complex(c / rn + k * sn / rn), complex(k * c / rn - sn / rn))


def fenner_success_time(inst: SearchInstance) -> float:
    """Exact time of unit success probability, ``(N/sqrt(N-1)) (pi/2 - arcsin(1/sqrt(N)))``."""
    return inst.N / inst.k * (0.5 * math.pi - math.asin(1.0 / math.sqrt(inst.N)))


@dataclass(frozen=True)
class GroverInterval:
    """Evolution times under ``H_F`` that reproduce one Grover iterate.

    ``up_to_phase``: ``exp(-i H_F dt)`` equals ``U`` up to the global sign -1.
    ``exact``: ``exp(-i H_F dt)`` equals ``U`` entrywise.
    """

    up_to_phase: float
    exact: float


def fenner_grover_interval(inst: SearchInstance) -> GroverInterval:
    theta = 2.0 * math.asin(1.0 / math.sqrt(inst.N))
    rate = fenner_rate(inst)
    return GroverInterval(theta / rate, (theta + math.pi) / rate)


def fenner_trajectory(inst: SearchInstance, samples: int, t_end: Optional[float] = None,
                      times=None) -> Trajectory:
    if times is None:
        T = fenner_success_time(inst) if t_end is None else t_end
        times = np.linspace(0.0, T, samples)
    return trajectory_from_states(times, [fenner_state(float(t), inst) for t in times],
                                  label="fenner")
