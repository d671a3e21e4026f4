"""Hamiltonians synthesized from a prescribed ground-state path.

Given a normalized path ``psi0(t) = (alpha, beta)`` and a pair of energies,
``H = lambda0 P0 + lambda1 P1`` with ``P1`` projecting on the orthogonal
state ``(conj(beta), -conj(alpha))``. Taking the complete-graph walk state
as the path, with symmetric energies, gives the walk-following adiabatic
Hamiltonian::

    H(s) = lambda1(s) [(1-s) H0 + s Hf + sqrt(s(1-s)) He]
    lambda1(s) = (s(1-s) / (4 eps^2 N))^(1/4),   s(t) = sin^2(t / sqrt(N))
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional, Sequence, Union

import numpy as np

from .algorithms import (
    SCHEDULE_SIN2,
    SchedulePoint,
    SearchInstance,
    _check_s,
    fenner_hamiltonian,
    fg_hamiltonian,
    fg_state,
    fg_success_time,
    rc_hamiltonian,
)
from .errors import DegenerateGapWarning, DomainError
from .subspace import Hermitian2, SubspaceState, eigen2, trajectory_from_states

REALITY_TOL = 1e-12


@dataclass(frozen=True)
class SpectralGaugeChoice:
    """Energies assigned to the ground and excited projectors.

    In symmetric mode only ``lambda1`` is given and ``lambda0 = -lambda1``.
    Both are callables of the same parameter the path is evaluated at.
    """

    lambda1: Callable[[float], float]
    lambda0: Optional[Callable[[float], float]] = None

    @classmethod
    def symmetric(cls, lambda1) -> "SpectralGaugeChoice":
        if not callable(lambda1):
            value = float(lambda1)
            lambda1 = lambda _p: value  # noqa: E731
        return cls(lambda1)

    @classmethod
    def custom(cls, lambda0, lambda1) -> "SpectralGaugeChoice":
        f0 = lambda0 if callable(lambda0) else (lambda _p, v=float(lambda0): v)
        f1 = lambda1 if callable(lambda1) else (lambda _p, v=float(lambda1): v)
        return cls(f1, f0)

    @property
    def mode(self) -> str:
        return "symmetric" if self.lambda0 is None else "custom"

    def energies(self, p: float):
        l1 = float(self.lambda1(p))
        l0 = -l1 if self.lambda0 is None else float(self.lambda0(p))
        if l1 < l0:
            raise ValueError(f"gauge has lambda1={l1} < lambda0={l0}")
        return l0, l1


def synth_from_path(psi0_of_t: Callable[[float], SubspaceState], gauge: SpectralGaugeChoice,
                    t: float) -> Hermitian2:
    """Hermitian operator whose ground state at ``t`` is ``psi0_of_t(t)``.

    Equal energies leave no gap: a :class:`DegenerateGapWarning` is issued and
    the result is a multiple of the identity.
    """
    psi = psi0_of_t(t)
    n = psi.norm
    alpha, beta = psi.a_w / n, psi.a_r / n
    l0, l1 = gauge.energies(t)
    if l0 == l1:
        warnings.warn("lambda0 == lambda1 removes the energy gap", DegenerateGapWarning,
                      stacklevel=2)
    ex_w, ex_r = beta.conjugate(), -alpha.conjugate()
    h11 = l0 * abs(alpha) ** 2 + l1 * abs(ex_w) ** 2
    h22 = l0 * abs(beta) ** 2 + l1 * abs(ex_r) ** 2
    h12 = l0 * alpha * beta.conjugate() + l1 * ex_w * ex_r.conjugate()
    return Hermitian2(h11, h12, h12.conjugate(), h22)


@dataclass(frozen=True)
class ThreeTermDecomposition:
    """``H0``, ``Hf``, ``He`` and the ``lambda1(s)`` prefactor of the walk follower."""

    H0: Hermitian2
    Hf: Hermitian2
    He: Hermitian2
    inst: SearchInstance

    def prefactor(self, s: float) -> float:
        return walk_follower_lambda1(s, self.inst)

    def hamiltonian(self, s: float) -> Hermitian2:
        lam = self.prefactor(s)
        if lam == 0.0:
            return Hermitian2.zero()
        inner = (1.0 - s) * self.H0 + s * self.Hf + math.sqrt(s * (1.0 - s)) * self.He
        return lam * inner

    @staticmethod
    def schedule(t: float, N: int) -> float:
        return math.sin(t / math.sqrt(N)) ** 2


def walk_follower_terms(inst: SearchInstance) -> ThreeTermDecomposition:
    N, k = inst.N, inst.k
    H0 = Hermitian2((N - 2) / N, -2 * k / N, -2 * k / N, -(N - 2) / N)
    Hf = Hermitian2(-1.0, 0.0, 0.0, 1.0)
    e = 2.0 * math.sqrt((N - 1) / N)
    He = Hermitian2(0j, -1j * e, 1j * e, 0j)
    return ThreeTermDecomposition(H0, Hf, He, inst)


def walk_follower_lambda1(s: float, inst: SearchInstance) -> float:
    """``(s(1-s) / (4 eps^2 N))^(1/4)``; half the energy gap."""
    _check_s(s)
    return (s * (1.0 - s) / (4.0 * inst.eps ** 2 * inst.N)) ** 0.25


def walk_follower_hamiltonian(s: float, inst: SearchInstance) -> Hermitian2:
    _check_s(s)
    return walk_follower_terms(inst).hamiltonian(float(s))


def walk_follower_schedule(t: float, inst: SearchInstance) -> SchedulePoint:
    """``s = sin^2(t / sqrt(N))`` for ``t`` in ``[0, pi sqrt(N) / 2]``."""
    T = fg_success_time(inst)
    if not -1e-12 * T <= t <= T * (1 + 1e-12):
        raise DomainError(f"t={t} outside [0, {T}]")
    t = min(max(float(t), 0.0), T)
    return SchedulePoint(math.sin(t / math.sqrt(inst.N)) ** 2, t, SCHEDULE_SIN2)


def walk_follower_time(s: float, inst: SearchInstance) -> float:
    """Inverse of the sin^2 schedule."""
    _check_s(s)
    return math.sqrt(inst.N) * math.asin(math.sqrt(s))


def walk_follower_gap(s: float, inst: SearchInstance) -> float:
    """``g = sqrt(2 sqrt(s(1-s)) / (eps sqrt(N)))``, the gap implied by ``ds/dt = eps g^2``."""
    _check_s(s)
    return math.sqrt(2.0 * math.sqrt(s * (1.0 - s)) / (inst.eps * math.sqrt(inst.N)))


def walk_follower_ground_state(s: float, inst: SearchInstance) -> SubspaceState:
    """Ground state of the walk follower; at ``s`` in {0, 1} the path limit."""
    _check_s(s)
    if s in (0.0, 1.0):
        return fg_state(walk_follower_time(s, inst), inst)
    return eigen2(walk_follower_hamiltonian(s, inst)).v0


def walk_follower_trajectory(inst: SearchInstance, samples: int):
    ss = np.linspace(0.0, 1.0, samples)
    ts = np.array([walk_follower_time(float(s), inst) for s in ss])
    states = [walk_follower_ground_state(float(s), inst) for s in ss]
    return trajectory_from_states(ts, states, s=ss, label="walk-follower")


class Reality(str, Enum):
    REAL = "real"
    COMPLEX = "complex"


def reality_classifier(H: Hermitian2) -> Reality:
    m = H.matrix
    return Reality.REAL if np.all(np.abs(m.imag) < REALITY_TOL) else Reality.COMPLEX


def real_gauge_offdiag_imag(alpha: complex, beta: complex, lambda0: float, lambda1: float) -> float:
    """Imaginary part of the synthesized off-diagonal entry ``(lambda0 - lambda1) alpha beta``.

    ``beta`` is real on the walk path, so this vanishes for ``Im(alpha) != 0``
    only when ``lambda0 == lambda1``.
    """
    return ((lambda0 - lambda1) * alpha * beta.conjugate()).imag


# -- Norm scaling -------------------------------------------------------------

Family = Union[str, Callable[[float, SearchInstance], Hermitian2]]

# Eigenvalue of each family on the complement of span{|w>, |r>}.
COMPLEMENT_EIGENVALUE = {"walk-follower": 0.0, "rc": 1.0, "fenner": 0.0, "fg": 0.0}

FAMILIES = {
    "walk-follower": walk_follower_hamiltonian,
    "rc": rc_hamiltonian,
    "fenner": lambda s, inst: fenner_hamiltonian(inst),
    "fg": lambda s, inst: fg_hamiltonian(inst),
}


@dataclass(frozen=True)
class ScalingReport:
    family: str
    s: float
    sizes: tuple
    norms: tuple
    subspace_norms: tuple
    slope: float
    space: str


def norm_scaling_probe(family: Family, s: float, N_list: Sequence[int], *, eps: float = 1.0,
                       space: str = "full") -> ScalingReport:
    """Fit ``log ||H(s; N)||`` against ``log N``.

    Parameters
    ----------
    family : str or callable
        ``"walk-follower"``, ``"rc"``, ``"fenner"``, ``"fg"``, or a callable
        ``(s, inst) -> Hermitian2``.
    s : float
    N_list : sequence of int
        At least 3 sizes spanning at least two decades.
    space : {"full", "subspace"}
        ``"full"`` is the operator norm on the whole N-dimensional space,
        i.e. the larger of the 2x2 block norm and the magnitude of the
        family's eigenvalue on the complement of span{|w>, |r>}.
        ``"subspace"`` uses the 2x2 block alone. Callables are always
        treated as ``"subspace"``.
    """
    sizes = sorted(int(n) for n in N_list)
    if len(sizes) < 3 or sizes[-1] < 100 * sizes[0]:
        raise ValueError("need at least 3 sizes spanning at least two decades")
    if space not in ("full", "subspace"):
        raise ValueError(f"unknown space {space!r}")
    if callable(family):
        name, fn, comp = getattr(family, "__name__", "custom"), family, None
    else:
        name, fn = family, FAMILIES[family]
        comp = COMPLEMENT_EIGENVALUE[family]
    sub = [fn(s, SearchInstance(n, eps=eps)).norm() for n in sizes]
    if space == "full" and comp is not None:
        norms = [max(v, abs(comp)) for v in sub]
    else:
        norms = sub
    slope = float(np.polyfit(np.log(sizes), np.log(norms), 1)[0])
    return ScalingReport(name, float(s), tuple(sizes), tuple(norms), tuple(sub), slope, space)
