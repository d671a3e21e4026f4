"""The chiral star walk versus the adiabatic ground-state path.

With the ``|r>`` coefficient fixed to 1 both evolutions reduce to a single
real ``|w>`` coefficient. At ``eps = 1`` the walk coefficient at
``t = rc_schedule_t(s)`` equals the adiabatic ground-state coefficient at
``s`` for every ``N``. This module evaluates both sides, compares them, and
measures the Bloch angular speed along each path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import List

import numpy as np

from .algorithms import (
    SearchInstance,
    _check_s,
    _rc_ground_ratio,
    fenner_rate,
    fenner_state,
    rc_ground_state,
    rc_runtime,
    rc_schedule_s,
    rc_schedule_t,
)
from .errors import DomainError, NotHermitianError
from .subspace import Hermitian2, bloch_coords, fidelity

POLE_WINDOW = 1e-3
POLE_RATIO = 1e12


@dataclass(frozen=True)
class UnnormalizedPathPoint:
    """``w_coeff |w> + |r>``; ``singular`` marks the pole where the state is ``|w>``."""

    w_coeff: float
    parameter: float
    kind: str
    singular: bool = False


def fenner_unnormalized(t: float, inst: SearchInstance) -> UnnormalizedPathPoint:
    """Walk state rescaled so the ``|r>`` coefficient is 1.

    ``(cos x + k sin x) / (k cos x - sin x)`` with ``x = k t / N`` and
    ``k = sqrt(N-1)``.
    """
    k = inst.k
    x = k * t / inst.N
    c, sn = math.cos(x), math.sin(x)
    num = c + k * sn
    den = k * c - sn
    if abs(den) * POLE_RATIO <= abs(num):
        return UnnormalizedPathPoint(math.inf, float(t), "t", singular=True)
    return UnnormalizedPathPoint(num / den, float(t), "t")


def rc_ground_unnormalized(s: float, inst: SearchInstance) -> UnnormalizedPathPoint:
    """Adiabatic ground-state ``|w>`` coefficient, singular at ``s = 1``."""
    _check_s(s)
    if s == 1.0:
        return UnnormalizedPathPoint(math.inf, 1.0, "s", singular=True)
    num, den = _rc_ground_ratio(float(s), inst)
    return UnnormalizedPathPoint(num / den, float(s), "s")


def fenner_time_for_coeff(c: float, inst: SearchInstance) -> float:
    """Walk time at which the rescaled ``|w>`` coefficient equals ``c > 0``.

    The walk state is ``(sin(x + x0), cos(x + x0))`` with ``sin x0 = 1/sqrt(N)``,
    so the coefficient is ``tan(x + x0)``.
    """
    x0 = math.asin(1.0 / math.sqrt(inst.N))
    x = math.atan(c) - x0
    return inst.N * x / inst.k


@dataclass
class IdentityReport:
    N: int
    samples: int
    max_rel_deviation: float
    max_pole_fidelity_deficit: float
    skipped: int
    rows: List[tuple] = field(default_factory=list, repr=False)
    notes: List[str] = field(default_factory=list)


def verify_identity(inst: SearchInstance, samples: int) -> IdentityReport:
    """Compare walk and ground-state coefficients at ``samples`` interior ``s``.

    Deviation is ``|lhs - rhs| / (1 + |rhs|)``. Within ``POLE_WINDOW`` of
    ``s = 1`` the comparison uses normalized fidelity instead.

    Raises
    ------
    DomainError
        Unless ``eps == 1``.
    """
    if inst.eps != 1.0:
        raise DomainError("the exact identity is only claimed for eps = 1")
    if samples < 2:
        raise ValueError("samples must be >= 2")
    ss = np.arange(1, samples + 1) / (samples + 1)
    rows = []
    worst = 0.0
    pole_deficit = 0.0
    skipped = 0
    notes = []
    for s in ss:
        s = float(s)
        t = rc_schedule_t(s, inst)
        if 1.0 - s < POLE_WINDOW:
            deficit = 1.0 - fidelity(fenner_state(t, inst), rc_ground_state(s, inst))
            pole_deficit = max(pole_deficit, deficit)
            skipped += 1
            continue
        lhs = fenner_unnormalized(t, inst)
        rhs = rc_ground_unnormalized(s, inst)
        if lhs.singular or rhs.singular:
            skipped += 1
            notes.append(f"pole sampled at s={s!r}")
            continue
        dev = abs(lhs.w_coeff - rhs.w_coeff) / (1.0 + abs(rhs.w_coeff))
        worst = max(worst, dev)
        rows.append((s, t, lhs.w_coeff, rhs.w_coeff, dev))
    if skipped:
        notes.append(f"{skipped} samples within {POLE_WINDOW} of the pole compared by fidelity")
    return IdentityReport(inst.N, samples, worst, pole_deficit, skipped, rows, notes)


# -- Angular speed ------------------------------------------------------------

def bloch_angle(p, q) -> float:
    """Angle between two Bloch vectors, ``atan2(|p x q|, p . q)``."""
    p, q = np.asarray(p, dtype=float), np.asarray(q, dtype=float)
    return float(math.atan2(np.linalg.norm(np.cross(p, q)), float(np.dot(p, q))))


def bloch_speed(path, t: float, h: float) -> float:
    """Central-difference Bloch angular speed with one Richardson refinement.

    ``path(t)`` must return a :class:`SubspaceState`.
    """

    def central(step):
        a = bloch_coords(path(t - step))
        b = bloch_coords(path(t + step))
        return bloch_angle(a, b) / (2.0 * step)

    coarse, fine = central(h), central(0.5 * h)
    return (4.0 * fine - coarse) / 3.0


def fenner_bloch_speed(inst: SearchInstance) -> float:
    """Exact Bloch angular speed of the walk, twice the state rotation rate."""
    return 2.0 * fenner_rate(inst)


@dataclass(frozen=True)
class SpeedComparison:
    N: int
    eps: float
    fenner_exact: float
    fenner_mean: float
    fenner_rel_std: float
    rc_mean: float
    max_rel_difference: float
    mean_rel_difference: float


def angular_velocity_compare(inst: SearchInstance, samples: int = 41,
                             s_range=(0.1, 0.9)) -> SpeedComparison:
    """Bloch angular speeds of the walk and of the ground state along the schedule.

    The ground-state path is followed at the instance's ``eps``; the walk
    speed does not depend on ``eps``. Speeds are compared at matching
    times ``t = rc_schedule_t(s)`` for ``s`` in ``s_range``.
    """
    T = rc_runtime(inst)
    ss = np.linspace(s_range[0], s_range[1], samples)
    ts = rc_schedule_t(ss, inst)
    # Aim for a Bloch angle of ~1e-2 rad per difference, staying inside [0, T].
    rate = fenner_bloch_speed(inst)
    h = min(1e-2 / (rate * inst.eps), 0.5 * float(ts[0]), 0.5 * (T - float(ts[-1])))

    def walk(t):
        return fenner_state(t, inst)

    def ground(t):
        return rc_ground_state(rc_schedule_s(t, inst), inst)

    fs = np.array([bloch_speed(walk, float(t), h) for t in ts])
    rs = np.array([bloch_speed(ground, float(t), h) for t in ts])
    rel = np.abs(rs - fs) / fs
    return SpeedComparison(
        N=inst.N,
        eps=inst.eps,
        fenner_exact=rate,
        fenner_mean=float(fs.mean()),
        fenner_rel_std=float(fs.std() / fs.mean()),
        rc_mean=float(rs.mean()),
        max_rel_difference=float(rel.max()),
        mean_rel_difference=float(abs(rs.mean() - fs.mean()) / fs.mean()),
    )


# -- Chirality ----------------------------------------------------------------

class Chirality(str, Enum):
    CHIRAL = "chiral"
    ACHIRAL = "achiral"
    NOT_REAL_GENERATING = "not-real-generating"


@dataclass(frozen=True)
class ChiralityReport:
    kind: Chirality
    real_generating: bool
    zero_diagonal: bool
    max_diagonal: float
    note: str


def chirality_classifier(H, tol: float = 1e-12) -> ChiralityReport:
    """Classify a Hermitian matrix of any size by whether ``exp(-iHt)`` is real.

    ``exp(-iHt)`` is real for all ``t`` exactly when ``H`` is purely
    imaginary. Hermiticity then forces a zero diagonal and ``+-i`` conjugate
    pairs on every directed edge, i.e. a chiral walk. The zero matrix is
    reported as achiral.
    """
    m = H.matrix if isinstance(H, Hermitian2) else np.asarray(H, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise NotHermitianError("expected a square matrix")
    scale = max(1.0, float(np.max(np.abs(m))) if m.size else 1.0)
    if np.max(np.abs(m - m.conj().T)) > tol * scale:
        raise NotHermitianError("matrix is not Hermitian")
    diag = float(np.max(np.abs(np.diag(m)))) if m.size else 0.0
    zero_diag = diag <= tol * scale
    purely_imaginary = bool(np.all(np.abs(m.real) <= tol * scale))
    if not purely_imaginary:
        note = ("nonzero real part; evolution is not real" +
                ("" if zero_diag else " (diagonal entries are real and nonzero)"))
        return ChiralityReport(Chirality.NOT_REAL_GENERATING, False, zero_diag, diag, note)
    if np.all(np.abs(m) <= tol * scale):
        return ChiralityReport(Chirality.ACHIRAL, True, True, diag, "zero operator")
    return ChiralityReport(Chirality.CHIRAL, True, zero_diag, diag,
                           "purely imaginary: zero diagonal, conjugate +-i directed edges")
