"""N-dimensional, matrix-free versions of the search Hamiltonians.

Each operator is stored as the coefficient row ``(d, p, q, u, u2)`` of::

    H = d*I + p*J + q*|w><w| + u*|w><1| + u2*|1><w|

(``J`` all-ones, ``|1>`` the all-ones vector), so ``H v`` costs O(N) and the
RK4 kernels can integrate it directly. Vectors orthogonal to both ``|w>``
and ``|1>`` are eigenvectors with eigenvalue ``d``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import kernels
from .algorithms import SearchInstance, _check_s, default_steps, rc_runtime, rc_schedule_s
from .errors import ConvergenceError, NormDriftError
from .subspace import DRIFT_FAIL, Hermitian2, SubspaceState, Trajectory

COMPLETE_GRAPH = "complete-graph-walk"
RC_INTERPOLATION = "rc-interpolation"
FENNER_STAR = "fenner-star"
DENSE = "dense"


@dataclass(frozen=True)
class FullOperator:
    N: int
    w: int
    coef: tuple
    tag: str
    params: dict = field(default_factory=dict, compare=False)

    @property
    def index(self) -> int:
        """Zero-based marked index."""
        return self.w - 1

    def apply(self, v) -> np.ndarray:
        return kernels.apply_structured(np.asarray(self.coef, dtype=np.complex128), self.index, v)

    def dense(self) -> np.ndarray:
        d, p, q, u, u2 = self.coef
        N, i = self.N, self.index
        m = d * np.eye(N, dtype=np.complex128) + p * np.ones((N, N), dtype=np.complex128)
        m[i, :] += u
        m[:, i] += u2
        m[i, i] += q
        return m

    @property
    def complement_eigenvalue(self) -> float:
        return float(np.real(self.coef[0]))


@dataclass(frozen=True)
class DenseOperator:
    """Explicit matrix; used for oracles and negative controls."""

    matrix: np.ndarray
    w: int = 1
    tag: str = DENSE

    @property
    def N(self) -> int:
        return self.matrix.shape[0]

    def apply(self, v) -> np.ndarray:
        return self.matrix @ np.asarray(v, dtype=np.complex128)

    def dense(self) -> np.ndarray:
        return np.array(self.matrix, dtype=np.complex128)


def complete_graph_walk(inst: SearchInstance) -> FullOperator:
    """``-gamma A - |w><w|`` on the complete graph, ``A = J - I``."""
    g = inst.gamma
    return FullOperator(inst.N, inst.w, (g, -g, -1.0, 0.0, 0.0), COMPLETE_GRAPH,
                        {"gamma": g})


def fenner_star(inst: SearchInstance) -> FullOperator:
    """``(i/sqrt(N)) (|w><s| - |s><w|)``: the directed star with ``+-i/N`` edge weights.

    ``H|w> = (-i/N) sum_{j != w} |j>`` and ``H|j> = (i/N)|w>`` for ``j != w``.
    """
    N = inst.N
    return FullOperator(N, inst.w, (0.0, 0.0, 0.0, 1j / N, -1j / N), FENNER_STAR)


def rc_full(s: float, inst: SearchInstance) -> FullOperator:
    """``(1-s)(I - |s><s|) + s(I - |w><w|)``."""
    _check_s(s)
    s = float(s)
    return FullOperator(inst.N, inst.w, (1.0, -(1.0 - s) / inst.N, -s, 0.0, 0.0),
                        RC_INTERPOLATION, {"s": s})


def subspace_basis(N: int, w: int):
    """``(|w>, |r>)`` as length-N vectors; ``w`` is 1-based."""
    ew = np.zeros(N, dtype=np.complex128)
    ew[w - 1] = 1.0
    r = np.full(N, 1.0 / math.sqrt(N - 1), dtype=np.complex128)
    r[w - 1] = 0.0
    return ew, r


def embed(state: SubspaceState, inst: SearchInstance) -> np.ndarray:
    ew, r = subspace_basis(inst.N, inst.w)
    return state.a_w * ew + state.a_r * r


def uniform_vector(N: int) -> np.ndarray:
    return np.full(N, 1.0 / math.sqrt(N), dtype=np.complex128)


def reduce_to_subspace(op, inst: SearchInstance):
    """Compress ``op`` onto span{|w>, |r>}.

    Returns
    -------
    H : Hermitian2
    leakage : float
        Largest norm of the part of ``H|w>`` or ``H|r>`` outside the span.
    """
    basis = subspace_basis(inst.N, inst.w)
    images = [op.apply(b) for b in basis]
    m = np.array([[np.vdot(bi, img) for img in images] for bi in basis])
    leak = 0.0
    for j, img in enumerate(images):
        resid = img - m[0, j] * basis[0] - m[1, j] * basis[1]
        leak = max(leak, float(np.linalg.norm(resid)))
    return Hermitian2.from_matrix(m), leak


def hermiticity_defect(op, rng=None, trials: int = 4) -> float:
    """Max ``|<u|Hv> - conj(<v|Hu>)|`` over random unit vector pairs."""
    rng = np.random.default_rng(0) if rng is None else rng
    worst = 0.0
    for _ in range(trials):
        u = rng.normal(size=op.N) + 1j * rng.normal(size=op.N)
        v = rng.normal(size=op.N) + 1j * rng.normal(size=op.N)
        u /= np.linalg.norm(u)
        v /= np.linalg.norm(v)
        worst = max(worst, abs(np.vdot(u, op.apply(v)) - np.conj(np.vdot(v, op.apply(u)))))
    return worst


def spectral_norm_full(op, tol: float = 1e-10, max_iter: int = 10_000, seed: int = 0) -> float:
    """Operator norm by power iteration on ``H^2``.

    Stops when the estimate ``||H x||`` changes by less than ``tol``
    (relative) between iterations.

    Raises
    ------
    ConvergenceError
        After ``max_iter`` iterations without convergence.
    """
    rng = np.random.default_rng(seed)
    x = rng.normal(size=op.N) + 1j * rng.normal(size=op.N)
    x /= np.linalg.norm(x)
    prev = None
    for _ in range(max_iter):
        hx = op.apply(x)
        est = float(np.linalg.norm(hx))
        if est == 0.0:
            return 0.0
        if prev is not None and abs(est - prev) <= tol * est:
            return est
        prev = est
        x = op.apply(hx)
        x /= np.linalg.norm(x)
    raise ConvergenceError(f"power iteration did not converge in {max_iter} iterations")


@dataclass(frozen=True)
class NormBreakdown:
    norm: float
    subspace_norm: float
    complement_eigenvalue: Optional[float]
    leakage: float


def norm_breakdown(op: FullOperator, inst: SearchInstance) -> NormBreakdown:
    """Power-iteration norm alongside the 2x2 block norm and complement eigenvalue."""
    H2, leak = reduce_to_subspace(op, inst)
    comp = op.complement_eigenvalue if inst.N >= 3 else None
    return NormBreakdown(spectral_norm_full(op), H2.norm(), comp, leak)


def evolve_full(op_or_coefs, psi0, t0: float, t1: float, steps: int, *, w: int = 1,
                label: str = "") -> tuple:
    """RK4 in the full space.

    ``op_or_coefs`` is a :class:`FullOperator` (constant in time) or an array
    of coefficient rows sampled on the half-step grid, shape (2*steps+1, 5).

    Returns ``(final_vector, trajectory)`` where the trajectory holds the
    ``(<w|psi>, <r|psi>)`` projections after every step.
    """
    if isinstance(op_or_coefs, FullOperator):
        coefs = np.tile(np.asarray(op_or_coefs.coef, dtype=np.complex128), (2 * steps + 1, 1))
        w = op_or_coefs.w
    else:
        coefs = np.asarray(op_or_coefs, dtype=np.complex128)
    dt = (t1 - t0) / steps
    final, proj, drift = kernels.rk4_structured(coefs, w - 1, psi0, dt)
    if drift > DRIFT_FAIL:
        raise NormDriftError(f"norm drift {drift:.3e} exceeds {DRIFT_FAIL:g}")
    t = t0 + dt * np.arange(steps + 1)
    t[-1] = t1
    return final, Trajectory(t, proj, max_norm_drift=float(drift), label=label)


def rc_full_coefs(s, inst: SearchInstance) -> np.ndarray:
    s = np.asarray(s, dtype=float)
    out = np.zeros(s.shape + (5,), dtype=np.complex128)
    out[..., 0] = 1.0
    out[..., 1] = -(1.0 - s) / inst.N
    out[..., 2] = -s
    return out


def rc_evolve_full(inst: SearchInstance, steps: Optional[int] = None):
    """Adiabatic search integrated in the full space along the arctan schedule."""
    T = rc_runtime(inst)
    steps = default_steps(T) if steps is None else int(steps)
    times = T * np.arange(2 * steps + 1) / (2 * steps)
    s_half = rc_schedule_s(times, inst)
    return evolve_full(rc_full_coefs(s_half, inst), uniform_vector(inst.N), 0.0, T, steps,
                       w=inst.w, label="rc-full")


def fidelity_full(a, b) -> float:
    return float(abs(np.vdot(a, b)) ** 2 / (np.vdot(a, a).real * np.vdot(b, b).real))
