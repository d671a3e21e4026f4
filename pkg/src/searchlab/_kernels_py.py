"""Pure-Python reference kernels.

These mirror ``searchlab._kernels`` (Cython) one-to-one and are selected
automatically when the compiled extension is unavailable.

Structured operators
--------------------
Every full-space Hamiltonian used here has the form::

    H = d*I + p*J + q*|w><w| + u*|w><1| + u2*|1><w|

where ``J`` is the all-ones matrix and ``|1>`` the all-ones vector. It is
passed as the coefficient row ``(d, p, q, u, u2)``; ``(H v)`` costs O(N).
"""

import numpy as np


def rk4_sampled(h, psi0, dt):
    """Fixed-step RK4 for ``i d/dt psi = H(t) psi`` on a two-level system.

    Parameters
    ----------
    h : array_like, shape (2*steps + 1, 2, 2)
        Hamiltonian sampled on the half-step grid ``t0 + j*dt/2``.
    psi0 : array_like, shape (2,)
    dt : float

    Returns
    -------
    states : ndarray, shape (steps + 1, 2)
    max_drift : float
        Largest ``| ||psi_k|| - ||psi_0|| |`` seen along the run.
    """
    h = np.ascontiguousarray(h, dtype=np.complex128)
    m = h.shape[0]
    if h.shape[1:] != (2, 2) or m < 3 or m % 2 == 0:
        raise ValueError("h must have shape (2*steps + 1, 2, 2) with steps >= 1")
    steps = (m - 1) // 2
    rows = h.reshape(m, 4).tolist()
    a, b = complex(psi0[0]), complex(psi0[1])
    n0 = (abs(a) ** 2 + abs(b) ** 2) ** 0.5
    half = 0.5 * dt
    sixth = dt / 6.0
    out = [(a, b)]
    drift = 0.0
    for k in range(steps):
        h00, h01, h10, h11 = rows[2 * k]
        ka1 = -1j * (h00 * a + h01 * b)
        kb1 = -1j * (h10 * a + h11 * b)
        h00, h01, h10, h11 = rows[2 * k + 1]
        xa, xb = a + half * ka1, b + half * kb1
        ka2 = -1j * (h00 * xa + h01 * xb)
        kb2 = -1j * (h10 * xa + h11 * xb)
        xa, xb = a + half * ka2, b + half * kb2
        ka3 = -1j * (h00 * xa + h01 * xb)
        kb3 = -1j * (h10 * xa + h11 * xb)
        h00, h01, h10, h11 = rows[2 * k + 2]
        xa, xb = a + dt * ka3, b + dt * kb3
        ka4 = -1j * (h00 * xa + h01 * xb)
        kb4 = -1j * (h10 * xa + h11 * xb)
        a = a + sixth * (ka1 + 2.0 * ka2 + 2.0 * ka3 + ka4)
        b = b + sixth * (kb1 + 2.0 * kb2 + 2.0 * kb3 + kb4)
        d = abs((abs(a) ** 2 + abs(b) ** 2) ** 0.5 - n0)
        if d > drift:
            drift = d
        out.append((a, b))
    return np.array(out, dtype=np.complex128), drift


def apply_structured(coef, w, v):
    """Return ``H v`` for the structured operator with coefficients ``coef``."""
    d, p, q, u, u2 = (complex(c) for c in coef)
    v = np.asarray(v, dtype=np.complex128)
    total = v.sum()
    vw = v[w]
    out = d * v + (p * total + u2 * vw)
    out[w] += q * vw + u * total
    return out


def rk4_structured(coefs, w, psi0, dt):
    """Fixed-step RK4 in the full N-dimensional space.

    Parameters
    ----------
    coefs : array_like, shape (2*steps + 1, 5)
        Structured-operator coefficients on the half-step grid.
    w : int
        Zero-based marked index.
    psi0 : array_like, shape (N,)
    dt : float

    Returns
    -------
    final : ndarray, shape (N,)
    projections : ndarray, shape (steps + 1, 2)
        ``(<w|psi>, <r|psi>)`` after every step.
    max_drift : float
    """
    coefs = np.ascontiguousarray(coefs, dtype=np.complex128)
    m = coefs.shape[0]
    if coefs.shape[1:] != (5,) or m < 3 or m % 2 == 0:
        raise ValueError("coefs must have shape (2*steps + 1, 5) with steps >= 1")
    steps = (m - 1) // 2
    psi = np.array(psi0, dtype=np.complex128)
    n = psi.shape[0]
    inv_rest = 1.0 / np.sqrt(n - 1)
    proj = np.empty((steps + 1, 2), dtype=np.complex128)
    n0 = np.linalg.norm(psi)
    drift = 0.0

    def project(x):
        return x[w], (x.sum() - x[w]) * inv_rest

    proj[0] = project(psi)
    for k in range(steps):
        c1, c2, c3 = coefs[2 * k], coefs[2 * k + 1], coefs[2 * k + 2]
        k1 = -1j * apply_structured(c1, w, psi)
        k2 = -1j * apply_structured(c2, w, psi + (0.5 * dt) * k1)
        k3 = -1j * apply_structured(c2, w, psi + (0.5 * dt) * k2)
        k4 = -1j * apply_structured(c3, w, psi + dt * k3)
        psi = psi + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        drift = max(drift, abs(np.linalg.norm(psi) - n0))
        proj[k + 1] = project(psi)
    return psi, proj, float(drift)
