import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from searchlab.algorithms import SearchInstance, fg_state, rc_hamiltonian
from searchlab.errors import DegenerateGapWarning, DomainError
from searchlab.subspace import (
    R_STATE,
    W_STATE,
    Hermitian2,
    eigen2,
    fidelity,
    make_state,
    uniform_state,
)
from searchlab.synthesis import (
    Reality,
    SpectralGaugeChoice,
    norm_scaling_probe,
    real_gauge_offdiag_imag,
    reality_classifier,
    synth_from_path,
    walk_follower_gap,
    walk_follower_ground_state,
    walk_follower_hamiltonian,
    walk_follower_lambda1,
    walk_follower_schedule,
    walk_follower_terms,
    walk_follower_time,
)

finite = st.floats(-3, 3, allow_nan=False)
interior = st.floats(1e-6, 1 - 1e-6)


@st.composite
def states(draw):
    a = complex(draw(finite), draw(finite))
    b = complex(draw(finite), draw(finite))
    if abs(a) + abs(b) < 1e-3:
        b = 1.0
    return make_state(a, b)


def symmetric_follower(inst):
    return SpectralGaugeChoice.symmetric(
        lambda t: walk_follower_lambda1(walk_follower_schedule(t, inst).s, inst))


# -- synth_from_path --------------------------------------------------------------

def test_synth_examples():
    hf = synth_from_path(lambda t: W_STATE, SpectralGaugeChoice.symmetric(1.0), 0.0)
    assert np.allclose(hf.matrix, np.diag([-1, 1]), atol=1e-15)
    N = 16
    h0 = synth_from_path(lambda t: uniform_state(N), SpectralGaugeChoice.symmetric(1.0), 0.0)
    assert h0.max_abs_diff(walk_follower_terms(SearchInstance(N)).H0) < 1e-15
    with pytest.warns(DegenerateGapWarning):
        flat = synth_from_path(lambda t: uniform_state(N), SpectralGaugeChoice.custom(2.5, 2.5), 0.0)
    assert np.allclose(flat.matrix, 2.5 * np.eye(2), atol=1e-15)


@given(states(), st.floats(0.01, 5), st.floats(-5, 5))
def test_synth_ground_state_is_path(psi, lam, shift):
    gauge = SpectralGaugeChoice.custom(-lam + shift, lam + shift)
    H = synth_from_path(lambda t: psi, gauge, 0.0)
    e = eigen2(H)
    assert 1 - fidelity(e.v0, psi) < 1e-10
    assert abs(e.lambda0 - (shift - lam)) < 1e-10 and abs(e.lambda1 - (shift + lam)) < 1e-10
    sym = synth_from_path(lambda t: psi, SpectralGaugeChoice.symmetric(lam), 0.0)
    assert (H - sym).max_abs_diff(shift * Hermitian2.identity()) < 1e-12


def test_gauge_validation():
    with pytest.raises(ValueError):
        SpectralGaugeChoice.custom(1.0, 0.0).energies(0.0)
    assert SpectralGaugeChoice.symmetric(0.7).mode == "symmetric"
    assert SpectralGaugeChoice.custom(0, 1).mode == "custom"


# -- three-term decomposition -----------------------------------------------------

def test_terms_structure():
    N = 64
    terms = walk_follower_terms(SearchInstance(N))
    e0 = eigen2(terms.H0)
    assert (e0.lambda0, e0.lambda1) == pytest.approx((-1, 1), abs=1e-14)
    assert 1 - fidelity(e0.v0, uniform_state(N)) < 1e-14
    ef = eigen2(terms.Hf)
    assert fidelity(ef.v0, W_STATE) == 1 and fidelity(ef.v1, R_STATE) == 1
    c = 2j * math.sqrt((N - 1) / N)
    # c (|r><w| - |w><r|): the (w, r) entry is -c and the (r, w) entry is +c.
    assert terms.He.matrix == pytest.approx(np.array([[0, -c], [c, 0]]), abs=1e-15)
    for term in (terms.H0, terms.Hf):
        assert np.all(term.matrix.imag == 0)
    assert reality_classifier(terms.He) is Reality.COMPLEX
    assert terms.He.h11 == 0 and terms.He.h22 == 0


def test_walk_follower_examples():
    inst = SearchInstance(16)
    for s in (0.0, 1.0):
        assert walk_follower_hamiltonian(s, inst).matrix.tolist() == [[0, 0], [0, 0]]
    assert walk_follower_lambda1(0.5, inst) == pytest.approx(0.25, abs=1e-15)
    assert eigen2(walk_follower_hamiltonian(0.5, inst)).gap == pytest.approx(0.5, abs=1e-14)
    with pytest.raises(DomainError):
        walk_follower_hamiltonian(1.1, inst)


@given(st.integers(2, 10**6), interior, st.floats(0.05, 3))
def test_walk_follower_eigenvalues(N, s, eps):
    inst = SearchInstance(N, eps=eps)
    e = eigen2(walk_follower_hamiltonian(s, inst))
    lam = (s * (1 - s) / (4 * eps**2 * N)) ** 0.25
    assert abs(e.lambda0 + lam) < 1e-11 and abs(e.lambda1 - lam) < 1e-11


@pytest.mark.parametrize("N", [16, 1024])
def test_walk_follower_ground_state_is_walk(N):
    inst = SearchInstance(N)
    T = math.pi * math.sqrt(N) / 2
    worst = max(1 - fidelity(walk_follower_ground_state(walk_follower_schedule(t, inst).s, inst),
                             fg_state(t, inst))
                for t in np.linspace(0, T, 1000))
    assert worst < 1e-10


@pytest.mark.parametrize("N", [2, 16, 1024, 10**6])
def test_three_term_matches_direct_synthesis(N):
    inst = SearchInstance(N)
    gauge = symmetric_follower(inst)
    T = math.pi * math.sqrt(N) / 2
    for t in np.linspace(0, T, 200)[1:-1]:
        s = walk_follower_schedule(t, inst).s
        direct = synth_from_path(lambda tt: fg_state(tt, inst), gauge, t)
        assert direct.max_abs_diff(walk_follower_hamiltonian(s, inst)) < 1e-10
    for t in (0.0, T):
        with pytest.warns(DegenerateGapWarning):
            direct = synth_from_path(lambda tt: fg_state(tt, inst), gauge, t)
        assert direct.max_abs_diff(Hermitian2.zero()) < 1e-10


# -- schedule -------------------------------------------------------------------

def test_walk_follower_schedule_examples():
    inst = SearchInstance(64)
    T = math.pi * 8 / 2
    assert walk_follower_schedule(0.0, inst).s == 0.0
    assert walk_follower_schedule(T, inst).s == pytest.approx(1, abs=1e-15)
    assert walk_follower_schedule(T / 2, inst).s == pytest.approx(0.5, abs=1e-15)
    assert walk_follower_time(0.5, inst) == pytest.approx(T / 2, abs=1e-14)
    with pytest.raises(DomainError):
        walk_follower_schedule(1.01 * T, inst)
    with pytest.raises(DomainError):
        walk_follower_schedule(-1.0, inst)


@given(st.integers(2, 10**5), st.floats(0.02, 0.98), st.floats(0.1, 2))
def test_walk_follower_local_adiabatic(N, frac, eps):
    inst = SearchInstance(N, eps=eps)
    t = frac * math.pi * math.sqrt(N) / 2
    h = 1e-6 * math.sqrt(N)

    def central(step):
        return (walk_follower_schedule(t + step, inst).s
                - walk_follower_schedule(t - step, inst).s) / (2 * step)

    coarse, fine = central(h), central(h / 2)
    refined = (4 * fine - coarse) / 3
    s = walk_follower_schedule(t, inst).s
    g = walk_follower_gap(s, inst)
    assert g == pytest.approx(2 * walk_follower_lambda1(s, inst), rel=1e-12)
    target = eps * g**2
    assert abs(refined - target) <= 1e-8 * max(target, 1.0)
    assert abs(refined - fine) <= 1e-6 * max(target, 1.0)


# -- reality ----------------------------------------------------------------------

@given(st.integers(2, 10**6), st.floats(0, 1))
def test_reality_classification(N, s):
    inst = SearchInstance(N)
    assert reality_classifier(rc_hamiltonian(s, inst)) is Reality.REAL
    if 1e-9 < s < 1 - 1e-9:
        assert reality_classifier(walk_follower_hamiltonian(s, inst)) is Reality.COMPLEX


@given(st.integers(2, 4096), st.floats(0.01, 0.99), st.floats(-2, 2), st.floats(-2, 2))
def test_real_gauge_obstruction(N, frac, l0, l1):
    inst = SearchInstance(N)
    t = frac * math.pi * math.sqrt(N) / 2
    psi = fg_state(t, inst)
    imag = real_gauge_offdiag_imag(psi.a_w, psi.a_r, l0, l1)
    if abs(psi.a_w.imag) > 1e-6 and abs(l0 - l1) > 1e-6:
        assert abs(imag) > 0
    assert real_gauge_offdiag_imag(psi.a_w, psi.a_r, l0, l0) == 0


# -- norm scaling -----------------------------------------------------------------

SIZES = [10**2, 10**3, 10**4, 10**5]


def test_norm_scaling_slopes():
    assert norm_scaling_probe("walk-follower", 0.5, SIZES).slope == pytest.approx(-0.25, abs=0.01)
    assert norm_scaling_probe("rc", 0.5, SIZES).slope == pytest.approx(0.0, abs=0.01)
    assert norm_scaling_probe("fenner", 0.5, SIZES).slope == pytest.approx(-0.5, abs=0.02)


def test_norm_scaling_subspace_view():
    # The 2x2 block of the adiabatic family shrinks slightly at s = 1/2; the
    # full operator norm is pinned at 1 by the complement eigenvalue.
    rep = norm_scaling_probe("rc", 0.5, SIZES, space="subspace")
    assert rep.slope == pytest.approx(-0.0129, abs=5e-4)
    assert norm_scaling_probe("rc", 0.5, SIZES).norms == (1.0, 1.0, 1.0, 1.0)


def test_norm_scaling_validation():
    with pytest.raises(ValueError):
        norm_scaling_probe("rc", 0.5, [100, 1000])
    with pytest.raises(ValueError):
        norm_scaling_probe("rc", 0.5, [100, 200, 300])
    with pytest.raises(ValueError):
        norm_scaling_probe("rc", 0.5, SIZES, space="bogus")


def test_norm_scaling_callable_family():
    rep = norm_scaling_probe(lambda s, inst: rc_hamiltonian(s, inst) * 2.0, 0.3, SIZES)
    assert rep.space == "full"
    assert rep.norms == tuple(2 * v for v in norm_scaling_probe("rc", 0.3, SIZES,
                                                                space="subspace").norms)
