import math

import numpy as np
import pytest
from helpers import random_fock_pair, random_single_mode
from hypothesis import given, settings, strategies as st
from scipy.linalg import expm

from lcbattery import fock
from lcbattery.circuit import hamiltonian_from_frequencies
from lcbattery.dynamics import EvolutionSpec, propagate
from lcbattery.gaussian import (
    GaussianState,
    SingleModeState,
    UnphysicalStateError,
    coherence,
    coherent,
    entropy,
    ergotropy,
    ergotropy_ratio,
    interaction_energy,
    mean_photon,
    mode_energy,
    observables,
    passive_energy,
    product_state,
    reduce,
    squeezed_thermal,
    symplectic_eigenvalue,
    thermal,
    vacuum,
)

SQUEEZED = SingleModeState([0, 0], np.diag([3 * math.e, 3 / math.e]))
THERMAL_ENTROPY_4 = 5 * math.log(5) - 4 * math.log(4)


def test_vacuum():
    v = vacuum()
    assert mean_photon(reduce(v, 1)) == 0
    assert entropy(reduce(v, 2)) == 0
    assert v.is_physical()
    assert np.allclose(v.symplectic_eigenvalues(), 1.0)


def test_product_constructors():
    s = product_state(coherent(2), thermal(4))
    assert np.array_equal(s.means, [4, 0, 0, 0])
    assert np.array_equal(s.cov, np.diag([1, 1, 9, 9]))
    assert mean_photon(coherent(2)) == 4
    assert mean_photon(thermal(4)) == 4
    assert np.array_equal(reduce(product_state(thermal(4)), 1).cov, 9 * np.eye(2))
    z = product_state(coherent(0))
    assert np.array_equal(z.means, vacuum().means) and np.array_equal(z.cov, vacuum().cov)
    c = coherent(0.3 - 1.1j)
    assert np.allclose(c.mean, [0.6, -2.2])


def test_thermal_rejects_negative():
    with pytest.raises(ValueError):
        thermal(-0.1)


def test_reduce_product_state():
    a, b = squeezed_thermal(2.0, 0.3, 0.4, (1.0, -0.5)), thermal(1.5)
    s = product_state(a, b)
    for mode, part in ((1, a), (2, b)):
        r = reduce(s, mode)
        assert np.array_equal(r.mean, part.mean) and np.array_equal(r.cov, part.cov)
    with pytest.raises(ValueError):
        reduce(s, 3)


def test_states_are_immutable():
    s = vacuum()
    with pytest.raises(ValueError):
        s.cov[0, 0] = 2.0


def test_asymmetric_covariance_rejected():
    with pytest.raises(ValueError):
        GaussianState(np.zeros(4), np.eye(4) + np.triu(np.ones((4, 4)), 1))


def test_mode_energies():
    assert mode_energy(SingleModeState([0, 0], np.eye(2)), 1.3) == 0
    assert mode_energy(coherent(2), 1.0) == 4
    assert mode_energy(thermal(4), 1.0) == 4


def test_symplectic_eigenvalue():
    assert symplectic_eigenvalue(SingleModeState([0, 0], np.eye(2))) == 1
    assert symplectic_eigenvalue(thermal(4)) == 9
    assert symplectic_eigenvalue(SingleModeState([0, 0], np.diag([8.15485, 1.10364]))) == pytest.approx(3, abs=1e-5)
    assert symplectic_eigenvalue(SingleModeState([0, 0], np.eye(2) * (1 - 5e-10))) == 1.0
    with pytest.raises(UnphysicalStateError):
        symplectic_eigenvalue(SingleModeState([0, 0], np.eye(2) * 0.9))


def test_passive_energy():
    assert passive_energy(coherent(1.5), 2.0) == 0
    assert passive_energy(thermal(4), 1.3) == pytest.approx(5.2, abs=1e-14)
    assert passive_energy(SQUEEZED, 1.0) == pytest.approx(1.0, abs=1e-14)


def test_ergotropy():
    assert ergotropy(thermal(3.3), 1.0) == 0
    assert ergotropy(coherent(2), 1.0) == pytest.approx(4.0, abs=1e-14)
    nbar = (3 * math.e + 3 / math.e - 2) / 4
    assert mean_photon(SQUEEZED) == pytest.approx(1.81462, abs=1e-5)
    assert ergotropy(SQUEEZED, 1.0) == pytest.approx(nbar - 1.0, abs=1e-14)
    assert ergotropy(SQUEEZED, 1.0) == pytest.approx(0.81462, abs=1e-5)


def test_squeezed_ergotropy_against_fock():
    rho = fock.gaussian_to_fock(SQUEEZED.mean, SQUEEZED.cov, 70)
    assert fock.ergotropy_fock(rho, 1.0) == pytest.approx(ergotropy(SQUEEZED, 1.0), rel=1e-6)


def test_ergotropy_ratio():
    assert ergotropy_ratio(coherent(1.2), 1.0) == pytest.approx(1.0, abs=1e-14)
    assert ergotropy_ratio(thermal(2), 1.0) == 0
    assert math.isnan(ergotropy_ratio(SingleModeState([0, 0], np.eye(2)), 1.0))


def test_entropy():
    assert entropy(coherent(2)) == 0
    assert entropy(thermal(4)) == pytest.approx(THERMAL_ENTROPY_4, abs=1e-13)
    assert THERMAL_ENTROPY_4 == pytest.approx(2.50201, abs=1e-5)
    assert entropy(SQUEEZED) == pytest.approx(2 * math.log(2), abs=1e-12)


def test_entropy_against_truncated_thermal_spectrum():
    p = 0.2 * 0.8 ** np.arange(400)
    assert entropy(thermal(4)) == pytest.approx(-np.sum(p * np.log(p)), rel=1e-12)
    rho = fock.gaussian_to_fock(SQUEEZED.mean, SQUEEZED.cov, 70)
    assert fock.entropy_fock(rho) == pytest.approx(2 * math.log(2), rel=1e-6)


def test_coherence():
    assert coherence(thermal(2.7)) == 0
    assert coherence(SingleModeState([0, 0], np.eye(2))) == 0
    assert coherence(coherent(2)) == pytest.approx(THERMAL_ENTROPY_4, abs=1e-13)


def test_interaction_energy_zero_cases():
    h = hamiltonian_from_frequencies(1.0, 1.3, -0.57, 0.7)
    assert interaction_energy(product_state(coherent(2)), h) == 0
    assert interaction_energy(product_state(thermal(4), coherent(1 + 1j)), h) == 0
    h0 = hamiltonian_from_frequencies(1.0, 1.3, 0.0, 0.0)
    s = GaussianState([1, 2, 3, 4], np.eye(4) + 0.3 * np.fliplr(np.eye(4)))
    assert interaction_energy(s, h0) == 0


def test_observables_initial_states():
    h2 = hamiltonian_from_frequencies(1.0, 1.3, 0.7, 0.7)
    o = observables(product_state(coherent(2)), h2)
    assert (o.E1, o.E2, o.Ee, o.Ei) == (4, 0, 0, 0)
    assert math.isnan(o.R)
    o3 = observables(product_state(thermal(4)), hamiltonian_from_frequencies(1.0, 1.3, -0.57, 0.7))
    assert (o3.E1, o3.S, o3.C) == (4, 0, 0)
    v = observables(vacuum(), h2)
    assert (v.E1, v.E2, v.Ee, v.Ei, v.S, v.C) == (0, 0, 0, 0, 0, 0)


@pytest.fixture(scope="module")
def mixed_evolution():
    """Mixed couplings (kL=-0.57, kC=0.7) with a thermal charger (n = 0.5) evolved in both pictures to t = 1."""
    h = hamiltonian_from_frequencies(1.0, 1.3, -0.57, 0.7)
    n = 30
    state = product_state(thermal(0.5))
    gauss = propagate(EvolutionSpec(h, [0.0, 1.0]), state).state(1)
    rho1 = fock.gaussian_to_fock(np.zeros(2), 2.0 * np.eye(2), n)
    rho = fock.evolve_fock(h, fock.product(rho1, fock.fock_state(0, n)), 1.0, (n, n))
    return h, gauss, rho, (n, n)


def test_interaction_energy_against_fock(mixed_evolution):
    h, gauss, rho, dims = mixed_evolution
    a1, a2 = fock.two_mode_operators(*dims)
    d1, d2 = a1.conj().T, a2.conj().T
    Hi = h.g * (d1 + a1) @ (d2 + a2) + h.G * (d1 - a1) @ (d2 - a2)
    expected = np.trace(rho @ Hi).real
    assert abs(expected) > 0.05
    assert interaction_energy(gauss, h) == pytest.approx(expected, abs=1e-6)


def test_evolved_battery_is_mixed(mixed_evolution):
    _, gauss, rho, dims = mixed_evolution
    nu = symplectic_eigenvalue(reduce(gauss, 2))
    assert nu > 1.0
    assert entropy(reduce(gauss, 2)) == pytest.approx(fock.entropy_fock(fock.partial_trace(rho, dims, 2)), rel=1e-6)


def test_entangled_counter_rotating_battery():
    h = hamiltonian_from_frequencies(1.0, 1.3, -0.7, 0.7)
    gauss = propagate(EvolutionSpec(h, [0.0, 1.0]), product_state(coherent(0.5))).state(1)
    n = 30
    rho0 = fock.product(fock.gaussian_to_fock([1.0, 0.0], np.eye(2), n), fock.fock_state(0, n))
    red = fock.partial_trace(fock.evolve_fock(h, rho0, 1.0, (n, n)), (n, n), 2)
    det = np.linalg.det(reduce(gauss, 2).cov)
    assert math.sqrt(det) > 1.0 + 1e-3
    _, cov = fock.moments(red)
    assert math.sqrt(np.linalg.det(cov)) == pytest.approx(math.sqrt(det), rel=1e-8)


def test_closed_forms_match_fock_on_random_states(rng):
    for _ in range(100):
        s, rho = random_fock_pair(rng)
        omega = rng.uniform(0.5, 2.0)
        assert fock.mean_photon(rho) * omega == pytest.approx(mode_energy(s, omega), rel=1e-5, abs=1e-9)
        assert fock.entropy_fock(rho) == pytest.approx(entropy(s), rel=1e-5, abs=1e-9)
        assert fock.ergotropy_fock(rho, omega) == pytest.approx(ergotropy(s, omega), rel=1e-5, abs=1e-9)
        assert fock.gaussian_coherence_fock(rho) == pytest.approx(coherence(s), rel=1e-5, abs=1e-9)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_observable_bounds(seed):
    s = random_single_mode(np.random.default_rng(seed), max_nbar=50.0)
    omega = 1.3
    e, ee = mode_energy(s, omega), ergotropy(s, omega)
    assert -1e-9 <= ee <= e + 1e-9
    assert entropy(s) >= 0
    assert coherence(s) >= -1e-12
    nu = symplectic_eigenvalue(s)
    assert (entropy(s) == 0) == (nu <= 1 + 1e-9) or nu < 1 + 1e-6
    iso = np.allclose(s.mean, 0) and np.allclose(s.cov, s.cov[0, 0] * np.eye(2), atol=1e-12)
    if not iso:
        assert coherence(s) > 1e-9
    r = ergotropy_ratio(s, omega)
    if nu <= 1 + 1e-12:
        assert r == pytest.approx(1.0, abs=1e-9)
    elif nu > 1 + 1e-6:
        assert r < 1.0


@given(st.floats(0, 30), st.floats(0, 2 * math.pi))
def test_thermal_forms_have_no_coherence(n, phi):
    c, s = math.cos(phi), math.sin(phi)
    rot = np.array([[c, -s], [s, c]])
    st_ = SingleModeState([0, 0], rot @ ((2 * n + 1) * np.eye(2)) @ rot.T)
    assert coherence(st_) <= 1e-9
    assert ergotropy(st_, 1.0) <= 1e-9


def test_global_symplectic_spectrum_of_two_mode_squeezed_vacuum():
    r = 0.7
    z = np.diag([1.0, -1.0])
    S = expm(r * np.block([[np.zeros((2, 2)), z], [z, np.zeros((2, 2))]]))
    s = GaussianState(np.zeros(4), S @ S.T)
    assert np.allclose(s.symplectic_eigenvalues(), 1.0, atol=1e-12)
    assert symplectic_eigenvalue(reduce(s, 2)) == pytest.approx(math.cosh(2 * r), rel=1e-12)
