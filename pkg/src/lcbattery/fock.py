"""
Brute-force truncated Fock-space reference.

Nothing here uses the Gaussian closed forms: states are built as density
matrices, evolved with the full Hamiltonian (or the master equation), and
every quantity is read off from matrix spectra. It is slow and only meant
for cross-checking the moment engine.
"""

import numpy as np
from scipy.linalg import expm
from scipy.optimize import minimize_scalar

#: Largest acceptable population in the top retained level of a constructed state.
TAIL_LIMIT = 1e-8
#: Largest acceptable top-level population during evolution.
OVERFLOW_LIMIT = 1e-6


class TruncationError(RuntimeError):
    """The Fock cutoff is too small for the state at hand."""


def destroy(n):
    return np.diag(np.sqrt(np.arange(1, n, dtype=float)), 1).astype(complex)


def number(n):
    return np.diag(np.arange(n, dtype=float)).astype(complex)


def quadratures(n):
    a = destroy(n)
    return a + a.conj().T, 1j * (a.conj().T - a)


def two_mode_operators(n1, n2):
    """Annihilators ``(a1, a2)`` on the ``n1 * n2`` product space."""
    return np.kron(destroy(n1), np.eye(n2)), np.kron(np.eye(n1), destroy(n2))


def hamiltonian(h, n1, n2=None):
    """Two-mode Hamiltonian (hbar = 1) in the truncated product basis."""
    n2 = n1 if n2 is None else n2
    a1, a2 = two_mode_operators(n1, n2)
    d1, d2 = a1.conj().T, a2.conj().T
    H = h.omega1 * d1 @ a1 + h.omega2 * d2 @ a2
    H = H + h.g * (d1 + a1) @ (d2 + a2) + h.G * (d1 - a1) @ (d2 - a2)
    return 0.5 * (H + H.conj().T)


# -- single-mode states -----------------------------------------------------

def williamson_1mode(cov):
    """Decompose a 2x2 covariance as ``nu * R(phi) diag(e^{2r}, e^{-2r}) R(phi)^T``.

    Returns
    -------
    nu : float
        Symplectic eigenvalue, ``sqrt(det cov)``.
    r : float
        Squeezing parameter, ``r >= 0``.
    phi : float
        Angle of the anti-squeezed axis in the ``(x, p)`` plane, in ``(-pi/2, pi/2]``.
    """
    cov = np.asarray(cov, dtype=float)
    nu = np.sqrt(max(np.linalg.det(cov), 0.0))
    if nu < 1.0 - 1e-9:
        raise ValueError(f"unphysical covariance: nu = {nu}")
    evals, evecs = np.linalg.eigh(cov)
    lo, hi = evals
    r = 0.25 * np.log(hi / lo)
    if r < 1e-12:
        return float(nu), 0.0, 0.0
    vx, vp = evecs[:, 1]
    phi = np.arctan2(vp, vx)
    if phi <= -np.pi / 2:
        phi += np.pi
    elif phi > np.pi / 2:
        phi -= np.pi
    return float(nu), float(r), float(phi)


def _tail_mass(rho):
    return float(np.real(rho[-1, -1]))


def gaussian_to_fock(mean, cov, n, pad=40):
    """Density matrix of the single-mode Gaussian state with the given moments.

    The state is assembled in a padded space as a thermal state, then
    squeezed, rotated and displaced through matrix exponentials of the
    truncated generators, and finally cut back to ``n`` levels.
    """
    nu, r, phi = williamson_1mode(cov)
    big = n + pad
    nth = (max(nu, 1.0) - 1.0) / 2.0
    k = np.arange(big)
    if nth > 0:
        p = (nth / (nth + 1.0)) ** k / (nth + 1.0)
    else:
        p = (k == 0).astype(float)
    rho = np.diag(p).astype(complex)
    a = destroy(big)
    ad = a.conj().T
    ops = []
    if r > 0:
        ops.append(expm(0.5 * r * (ad @ ad - a @ a)))
        ops.append(np.diag(np.exp(1j * phi * k)))
    alpha = 0.5 * (mean[0] + 1j * mean[1])
    if alpha != 0:
        ops.append(expm(alpha * ad - np.conj(alpha) * a))
    for U in ops:
        rho = U @ rho @ U.conj().T
    rho = rho[:n, :n]
    if _tail_mass(rho) >= TAIL_LIMIT or abs(np.trace(rho).real - 1.0) > 1e-8:
        raise TruncationError(f"{n} levels cannot hold this state (tail {_tail_mass(rho):.2e})")
    rho = rho / np.trace(rho).real
    return 0.5 * (rho + rho.conj().T)


def fock_state(k, n):
    rho = np.zeros((n, n), dtype=complex)
    rho[k, k] = 1.0
    return rho


def moments(rho):
    """Mean ``(<x>, <p>)`` and symmetrised covariance of a single mode."""
    x, p = quadratures(rho.shape[0])
    return _moments(rho, [x, p])


def _moments(rho, ops):
    mean = np.array([np.trace(rho @ o).real for o in ops])
    k = len(ops)
    cov = np.empty((k, k))
    for i in range(k):
        for j in range(i, k):
            sym = 0.5 * np.trace(rho @ (ops[i] @ ops[j] + ops[j] @ ops[i])).real
            cov[i, j] = cov[j, i] = sym - mean[i] * mean[j]
    return mean, cov


# -- spectral quantities ----------------------------------------------------

def _spectrum(rho):
    return np.clip(np.linalg.eigvalsh(0.5 * (rho + rho.conj().T)), 0.0, None)


def _shannon(p):
    p = p[p > 0]
    return float(-np.sum(p * np.log(p)))


def mean_photon(rho):
    return float(np.sum(np.arange(rho.shape[0]) * np.real(np.diag(rho))))


def entropy_fock(rho):
    return _shannon(_spectrum(rho))


def ergotropy_fock(rho, omega):
    """Energy minus the energy of the passive state (descending spectrum on ascending levels)."""
    n = rho.shape[0]
    levels = omega * np.arange(n)
    energy = float(np.sum(levels * np.real(np.diag(rho))))
    passive = float(np.sum(levels * np.sort(_spectrum(rho))[::-1]))
    return energy - passive


def coherence_fock(rho):
    """Relative entropy of coherence in the number basis, ``S(diag rho) - S(rho)``."""
    return _shannon(np.clip(np.real(np.diag(rho)), 0.0, None)) - entropy_fock(rho)


def thermal_relative_entropy(rho, nbar):
    """``S(rho || tau)`` for the truncated thermal state ``tau`` with parameter ``nbar``."""
    k = np.arange(rho.shape[0])
    log_tau = k * np.log(nbar / (nbar + 1.0)) - np.log(nbar + 1.0)
    return -entropy_fock(rho) - float(np.sum(np.real(np.diag(rho)) * log_tau))


def gaussian_coherence_fock(rho):
    """Smallest relative entropy between ``rho`` and any thermal state.

    Thermal states are the incoherent Gaussian states, so this is the
    Gaussian relative entropy of coherence, found here by a bounded scalar
    search rather than any closed form.
    """
    n0 = mean_photon(rho)
    if n0 < 1e-14:
        return 0.0
    res = minimize_scalar(
        lambda u: thermal_relative_entropy(rho, np.exp(u)),
        bounds=(np.log(n0) - 5.0, np.log(n0) + 5.0),
        method="bounded",
        options={"xatol": 1e-12},
    )
    return float(res.fun)


# -- two-mode evolution -----------------------------------------------------

def product(rho1, rho2):
    return np.kron(rho1, rho2)


def partial_trace(rho, dims, keep):
    """Reduced density matrix of mode ``keep`` (1 or 2) of a two-mode state."""
    n1, n2 = dims
    r = rho.reshape(n1, n2, n1, n2)
    if keep == 1:
        return np.einsum("ajbj->ab", r)
    if keep == 2:
        return np.einsum("iaib->ab", r)
    raise ValueError("keep must be 1 or 2")


def two_mode_moments(rho, dims):
    """Means ``(x1, p1, x2, p2)`` and the 4x4 covariance of a two-mode state."""
    a1, a2 = two_mode_operators(*dims)
    ops = []
    for a in (a1, a2):
        ad = a.conj().T
        ops += [a + ad, 1j * (ad - a)]
    return _moments(rho, ops)


def _check_overflow(rho, dims):
    for mode in (1, 2):
        red = partial_trace(rho, dims, mode)
        if dims[mode - 1] > 1 and np.real(red[-1, -1]) > OVERFLOW_LIMIT:
            raise TruncationError(
                f"mode {mode} top-level population {np.real(red[-1, -1]):.2e} exceeds {OVERFLOW_LIMIT:g}"
            )


def _dissipator(rho, a, ad, gamma, n_th):
    up = 0.5 * gamma * n_th * (2 * ad @ rho @ a - a @ ad @ rho - rho @ a @ ad)
    down = 0.5 * gamma * (n_th + 1.0) * (2 * a @ rho @ ad - ad @ a @ rho - rho @ ad @ a)
    return up + down


def evolve_fock(h, rho0, t, dims, gamma=0.0, n_th=0.0, dt=1e-3):
    """Evolve a two-mode density matrix to time(s) ``t``.

    The closed case applies ``exp(-iHt)`` built from the eigenbasis of the
    dense Hamiltonian. With ``gamma > 0`` the master equation, with thermal
    damping acting on the charger, is stepped with fixed-step RK4.

    Parameters
    ----------
    h : HamiltonianParams
    rho0 : ndarray
        Initial ``(n1*n2, n1*n2)`` density matrix.
    t : float or sequence of float
        Target time, or an increasing sequence of them.
    dims : tuple of int
        Truncations ``(n1, n2)``.

    Returns
    -------
    ndarray or list of ndarray
        One density matrix per requested time.
    """
    scalar = np.ndim(t) == 0
    targets = np.atleast_1d(np.asarray(t, dtype=float))
    if np.any(np.diff(targets) < 0) or targets[0] < 0:
        raise ValueError("times must be non-negative and increasing")
    H = hamiltonian(h, *dims)
    out = []
    if gamma == 0:
        E, V = np.linalg.eigh(H)
        rv = V.conj().T @ rho0 @ V
        for tk in targets:
            ph = np.exp(-1j * E * tk)
            rho = V @ (ph[:, None] * rv * ph.conj()[None, :]) @ V.conj().T
            _check_overflow(rho, dims)
            out.append(rho)
    else:
        a, _ = two_mode_operators(*dims)
        ad = a.conj().T

        def rhs(r):
            return -1j * (H @ r - r @ H) + _dissipator(r, a, ad, gamma, n_th)

        rho = np.array(rho0, dtype=complex)
        now = 0.0
        for tk in targets:
            span = tk - now
            if span > 0:
                n = int(np.ceil(span / dt - 1e-12))
                step = span / n
                for _ in range(n):
                    k1 = rhs(rho)
                    k2 = rhs(rho + 0.5 * step * k1)
                    k3 = rhs(rho + 0.5 * step * k2)
                    k4 = rhs(rho + step * k3)
                    rho = rho + (step / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
                now = tk
            _check_overflow(rho, dims)
            out.append(0.5 * (rho + rho.conj().T))
    return out[0] if scalar else out
