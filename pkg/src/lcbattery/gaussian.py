"""
Two-mode Gaussian states and the battery observables.

Quadratures are ``x = a + a^+`` and ``p = i(a^+ - a)`` so that the vacuum
covariance matrix is the identity and a single-mode state is pure exactly
when the determinant of its covariance block is one. Mode 1 is the
charger, mode 2 the battery; the phase-space ordering is
``(x1, p1, x2, p2)``.

Entropies and coherences are in nats.
"""

from dataclasses import dataclass

import numpy as np

#: Width of the window below 1 in which a symplectic eigenvalue is clamped to 1.
NU_CLAMP = 1e-9
#: Battery energies at or below this are treated as empty (ratio undefined).
EMPTY_ENERGY = 1e-12


class UnphysicalStateError(ValueError):
    """Raised when a covariance matrix violates the uncertainty bound."""


def _frozen(a, shape, name):
    a = np.array(a, dtype=float)
    if a.shape != shape:
        raise ValueError(f"{name} must have shape {shape}, got {a.shape}")
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class SingleModeState:
    """Mean ``(<x>, <p>)`` and 2x2 covariance of one mode."""

    mean: np.ndarray
    cov: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "mean", _frozen(self.mean, (2,), "mean"))
        object.__setattr__(self, "cov", _frozen(self.cov, (2, 2), "cov"))
        if not np.allclose(self.cov, self.cov.T, rtol=0, atol=1e-12 * max(1.0, np.abs(self.cov).max())):
            raise ValueError("covariance matrix must be symmetric")


@dataclass(frozen=True, eq=False)
class GaussianState:
    """First moments and 4x4 covariance of the charger-battery system."""

    means: np.ndarray
    cov: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "means", _frozen(self.means, (4,), "means"))
        object.__setattr__(self, "cov", _frozen(self.cov, (4, 4), "cov"))
        if not np.allclose(self.cov, self.cov.T, rtol=0, atol=1e-12 * max(1.0, np.abs(self.cov).max())):
            raise ValueError("covariance matrix must be symmetric")

    def symplectic_eigenvalues(self):
        """Symplectic spectrum of the full covariance matrix, ascending."""
        ev = np.linalg.eigvals(1j * symplectic_form(2) @ self.cov)
        return np.sort(np.abs(ev))[::2]

    def is_physical(self, tol=NU_CLAMP):
        return bool(self.symplectic_eigenvalues()[0] >= 1.0 - tol)


@dataclass(frozen=True)
class Observables:
    """Battery-side observables at one instant.

    ``R`` is ``nan`` when the battery is empty, which keeps it out of maxima.
    """

    E1: float
    E2: float
    Ee: float
    Ei: float
    R: float
    S: float
    C: float


def symplectic_form(n_modes):
    """Block-diagonal ``[[0, 1], [-1, 0]]`` form; ``[r_i, r_j] = 2i Omega_ij``."""
    return np.kron(np.eye(n_modes), np.array([[0.0, 1.0], [-1.0, 0.0]]))


# -- constructors -----------------------------------------------------------

def vacuum():
    return GaussianState(np.zeros(4), np.eye(4))


def coherent(alpha):
    """Single-mode coherent state ``|alpha>``."""
    alpha = complex(alpha)
    return SingleModeState([2.0 * alpha.real, 2.0 * alpha.imag], np.eye(2))


def thermal(n_p):
    """Single-mode thermal state with mean photon number ``n_p``."""
    if not n_p >= 0:
        raise ValueError(f"mean photon number must be non-negative, got {n_p!r}")
    return SingleModeState(np.zeros(2), (2.0 * n_p + 1.0) * np.eye(2))


def squeezed_thermal(nu, r, phi=0.0, mean=(0.0, 0.0)):
    """Rotated, squeezed thermal state with symplectic eigenvalue ``nu``.

    The covariance is ``nu * R(phi) diag(e^{2r}, e^{-2r}) R(phi)^T``.
    """
    if nu < 1.0:
        raise UnphysicalStateError(f"symplectic eigenvalue {nu} < 1")
    c, s = np.cos(phi), np.sin(phi)
    rot = np.array([[c, -s], [s, c]])
    cov = nu * rot @ np.diag([np.exp(2 * r), np.exp(-2 * r)]) @ rot.T
    return SingleModeState(mean, 0.5 * (cov + cov.T))


def product_state(charger, battery=None):
    """Uncorrelated two-mode state; the battery defaults to vacuum."""
    if battery is None:
        battery = SingleModeState(np.zeros(2), np.eye(2))
    cov = np.zeros((4, 4))
    cov[:2, :2] = charger.cov
    cov[2:, 2:] = battery.cov
    return GaussianState(np.concatenate([charger.mean, battery.mean]), cov)


def reduce(state, mode):
    """Reduced state of mode 1 (charger) or mode 2 (battery)."""
    if mode not in (1, 2):
        raise ValueError(f"mode must be 1 or 2, got {mode!r}")
    sl = slice(2 * mode - 2, 2 * mode)
    return SingleModeState(state.means[sl], state.cov[sl, sl])


# -- vectorised kernels -----------------------------------------------------
# These act on the trailing axes so that whole trajectories can be processed
# at once; the public single-state functions below are thin wrappers.

def _nbar(mean, cov):
    return (cov[..., 0, 0] + cov[..., 1, 1] + mean[..., 0] ** 2 + mean[..., 1] ** 2 - 2.0) / 4.0


def _nu(cov):
    det = cov[..., 0, 0] * cov[..., 1, 1] - cov[..., 0, 1] * cov[..., 1, 0]
    nu = np.sqrt(np.maximum(det, 0.0))
    if np.any(nu < 1.0 - NU_CLAMP):
        worst = float(np.min(nu))
        raise UnphysicalStateError(f"symplectic eigenvalue {worst!r} violates the bound nu >= 1")
    return np.maximum(nu, 1.0)


def _xlogx(x):
    x = np.asarray(x, dtype=float)
    safe = np.where(x > 0, x, 1.0)
    return np.where(x > 0, x * np.log(safe), 0.0)


def _entropy_nu(nu):
    return _xlogx((nu + 1.0) / 2.0) - _xlogx((nu - 1.0) / 2.0)


def _thermal_entropy(nbar):
    nbar = np.maximum(nbar, 0.0)
    return _xlogx(nbar + 1.0) - _xlogx(nbar)


def _ergotropy(mean, cov, omega):
    ee = omega * (_nbar(mean, cov) - (_nu(cov) - 1.0) / 2.0)
    # roundoff can push a passive state a hair below zero
    return np.where(ee < 0, np.where(ee >= -NU_CLAMP, 0.0, ee), ee)


def _coherence(mean, cov):
    c = _thermal_entropy(_nbar(mean, cov)) - _entropy_nu(_nu(cov))
    return np.where(np.abs(c) <= NU_CLAMP, np.abs(c), c)


def _ratio(ee, e2):
    e2 = np.asarray(e2, dtype=float)
    return np.where(e2 > EMPTY_ENERGY, ee / np.where(e2 > EMPTY_ENERGY, e2, 1.0), np.nan)


def _interaction(means, cov, g, G):
    xx = cov[..., 0, 2] + means[..., 0] * means[..., 2]
    pp = cov[..., 1, 3] + means[..., 1] * means[..., 3]
    return g * xx - G * pp


# -- single-state observables -----------------------------------------------

def mean_photon(s):
    """Mean photon number ``<a^+ a>`` of a single-mode state."""
    return float(_nbar(s.mean, s.cov))


def mode_energy(s, omega):
    return omega * mean_photon(s)


def symplectic_eigenvalue(s):
    """``sqrt(det cov)``, clamped to 1 inside the roundoff window.

    Raises
    ------
    UnphysicalStateError
        If the value is below ``1 - 1e-9``.
    """
    return float(_nu(s.cov))


def passive_energy(s, omega):
    """Energy of the passive (thermal) state sharing ``s``'s spectrum."""
    return omega * (symplectic_eigenvalue(s) - 1.0) / 2.0


def ergotropy(s, omega):
    return float(_ergotropy(s.mean, s.cov, omega))


def ergotropy_ratio(s, omega):
    """Fraction of the mode energy that is extractable; ``nan`` for an empty mode."""
    return float(_ratio(ergotropy(s, omega), mode_energy(s, omega)))


def entropy(s):
    """Von Neumann entropy in nats."""
    return float(_entropy_nu(_nu(s.cov)))


def coherence(s):
    """Relative entropy of coherence with respect to Gaussian incoherent states.

    The closest incoherent Gaussian state is the thermal state with the same
    mean photon number, so the measure is ``S_th(nbar) - S(s)``.
    """
    return float(_coherence(s.mean, s.cov))


def interaction_energy(state, h):
    """Expectation value of ``g x1 x2 - G p1 p2``."""
    return float(_interaction(state.means, state.cov, h.g, h.G))


def observables_arrays(means, covs, h):
    """Observable columns for stacked states ``means[..., 4]``, ``covs[..., 4, 4]``.

    Returns a dict keyed by ``E1, E2, Ee, Ei, R, S, C``.
    """
    m1, c1 = means[..., 0:2], covs[..., 0:2, 0:2]
    m2, c2 = means[..., 2:4], covs[..., 2:4, 2:4]
    e2 = h.omega2 * _nbar(m2, c2)
    ee = _ergotropy(m2, c2, h.omega2)
    return {
        "E1": h.omega1 * _nbar(m1, c1),
        "E2": e2,
        "Ee": ee,
        "Ei": _interaction(means, covs, h.g, h.G),
        "R": _ratio(ee, e2),
        "S": _entropy_nu(_nu(c2)),
        "C": _coherence(m2, c2),
    }


def observables(state, h):
    """All battery observables of a two-mode state."""
    cols = observables_arrays(state.means, state.cov, h)
    return Observables(**{k: float(v) for k, v in cols.items()})
