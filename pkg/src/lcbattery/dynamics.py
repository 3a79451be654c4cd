"""
Moment dynamics of the charger-battery system.

Under the quadratic Hamiltonian and the charger's thermal damping the
first moments and covariance obey

    dm/dt = A m,        dsigma/dt = A sigma + sigma A^T + D

with drift ``A`` and diffusion ``D``. The closed-form propagator works in
the eigenbasis of ``A``; its characteristic polynomial is the quartic that
a Laplace-transform treatment of the Heisenberg equations produces. A
fixed-step RK4 integrator is kept alongside, both as an independent check
and as the fallback when ``A`` is defective.
"""

import enum
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import solve_continuous_lyapunov

from .gaussian import EMPTY_ENERGY, GaussianState, observables_arrays, symplectic_form

#: Abort threshold on covariance entries (runaway in the deep-strong-coupling regime).
DIVERGENCE_BOUND = 1e12
RK4_DT = 1e-3
_COND_LIMIT = 1e8

OBSERVABLE_FIELDS = ("E1", "E2", "Ee", "Ei", "R", "S", "C")


class DivergenceError(RuntimeError):
    """Moments blew up; the coupling is past the point of stability."""


class Stability(enum.Enum):
    STABLE_CLOSED = "stable-closed"
    STABLE_OPEN = "stable-open"
    UNSTABLE = "unstable"


def build_drift(h, gamma=0.0):
    """Drift matrix for ordering ``(x1, p1, x2, p2)``.

    From ``H = w1 (x1^2+p1^2)/4 + w2 (x2^2+p2^2)/4 + g x1 x2 - G p1 p2`` and
    ``[x, p] = 2i``, together with amplitude damping of the charger at rate
    ``gamma``.
    """
    if gamma < 0:
        raise ValueError(f"gamma must be non-negative, got {gamma!r}")
    w1, w2, g, G = h.omega1, h.omega2, h.g, h.G
    d = -gamma / 2.0
    return np.array(
        [
            [d, w1, 0.0, -2.0 * G],
            [-w1, d, -2.0 * g, 0.0],
            [0.0, -2.0 * G, 0.0, w2],
            [-2.0 * g, 0.0, -w2, 0.0],
        ]
    )


def build_diffusion(gamma, n_th):
    """Diffusion matrix; only the charger couples to the reservoir."""
    if gamma < 0 or n_th < 0:
        raise ValueError("gamma and n_th must be non-negative")
    return np.diag([gamma * (2.0 * n_th + 1.0)] * 2 + [0.0, 0.0])


@dataclass(frozen=True, eq=False)
class EvolutionSpec:
    """Everything that fixes a trajectory apart from the initial state."""

    h: object
    times: np.ndarray
    gamma: float = 0.0
    n_th: float = 0.0

    def __post_init__(self):
        t = np.atleast_1d(np.asarray(self.times, dtype=float))
        if t.ndim != 1 or t.size == 0:
            raise ValueError("times must be a non-empty 1-D grid")
        if t[0] < 0 or np.any(np.diff(t) <= 0):
            raise ValueError("times must be non-negative and strictly increasing")
        if self.gamma < 0 or self.n_th < 0:
            raise ValueError("gamma and n_th must be non-negative")
        t.setflags(write=False)
        object.__setattr__(self, "times", t)

    @property
    def closed(self):
        return self.gamma == 0

    @property
    def drift(self):
        return build_drift(self.h, self.gamma)

    @property
    def diffusion(self):
        return build_diffusion(self.gamma, self.n_th)


def time_grid(tmax, dt):
    """Uniform grid ``0, dt, ..., tmax`` (``tmax`` included when it is a multiple of ``dt``)."""
    if tmax < 0 or dt <= 0:
        raise ValueError("need tmax >= 0 and dt > 0")
    n = int(math.floor(tmax / dt + 1e-9))
    return np.arange(n + 1) * dt


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Sampled moments along a run, with observable columns computed on demand."""

    spec: EvolutionSpec
    means: np.ndarray
    covs: np.ndarray
    _obs: dict = field(default=None, repr=False)

    @property
    def times(self):
        return self.spec.times

    def __len__(self):
        return len(self.times)

    def state(self, i):
        return GaussianState(self.means[i], 0.5 * (self.covs[i] + self.covs[i].T))

    @property
    def obs(self):
        if self._obs is None:
            object.__setattr__(self, "_obs", observables_arrays(self.means, self.covs, self.spec.h))
        return self._obs

    def __getitem__(self, name):
        return self.obs[name]


# -- propagators ------------------------------------------------------------

def _integral_factor(s, t):
    """``(exp(s t) - 1) / s`` with the ``s -> 0`` limit handled."""
    st = s * t
    small = np.abs(st) < 1e-8
    safe = np.where(small, 1.0, s)
    return np.where(small, t * (1.0 + st / 2.0), (np.exp(st) - 1.0) / safe)


def _propagate_eigen(A, D, m0, s0, times):
    lam, V = np.linalg.eig(A)
    if np.linalg.cond(V) > _COND_LIMIT:
        return None
    Vinv = np.linalg.inv(V)
    expo = np.exp(np.outer(times, lam))  # (T, 4)
    phi = np.einsum("ij,tj,jk->tik", V, expo, Vinv)
    means = np.einsum("tij,j->ti", phi, m0).real
    covs = np.einsum("tij,jk,tlk->til", phi, s0, phi).real
    if np.any(D):
        W = Vinv @ D @ Vinv.T
        F = _integral_factor(lam[:, None] + lam[None, :], times[:, None, None])
        covs = covs + np.einsum("ij,tjk,lk->til", V, W * F, V).real
    at_start = times == 0
    means[at_start], covs[at_start] = m0, s0
    return means, 0.5 * (covs + np.swapaxes(covs, 1, 2))


def _rhs(A, D, m, s):
    As = A @ s
    return A @ m, As + As.T + D


def _propagate_rk4(A, D, m0, s0, times, dt):
    means = np.empty((len(times), 4))
    covs = np.empty((len(times), 4, 4))
    m, s = np.array(m0, dtype=float), np.array(s0, dtype=float)
    t = 0.0
    for i, target in enumerate(times):
        span = target - t
        if span > 0:
            n = int(math.ceil(span / dt - 1e-12))
            h = span / n
            for _ in range(n):
                k1m, k1s = _rhs(A, D, m, s)
                k2m, k2s = _rhs(A, D, m + 0.5 * h * k1m, s + 0.5 * h * k1s)
                k3m, k3s = _rhs(A, D, m + 0.5 * h * k2m, s + 0.5 * h * k2s)
                k4m, k4s = _rhs(A, D, m + h * k3m, s + h * k3s)
                m = m + (h / 6.0) * (k1m + 2 * k2m + 2 * k3m + k4m)
                s = s + (h / 6.0) * (k1s + 2 * k2s + 2 * k3s + k4s)
                if np.abs(s).max() > DIVERGENCE_BOUND:
                    raise DivergenceError(_divergence_message(t))
            t = target
        means[i], covs[i] = m, s
    return means, covs


def _divergence_message(t):
    return (
        f"covariance exceeded {DIVERGENCE_BOUND:g} by t = {t:g}: the coupling is in the "
        "deep-strong-coupling regime where energies diverge"
    )


def propagate(spec, initial, method="exact", rk4_dt=RK4_DT):
    """Evolve ``initial`` over ``spec.times``.

    Parameters
    ----------
    spec : EvolutionSpec
    initial : GaussianState
        State at ``t = 0``; the grid may start later.
    method : {"exact", "rk4"}
        ``exact`` diagonalises the drift and falls back to RK4 when the
        eigenvector matrix is ill-conditioned.
    rk4_dt : float
        Maximum RK4 step.

    Returns
    -------
    Trajectory
    """
    if not initial.is_physical():
        raise ValueError("initial state violates the uncertainty bound")
    A, D = spec.drift, spec.diffusion
    times = spec.times
    result = None
    if method == "exact":
        result = _propagate_eigen(A, D, initial.means, initial.cov, times)
    elif method != "rk4":
        raise ValueError(f"unknown method {method!r}")
    if result is None:
        result = _propagate_rk4(A, D, initial.means, initial.cov, times, rk4_dt)
    means, covs = result
    big = np.abs(covs).max(axis=(1, 2)) > DIVERGENCE_BOUND
    if not np.all(np.isfinite(covs)) or big.any():
        first = int(np.argmax(big)) if big.any() else 0
        raise DivergenceError(_divergence_message(times[first]))
    return Trajectory(spec, means, covs)


def propagator(A, t):
    """``exp(A t)`` through the eigendecomposition of ``A``."""
    lam, V = np.linalg.eig(A)
    return (V @ np.diag(np.exp(lam * t)) @ np.linalg.inv(V)).real


# -- stability and steady state ---------------------------------------------

def stability_check(A, tol=1e-9):
    """Classify the drift matrix.

    A zero trace means no damping (the closed case, where only a purely
    imaginary, semisimple spectrum is bounded); a negative trace means the
    charger is damped and every eigenvalue must sit in the left half-plane.
    """
    A = np.asarray(A, dtype=float)
    lam = np.linalg.eigvals(A)
    scale = max(1.0, np.abs(lam).max())
    if np.trace(A) < -tol * scale:
        return Stability.STABLE_OPEN if np.all(lam.real < -tol * scale) else Stability.UNSTABLE
    if np.any(np.abs(lam.real) > 1e-7 * scale):
        return Stability.UNSTABLE
    n = A.shape[0]
    for mu in lam:
        mult = int(np.sum(np.abs(lam - mu) < 1e-6 * scale))
        if mult > 1:
            rank = np.linalg.matrix_rank(A - mu * np.eye(n), tol=1e-6 * scale)
            if n - rank < mult:
                return Stability.UNSTABLE
    return Stability.STABLE_CLOSED


def steady_state(A, D):
    """Stationary state: zero means and the solution of ``A s + s A^T + D = 0``."""
    if stability_check(A) is not Stability.STABLE_OPEN:
        raise ValueError("steady state requires a damped, stable drift matrix")
    cov = solve_continuous_lyapunov(A, -np.asarray(D, dtype=float))
    return GaussianState(np.zeros(4), 0.5 * (cov + cov.T))


def is_symplectic(S, tol=1e-10):
    omega = symplectic_form(S.shape[0] // 2)
    return np.abs(S @ omega @ S.T - omega).max() <= tol


# -- trajectory post-processing ---------------------------------------------

def max_over_window(traj, name, window=None):
    """Largest sampled value of observable ``name`` and the earliest time it occurs.

    ``nan`` samples (an undefined ratio) are skipped. ``window=(t0, t1)``
    restricts the search to ``t0 <= t <= t1``.
    """
    if name not in OBSERVABLE_FIELDS:
        raise KeyError(f"unknown observable {name!r}")
    values = np.asarray(traj[name], dtype=float)
    times = traj.times
    mask = ~np.isnan(values)
    if window is not None:
        mask &= (times >= window[0]) & (times <= window[1])
    if not mask.any():
        raise ValueError(f"no defined samples of {name} in the window")
    idx = np.flatnonzero(mask)
    best = idx[np.argmax(values[idx])]
    return float(values[best]), float(times[best])


@dataclass(frozen=True)
class FrequencyReport:
    """Strongest angular frequencies of a sampled signal, strongest first."""

    frequencies: tuple
    amplitudes: tuple

    @property
    def difference(self):
        a, b = self.frequencies[:2]
        return abs(a - b)

    @property
    def sum(self):
        a, b = self.frequencies[:2]
        return a + b

    @property
    def half_difference(self):
        return self.difference / 2.0

    @property
    def half_sum(self):
        return self.sum / 2.0

    def beat(self):
        """Read the two strongest tones as a beat envelope and its carrier.

        A beat of two characteristic frequencies ``f-`` and ``f+`` shows a
        slow tone at ``(f+ - f-)/2`` and a fast one at ``(f+ + f-)/2``. Returns
        ``(f-, f+)``, whose difference is twice the slow tone and whose sum
        is twice the fast one.
        """
        slow, fast = sorted(self.frequencies[:2])
        return fast - slow, fast + slow

    def as_dict(self):
        out = {"frequencies": list(self.frequencies), "amplitudes": list(self.amplitudes)}
        if len(self.frequencies) >= 2:
            lo, hi = self.beat()
            out.update(
                difference=self.difference,
                sum=self.sum,
                half_difference=self.half_difference,
                half_sum=self.half_sum,
                beat_components=[lo, hi],
                beat_difference=hi - lo,
                beat_sum=hi + lo,
            )
        return out


def _check_uniform(times):
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or len(times) < 3:
        raise ValueError("need at least three sample times")
    steps = np.diff(times)
    dt = (times[-1] - times[0]) / (len(times) - 1)
    if dt <= 0 or np.abs(steps - dt).max() > 1e-6 * dt:
        raise ValueError("samples are not uniformly spaced")
    return dt


def dominant_frequencies(series, dt=None, count=2, times=None, pad=8):
    """Angular frequencies of the strongest spectral peaks of a real signal.

    The mean is removed and a Hann window applied before a zero-padded FFT;
    each peak is refined by fitting a parabola through the log-magnitudes
    of the three bins around it.

    Parameters
    ----------
    series : array_like
        Uniformly sampled values.
    dt : float, optional
        Sample spacing; required unless ``times`` is given.
    count : int
        Number of peaks to return.
    times : array_like, optional
        Sample times, checked for uniformity.
    pad : int
        Zero-padding factor.
    """
    y = np.asarray(series, dtype=float)
    if times is not None:
        if len(times) != len(y):
            raise ValueError("times and series differ in length")
        dt = _check_uniform(times)
    if dt is None or dt <= 0:
        raise ValueError("a positive sample spacing is required")
    if np.any(~np.isfinite(y)):
        raise ValueError("series contains undefined samples")
    y = (y - y.mean()) * np.hanning(len(y))
    nfft = int(2 ** math.ceil(math.log2(len(y) * pad)))
    mag = np.abs(np.fft.rfft(y, nfft))
    logm = np.log(mag + 1e-300)
    inner = np.arange(1, len(mag) - 1)
    peaks = inner[(mag[inner] > mag[inner - 1]) & (mag[inner] >= mag[inner + 1])]
    peaks = peaks[np.argsort(mag[peaks])[::-1]][:count]
    dw = 2.0 * np.pi / (nfft * dt)
    freqs, amps = [], []
    for k in peaks:
        a, b, c = logm[k - 1], logm[k], logm[k + 1]
        denom = a - 2.0 * b + c
        shift = 0.5 * (a - c) / denom if denom != 0 else 0.0
        freqs.append(float((k + shift) * dw))
        amps.append(float(np.exp(b - 0.25 * (a - c) * shift)))
    return FrequencyReport(tuple(freqs), tuple(amps))


def energy_bookkeeping(traj):
    """Split the battery energy into charger-sourced and interaction-sourced parts.

    With the total energy conserved, ``E2(t) = [E1(0) - E1(t)] + [Ei(0) - Ei(t)]``
    for a battery starting empty and uncorrelated. The two fractions are
    returned as arrays and are ``nan`` where the battery is empty.
    """
    if not traj.spec.closed:
        raise ValueError("energy bookkeeping requires a closed system (gamma = 0)")
    e1, e2, ei = traj["E1"], traj["E2"], traj["Ei"]
    defined = e2 > EMPTY_ENERGY
    denom = np.where(defined, e2, 1.0)
    charger = np.where(defined, (e1[0] - e1) / denom, np.nan)
    interaction = np.where(defined, (ei[0] - ei) / denom, np.nan)
    e20 = e2[0]
    if e20 <= EMPTY_ENERGY:
        total = charger + interaction
        ok = ~defined | (np.abs(total - 1.0) * e2 <= 1e-8 * max(1.0, np.abs(e1).max()))
        if not ok.all():
            raise ArithmeticError("energy bookkeeping does not close; is the trajectory conservative?")
    return charger, interaction
