import numpy as np

from lcbattery import fock
from lcbattery.gaussian import mean_photon, squeezed_thermal


def random_single_mode(rng, max_nbar=6.0):
    """Displaced squeezed thermal state with mean photon number at most ``max_nbar``."""
    while True:
        nu = 1.0 + rng.exponential(0.8)
        r = rng.uniform(0, 0.6)
        phi = rng.uniform(-np.pi, np.pi)
        mean = rng.normal(0, 1.2, size=2)
        if rng.random() < 0.25:
            mean = np.zeros(2)
        s = squeezed_thermal(nu, r, phi, mean)
        if mean_photon(s) <= max_nbar:
            return s


def random_fock_pair(rng, n=60, max_nbar=6.0):
    """A random state together with its density matrix at ``n`` levels.

    Draws that the truncation cannot hold are rejected.
    """
    while True:
        s = random_single_mode(rng, max_nbar)
        try:
            return s, fock.gaussian_to_fock(s.mean, s.cov, n)
        except fock.TruncationError:
            continue
