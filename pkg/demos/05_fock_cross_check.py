"""
Checking the Gaussian engine in Fock space
==========================================

The same evolution computed with truncated number-basis matrices, without
any Gaussian shortcut, reproduces the covariance-matrix results.
"""

import numpy as np

from lcbattery import (
    EvolutionSpec,
    coherent,
    fock,
    hamiltonian_from_frequencies,
    product_state,
    propagate,
)

n = 40
dims = (n, n)
h = hamiltonian_from_frequencies(1.0, 1.3, -0.57, 0.7)
charger = coherent(1.0)
times = [0.5, 1.0, 1.5, 2.0]

traj = propagate(EvolutionSpec(h, [0.0] + times), product_state(charger))
rho0 = fock.product(fock.gaussian_to_fock(charger.mean, charger.cov, n), fock.fock_state(0, n))

print("   t        E2 (gauss / fock)          Ee (gauss / fock)           C (gauss / fock)")
for k, rho in enumerate(fock.evolve_fock(h, rho0, times, dims), start=1):
    battery = fock.partial_trace(rho, dims, 2)
    e2 = 1.3 * fock.mean_photon(battery)
    ee = fock.ergotropy_fock(battery, 1.3)
    c = fock.gaussian_coherence_fock(battery)
    print(f"{times[k - 1]:4.1f}  {traj['E2'][k]:.8f} / {e2:.8f}  {traj['Ee'][k]:.8f} / {ee:.8f}  "
          f"{traj['C'][k]:.8f} / {c:.8f}")

# The relative entropy of coherence in the number basis is a different
# measure: for a coherent state it is the entropy of its Poisson photon
# distribution, below the Gaussian value.
rho = fock.gaussian_to_fock([4.0, 0.0], np.eye(2), 60)
print("number-basis coherence of |2>:", fock.coherence_fock(rho))
print("Gaussian coherence of |2>:    ", fock.gaussian_coherence_fock(rho))
