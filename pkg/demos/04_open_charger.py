"""
A charger in contact with a heat bath
=====================================

Damping the charger into a thermal reservoir washes out the correlations
that produce ergotropy. The stored work decays and the pair relaxes to the
fixed point of the Lyapunov equation.
"""

import numpy as np

from lcbattery import (
    EvolutionSpec,
    Stability,
    build_diffusion,
    build_drift,
    ergotropy,
    hamiltonian_from_frequencies,
    product_state,
    propagate,
    reduce,
    stability_check,
    steady_state,
    thermal,
    time_grid,
)

gamma, n_th = 0.1, 4.0
h = hamiltonian_from_frequencies(1.0, 1.3, -0.37, 0.7)
A, D = build_drift(h, gamma), build_diffusion(gamma, n_th)
print("stability:", stability_check(A).name, " decay rates:", np.round(-np.linalg.eigvals(A).real, 5))

traj = propagate(EvolutionSpec(h, time_grid(400.0, 0.05), gamma, n_th), product_state(thermal(4.0)))
for t in (0, 10, 50, 100, 200, 400):
    i = int(round(t / 0.05))
    print(f"t = {t:3d}: E1 = {traj['E1'][i]:7.3f}  E2 = {traj['E2'][i]:7.3f}  Ee = {traj['Ee'][i]:.4f}  C = {traj['C'][i]:.4f}")

# The fixed point is close to, but not exactly, thermal: with counter-rotating
# terms present the battery keeps a little squeezing.
ss = steady_state(A, D)
print("steady-state battery ergotropy:", ergotropy(reduce(ss, 2), 1.3))
print("distance from the steady state at t = 400:", np.abs(traj.covs[-1] - ss.cov).max())

rotating = hamiltonian_from_frequencies(1.0, 1.3, 0.7, 0.7)
ss_rot = steady_state(build_drift(rotating, gamma), D)
print("rotating-only fixed point is thermal:", np.allclose(ss_rot.cov, (2 * n_th + 1) * np.eye(4)))
assert stability_check(build_drift(rotating, gamma)) is Stability.STABLE_OPEN
