"""Continuous-variable quantum battery built from two coupled LC circuits."""

from .circuit import (
    CircuitParams,
    CouplingClass,
    DomainError,
    HamiltonianParams,
    classical_electric_energy,
    classical_magnetic_energy,
    classify_coupling,
    hamiltonian_from_frequencies,
    hamiltonian_from_lc,
)
from .dynamics import (
    DivergenceError,
    EvolutionSpec,
    FrequencyReport,
    Stability,
    Trajectory,
    build_diffusion,
    build_drift,
    dominant_frequencies,
    energy_bookkeeping,
    max_over_window,
    propagate,
    stability_check,
    steady_state,
    time_grid,
)
from .gaussian import (
    GaussianState,
    Observables,
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
from .sweeps import SweepResult, SweepSpec, run_sweep, sweep_to_csv

__version__ = "0.1.0"
