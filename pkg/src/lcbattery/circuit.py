"""
Coupled LC circuits: classical energies and the map to the quantized
two-mode Hamiltonian.

Units follow hbar = 1. The frequency-first constructor
:func:`hamiltonian_from_frequencies` is the usual entry point; the
physical circuit constructor :func:`hamiltonian_from_lc` exists for
working from inductances and capacitances directly.

The interaction reads ``g (a1^+ + a1)(a2^+ + a2) + G (a1^+ - a1)(a2^+ - a2)``,
which expands to a pair-creating (counter-rotating) part of strength
``g + G`` and an excitation-exchanging (rotating) part of strength ``g - G``.
"""

import enum
import math
from dataclasses import dataclass


class DomainError(ValueError):
    """Raised when circuit or coupling parameters fall outside their domain."""


def _check_coupling(name, k):
    if not -1.0 < k < 1.0:
        raise DomainError(f"{name} must lie in the open interval (-1, 1), got {k!r}")


@dataclass(frozen=True)
class CircuitParams:
    """Inductances, capacitances and dimensionless coupling coefficients.

    The mutual inductance and capacitance are ``kL*sqrt(L1*L2)`` and
    ``kC*sqrt(C1*C2)``.
    """

    L1: float
    L2: float
    C1: float
    C2: float
    kL: float = 0.0
    kC: float = 0.0

    def __post_init__(self):
        for name in ("L1", "L2", "C1", "C2"):
            value = getattr(self, name)
            if not value > 0:
                raise DomainError(f"{name} must be positive, got {value!r}")
        _check_coupling("kL", self.kL)
        _check_coupling("kC", self.kC)

    @property
    def Lm(self):
        return self.kL * math.sqrt(self.L1 * self.L2)

    @property
    def Cm(self):
        return self.kC * math.sqrt(self.C1 * self.C2)


@dataclass(frozen=True)
class HamiltonianParams:
    """Mode frequencies and the two interaction coefficients (hbar = 1).

    Constructing this directly allows any ``g`` and ``G``, including the
    deep-strong-coupling values that the circuit constructors reject.
    """

    omega1: float
    omega2: float
    g: float = 0.0
    G: float = 0.0

    def __post_init__(self):
        if not (self.omega1 > 0 and self.omega2 > 0):
            raise DomainError(
                f"mode frequencies must be positive, got {self.omega1!r}, {self.omega2!r}"
            )

    @property
    def rotating_strength(self):
        """Coefficient of ``a1^+ a2 + a1 a2^+``."""
        return self.g - self.G

    @property
    def counter_rotating_strength(self):
        """Coefficient of ``a1^+ a2^+ + a1 a2``."""
        return self.g + self.G


class CouplingClass(enum.Enum):
    UNCOUPLED = "uncoupled"
    ROTATING_ONLY = "rotating-only"
    COUNTER_ROTATING_ONLY = "counter-rotating-only"
    MIXED = "mixed"


def _couplings(omega1, omega2, kL, kC):
    root = math.sqrt(omega1 * omega2)
    return -kL * root / 2.0, kC * root / 2.0


def hamiltonian_from_frequencies(omega1, omega2, kL, kC):
    """Hamiltonian parameters from mode frequencies and coupling coefficients.

    Parameters
    ----------
    omega1, omega2 : float
        Charger and battery angular frequencies, both positive.
    kL, kC : float
        Magnetic and electric coupling coefficients in (-1, 1).

    Returns
    -------
    HamiltonianParams
        With ``g = -kL*sqrt(omega1*omega2)/2`` and ``G = kC*sqrt(omega1*omega2)/2``.
    """
    if not (omega1 > 0 and omega2 > 0):
        raise DomainError(f"mode frequencies must be positive, got {omega1!r}, {omega2!r}")
    _check_coupling("kL", kL)
    _check_coupling("kC", kC)
    g, G = _couplings(omega1, omega2, kL, kC)
    return HamiltonianParams(float(omega1), float(omega2), g, G)


def circuit_frequency(L, C, kL, kC):
    """Dressed angular frequency ``[L C (1-kC^2)(1-kL^2)]^(-1/2)`` of one circuit."""
    return 1.0 / math.sqrt(L * C * (1.0 - kC**2) * (1.0 - kL**2))


def hamiltonian_from_lc(p):
    """Hamiltonian parameters for a pair of coupled LC circuits."""
    if not isinstance(p, CircuitParams):
        raise TypeError("expected CircuitParams")
    omega1 = circuit_frequency(p.L1, p.C1, p.kL, p.kC)
    omega2 = circuit_frequency(p.L2, p.C2, p.kL, p.kC)
    g, G = _couplings(omega1, omega2, p.kL, p.kC)
    return HamiltonianParams(omega1, omega2, g, G)


def classify_coupling(h, tol=1e-12):
    """Which of the rotating and counter-rotating terms are present.

    A term counts as absent when its strength is below ``tol`` times the
    larger of ``|g|`` and ``|G|``. Both coefficients below ``tol`` in
    absolute value means the modes are uncoupled.
    """
    scale = max(abs(h.g), abs(h.G))
    if scale <= tol:
        return CouplingClass.UNCOUPLED
    no_counter = abs(h.counter_rotating_strength) <= tol * scale
    no_rotating = abs(h.rotating_strength) <= tol * scale
    if no_counter and no_rotating:
        return CouplingClass.UNCOUPLED
    if no_counter:
        return CouplingClass.ROTATING_ONLY
    if no_rotating:
        return CouplingClass.COUNTER_ROTATING_ONLY
    return CouplingClass.MIXED


def _coupled_energy(u1, u2, a1, a2, am, what):
    det = a1 * a2 - am**2
    if det <= 0:
        raise ZeroDivisionError(f"singular {what} coupling: self terms product <= mutual term squared")
    return (a1 * u2**2 + a2 * u1**2) / (2.0 * det) - am * u1 * u2 / det


def classical_magnetic_energy(phi1, phi2, L1, L2, Lm):
    """Magnetic energy of two coupled coils in terms of their fluxes."""
    return _coupled_energy(phi1, phi2, L1, L2, Lm, "inductive")


def classical_electric_energy(q1, q2, C1, C2, Cm):
    """Electric energy of two coupled capacitors in terms of their charges."""
    return _coupled_energy(q1, q2, C1, C2, Cm, "capacitive")
