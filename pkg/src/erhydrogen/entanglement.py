"""
Entanglement entropy (in nats) for the two systems the model is applied to.

* A proton-electron spin pair in a pure two-qubit state.
* Two charged particles in separate harmonic traps, coupled through the
  Coulomb interaction linearised about their equilibrium separation. The
  ground state is Gaussian, so the entropy follows from the symplectic
  eigenvalue of one particle's covariance block.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import PhysicalConstants
from .exceptions import DomainError, ValidationError

__all__ = [
    "TwoQubitState",
    "TrapPairConfig",
    "EntropyResult",
    "two_qubit_entropy",
    "oscillator_entropy",
    "gaussian_entropy",
    "coupling_ratio",
    "reference_trap_pair",
]

NORM_TOLERANCE = 1e-12


@dataclass(frozen=True)
class EntropyResult:
    entropy: float
    method: str


@dataclass(frozen=True)
class TwoQubitState:
    """Amplitudes ordered (uu, ud, du, dd), proton spin first."""

    amplitudes: tuple

    def __post_init__(self):
        amps = tuple(complex(a) for a in self.amplitudes)
        if len(amps) != 4:
            raise ValidationError(f"a two-qubit state needs 4 amplitudes, got {len(amps)}")
        object.__setattr__(self, "amplitudes", amps)

    @property
    def norm_squared(self) -> float:
        return math.fsum(abs(a) ** 2 for a in self.amplitudes)

    @classmethod
    def singlet(cls):
        r = 1 / math.sqrt(2)
        return cls((0, r, -r, 0))

    @classmethod
    def triplet_zero(cls):
        r = 1 / math.sqrt(2)
        return cls((0, r, r, 0))

    @classmethod
    def product(cls, first=(1, 0), second=(1, 0)):
        a, b = first
        c, d = second
        return cls((a * c, a * d, b * c, b * d))


def _xlogx(p):
    return 0.0 if p <= 0.0 else p * math.log(p)


def two_qubit_entropy(state: TwoQubitState) -> EntropyResult:
    """Von Neumann entropy of either spin's reduced density matrix.

    For a pure state the reduced 2x2 matrix has determinant ``|ad - bc|^2``,
    which fixes both eigenvalues.
    """
    if abs(state.norm_squared - 1.0) > NORM_TOLERANCE:
        raise ValidationError(f"state is not normalized: |psi|^2 = {state.norm_squared!r}")
    a, b, c, d = state.amplitudes
    det = abs(a * d - b * c) ** 2
    disc = math.sqrt(max(0.0, 1.0 - 4.0 * det))
    lam_max = 0.5 * (1.0 + disc)
    # small eigenvalue from the product to avoid cancellation for near-product states
    lam_min = det / lam_max
    entropy = -(_xlogx(lam_max) + _xlogx(lam_min))
    return EntropyResult(max(0.0, entropy), "qubit")


@dataclass(frozen=True)
class TrapPairConfig:
    """Two trapped charges a distance ``separation`` apart.

    Trap frequencies are the effective ones at the equilibrium position, with
    the Coulomb self-stiffness already absorbed; only the cross term
    ``-q1 q2 / (2 pi eps0 d^3) x1 x2`` couples the particles.
    """

    mass_1: float
    mass_2: float
    trap_freq_1: float
    trap_freq_2: float
    separation: float
    charge_1: float
    charge_2: float
    vacuum_permittivity: float = 8.8541878188e-12

    def __post_init__(self):
        for name in ("mass_1", "mass_2", "trap_freq_1", "trap_freq_2", "separation"):
            value = getattr(self, name)
            if not (value > 0 and math.isfinite(value)):
                raise ValidationError(f"{name} must be positive and finite, got {value!r}")
        g = coupling_ratio(self)
        if not g < 1.0:
            raise DomainError(f"coupled traps are unstable (coupling ratio {g:.6g} >= 1)")

    @property
    def coupling(self) -> float:
        """Coefficient of ``x1 x2`` in the potential energy, N/m."""
        return -self.charge_1 * self.charge_2 / (2 * math.pi * self.vacuum_permittivity * self.separation**3)

    def stiffness(self) -> np.ndarray:
        k1 = self.mass_1 * self.trap_freq_1**2
        k2 = self.mass_2 * self.trap_freq_2**2
        lam = self.coupling
        return np.array([[k1, lam], [lam, k2]])

    def swapped(self) -> "TrapPairConfig":
        return TrapPairConfig(
            self.mass_2, self.mass_1, self.trap_freq_2, self.trap_freq_1,
            self.separation, self.charge_2, self.charge_1, self.vacuum_permittivity,
        )


def coupling_ratio(config: TrapPairConfig) -> float:
    """``|lambda| / sqrt(k1 k2)``; the pair is stable iff this is below 1."""
    k1 = config.mass_1 * config.trap_freq_1**2
    k2 = config.mass_2 * config.trap_freq_2**2
    return abs(config.coupling) / math.sqrt(k1 * k2)


def gaussian_entropy(nu: float) -> float:
    """Entropy of a single-mode Gaussian state with symplectic eigenvalue ``nu``.

    ``nu = 1/2`` is a pure state (units of hbar).
    """
    if nu < 0.5:
        if nu < 0.5 - 1e-9:
            raise DomainError(f"symplectic eigenvalue {nu!r} violates the uncertainty bound")
        nu = 0.5
    return _xlogx(nu + 0.5) - _xlogx(nu - 0.5)


def _reduced_symplectic_eigenvalue(masses, stiffness):
    # mass-weighted dynamical matrix; eigenvalues are squared normal-mode frequencies
    inv_sqrt_m = 1.0 / np.sqrt(masses)
    dyn = stiffness * np.outer(inv_sqrt_m, inv_sqrt_m)
    scale = dyn[0, 0]
    w2, modes = np.linalg.eigh(dyn / scale)
    if np.any(w2 <= 0):
        raise DomainError("imaginary normal-mode frequency; configuration is unstable")
    w = np.sqrt(w2)
    # ground state in mass-weighted coordinates: <yy> = (hbar/2) W^-1, <pp> = (hbar/2) W;
    # the mass factors cancel in particle 1's <x^2><p^2>
    yy = (modes / w) @ modes.T
    pp = (modes * w) @ modes.T
    return 0.5 * math.sqrt(yy[0, 0] * pp[0, 0])


def oscillator_entropy(config: TrapPairConfig, constants: PhysicalConstants | None = None) -> EntropyResult:
    """Ground-state entanglement entropy between the two trapped particles."""
    masses = np.array([config.mass_1, config.mass_2])
    nu = _reduced_symplectic_eigenvalue(masses, config.stiffness())
    return EntropyResult(gaussian_entropy(nu), "gaussian")


def reference_trap_pair(constants: PhysicalConstants, coupling: float = 0.999, separation: float = 1e-6) -> TrapPairConfig:
    """An electron and a proton in traps ``separation`` metres apart.

    Both traps share one frequency, tuned so that the coupling ratio equals
    ``coupling``. At the defaults (1 micron, ratio 0.999, trap frequency
    about 0.5 GHz) the ground-state entropy exceeds one nat.
    """
    e = constants.elementary_charge
    lam = e * e / (2 * math.pi * constants.vacuum_permittivity * separation**3)
    reduced = math.sqrt(constants.electron_mass * constants.proton_mass)
    omega = math.sqrt(lam / (coupling * reduced))
    return TrapPairConfig(
        mass_1=constants.electron_mass,
        mass_2=constants.proton_mass,
        trap_freq_1=omega,
        trap_freq_2=omega,
        separation=separation,
        charge_1=-e,
        charge_2=e,
        vacuum_permittivity=constants.vacuum_permittivity,
    )
