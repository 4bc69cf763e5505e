"""
Modified hydrogen spectrum: Bohr levels, Bohr radius, hyperfine transitions.

The electron-proton Coulomb product ``e e'`` (or ``e' e''`` for a
traversable wormhole) is reduced by one (two) powers of ``1 + x``. Energies
scale with the square of that product and the Bohr radius inversely with
it. The hyperfine split picks up the suppression only through ``a0**3``.

Only the ``|j=0,m=0>`` and ``|j=1,m=0>`` spin states are entangled, which
splits the 21-cm line into three transitions, see :class:`TransitionKind`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .constants import PhysicalConstants, StableShift, pow_shift
from .exceptions import DomainError, ValidationError
from .suppression import SuppressionConfig, Topology, suppression_factor

__all__ = [
    "TransitionKind",
    "TransitionResult",
    "bohr_energy",
    "bohr_radius",
    "hyperfine_base",
    "hyperfine_transition",
    "all_transitions",
    "line_splitting",
    "energy_to_wavelength",
    "charge_product_power",
    "hyperfine_exponent",
]

# Wavelength of the 21-cm line as measured (cm); used only as a cross-check.
MEASURED_21CM_WAVELENGTH = 21.106114054160


class TransitionKind(str, Enum):
    SINGLET_TO_ENTANGLED_TRIPLET = "singlet_to_entangled_triplet"
    SINGLET_TO_UNENTANGLED_TRIPLET = "singlet_to_unentangled_triplet"
    ENTANGLED_TRIPLET_TO_UNENTANGLED_TRIPLET = "entangled_triplet_to_unentangled_triplet"

    def __str__(self):
        return self.value


def charge_product_power(topology: Topology) -> int:
    """Powers of ``1/(1+x)`` in the Coulomb charge product."""
    return 2 if topology is Topology.TRAVERSABLE else 1


def hyperfine_exponent(topology: Topology) -> int:
    """Exponent ``p`` in the hyperfine factor ``F(x) = (1+x)**-p``."""
    return 3 * charge_product_power(topology)


@dataclass(frozen=True)
class TransitionResult:
    """One hyperfine transition, with its shift kept separate from the standard value.

    Energies are in eV, wavelengths in cm. ``relative_delta`` is the shift
    measured in units of the unmodified split ``reference_energy``, so that

        energy = reference_energy * (standard_coefficient + relative_delta)

    with ``standard_coefficient`` 1 for the singlet-origin lines and 0 for the
    triplet-triplet line, which is degenerate without entanglement effects.
    ``energy`` is stored separately because that sum loses all precision
    once the suppression is strong (``relative_delta`` near -1).
    """

    kind: TransitionKind
    reference_energy: float
    standard_coefficient: float
    relative_delta: float
    energy: float
    wavelength: float
    wavelength_shift_from_21cm: float

    @property
    def standard_energy(self) -> float:
        return self.reference_energy * self.standard_coefficient

    @property
    def energy_shift(self) -> float:
        return self.reference_energy * self.relative_delta

    @property
    def stable_energy(self) -> StableShift:
        """The energy as a ``StableShift`` on the unmodified split.

        Meaningful as ``base*(1+delta)`` only for the singlet-origin lines.
        """
        return StableShift(self.reference_energy, self.relative_delta)

    @property
    def degenerate(self) -> bool:
        return self.energy == 0.0


def _unmodified_bohr_energy(n, constants):
    return -constants.rydberg_energy_ev / n**2


def bohr_energy(n: int, config: SuppressionConfig, constants: PhysicalConstants) -> StableShift:
    """Energy of level ``n`` in eV, as a shift on the ordinary Bohr level."""
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise ValidationError(f"principal quantum number must be an integer >= 1, got {n!r}")
    x = suppression_factor(config)
    power = 2 * charge_product_power(config.topology)
    return StableShift(_unmodified_bohr_energy(int(n), constants), pow_shift(x, -power))


def bohr_radius(config: SuppressionConfig, constants: PhysicalConstants) -> StableShift:
    """Bohr radius in metres; grows as ``(1+x)`` or ``(1+x)**2``."""
    x = suppression_factor(config)
    return StableShift(constants.bohr_radius, pow_shift(x, charge_product_power(config.topology)))


def hyperfine_base(constants: PhysicalConstants, bohr_radius_m: float | None = None) -> float:
    """Unmodified ground-state hyperfine split in eV (leading-order formula).

    ``bohr_radius_m`` overrides ``a0``; only the cubic radius dependence is
    affected by the wormhole, the magnetic moments are not.
    """
    c = constants
    a0 = c.bohr_radius if bohr_radius_m is None else bohr_radius_m
    joule = (
        c.reduced_planck**2
        * c.proton_g_factor
        * c.elementary_charge**2
        / (3 * math.pi * c.vacuum_permittivity * c.proton_mass * c.electron_mass * c.light_speed**2 * a0**3)
    )
    return joule / c.elementary_charge


def energy_to_wavelength(energy: float, constants: PhysicalConstants) -> float:
    """Photon wavelength in cm for an energy in eV."""
    if not energy > 0:
        raise DomainError(f"wavelength needs a positive energy, got {energy!r}")
    return constants.hc_ev_cm / energy


def hyperfine_transition(
    kind: TransitionKind | str, config: SuppressionConfig, constants: PhysicalConstants
) -> TransitionResult:
    """Energy and wavelength of one of the three split hyperfine lines.

    With ``F(x) = (1+x)**-p`` (p = 3, or 6 for a traversable wormhole):

    * singlet -> entangled triplet:    ``F``
    * singlet -> unentangled triplet:  ``1/4 + 3/4 F``
    * entangled -> unentangled triplet: ``1/4 (1 - F)``

    in units of the unmodified split. The last line has zero energy and an
    infinite wavelength when ``x = 0``.
    """
    kind = TransitionKind(kind)
    x = suppression_factor(config)
    p = hyperfine_exponent(config.topology)
    f_minus_one = pow_shift(x, -p)
    # F itself, accurate even when F - 1 rounds to -1 at large x
    f = math.exp(-p * math.log1p(x))
    base = hyperfine_base(constants)
    line_21cm = energy_to_wavelength(base, constants)

    if kind is TransitionKind.SINGLET_TO_ENTANGLED_TRIPLET:
        coeff, delta, energy = 1.0, f_minus_one, base * f
        # lambda = lambda_21 (1+x)^p
        shift = line_21cm * pow_shift(x, p)
    elif kind is TransitionKind.SINGLET_TO_UNENTANGLED_TRIPLET:
        coeff, delta, energy = 1.0, 0.75 * f_minus_one, base * (0.25 + 0.75 * f)
        shift = line_21cm * pow_shift(0.75 * f_minus_one, -1)
    else:
        coeff, delta = 0.0, -0.25 * f_minus_one
        energy = base * delta
        shift = None

    if shift is not None:
        wavelength = line_21cm + shift
    elif energy > 0.0:
        wavelength = energy_to_wavelength(energy, constants)
        shift = wavelength - line_21cm
    else:
        wavelength = shift = math.inf
    return TransitionResult(
        kind=kind,
        reference_energy=base,
        standard_coefficient=coeff,
        relative_delta=delta,
        energy=energy,
        wavelength=wavelength,
        wavelength_shift_from_21cm=shift,
    )


def all_transitions(config: SuppressionConfig, constants: PhysicalConstants) -> list[TransitionResult]:
    return [hyperfine_transition(kind, config, constants) for kind in TransitionKind]


def line_splitting(config: SuppressionConfig, constants: PhysicalConstants) -> float:
    """Wavelength gap (cm) between the two singlet-origin lines.

    Returned as ``lambda(singlet->entangled) - lambda(singlet->unentangled)``,
    which is >= 0 because the fully entangled line is suppressed more.
    """
    ent = hyperfine_transition(TransitionKind.SINGLET_TO_ENTANGLED_TRIPLET, config, constants)
    unent = hyperfine_transition(TransitionKind.SINGLET_TO_UNENTANGLED_TRIPLET, config, constants)
    return ent.wavelength_shift_from_21cm - unent.wavelength_shift_from_21cm
