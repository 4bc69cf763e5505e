"""
Charge suppression by flux leaking into an ER = EPR wormhole.

An entangled point charge loses a fraction of its field flux into the
wormhole, so an observer outside sees the charge divided by ``1 + x`` with
``x = s / (pi alpha^2)``. Everything downstream depends on ``(s, alpha)``
only through ``x``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .constants import PhysicalConstants, StableShift, pow_shift
from .exceptions import ValidationError

__all__ = [
    "Topology",
    "SuppressionConfig",
    "EffectiveCharges",
    "suppression_factor",
    "effective_charges",
    "flux_balance",
]


class Topology(str, Enum):
    NONTRAVERSABLE = "nontraversable"
    TRAVERSABLE = "traversable"

    def __str__(self):
        return self.value


def parse_topology(value) -> Topology:
    try:
        return Topology(str(value).lower())
    except ValueError:
        raise ValidationError(f"unknown topology {value!r}") from None


@dataclass(frozen=True)
class SuppressionConfig:
    """One parameter point of the model: entropy (nats), alpha, topology."""

    entropy: float
    alpha: float
    topology: Topology = Topology.NONTRAVERSABLE

    def __post_init__(self):
        if not (self.entropy >= 0 and math.isfinite(self.entropy)):
            raise ValidationError(f"entropy must be finite and >= 0, got {self.entropy!r}")
        if not (self.alpha > 0):
            raise ValidationError(f"alpha must be > 0, got {self.alpha!r}")
        if not isinstance(self.topology, Topology):
            object.__setattr__(self, "topology", parse_topology(self.topology))

    @property
    def x(self) -> float:
        return suppression_factor(self)

    @classmethod
    def from_x(cls, x: float, topology=Topology.NONTRAVERSABLE) -> "SuppressionConfig":
        """Config with ``alpha = 1`` and the entropy chosen to give ``x``."""
        return cls(entropy=math.pi * x, alpha=1.0, topology=topology)


@dataclass(frozen=True)
class EffectiveCharges:
    """Effective electron and proton charges in coulombs (signed bases)."""

    electron: StableShift
    proton: StableShift

    @property
    def net(self) -> float:
        """Total charge seen from outside, in coulombs."""
        # base_p = -base_e = e, so the bases cancel exactly
        return self.proton.absolute_delta + self.electron.absolute_delta


def suppression_factor(config: SuppressionConfig) -> float:
    """Return ``x = s / (pi alpha^2)``; fields are divided by ``1 + x``."""
    if math.isinf(config.alpha):
        return 0.0
    # alpha**2 overflows for alpha > ~1e154; dividing twice keeps x finite
    return config.entropy / math.pi / config.alpha / config.alpha


def effective_charges(config: SuppressionConfig, constants: PhysicalConstants) -> EffectiveCharges:
    x = suppression_factor(config)
    e = constants.elementary_charge
    delta = pow_shift(x, -1)
    electron = StableShift(-e, delta)
    if config.topology is Topology.TRAVERSABLE:
        # flux entering at the electron re-emerges at the proton: e'' = e + (e' - e)
        proton = StableShift(e, delta)
    else:
        proton = StableShift(e, 0.0)
    return EffectiveCharges(electron=electron, proton=proton)


def flux_balance(charge: float, config: SuppressionConfig, constants: PhysicalConstants) -> tuple[float, float]:
    """Split the Gauss-law flux ``q / eps0`` into surface and wormhole parts.

    Returns ``(surface_flux, wormhole_flux)`` in V*m.
    """
    x = suppression_factor(config)
    total = charge / constants.vacuum_permittivity
    # x/(1+x) = -((1+x)^-1 - 1)
    leaked = -pow_shift(x, -1)
    wormhole = total * leaked
    surface = total - wormhole
    return surface, wormhole
