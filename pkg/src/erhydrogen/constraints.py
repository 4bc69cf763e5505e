"""
Lower bounds on alpha from hyperfine precision and atomic neutrality.

Bounds are the saturation points of the observational inequalities: the
alpha at which the predicted effect equals the stated precision. A smaller
alpha would produce an effect that should already have been seen.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .constants import PhysicalConstants, inv_pow_shift, pow_shift
from .exceptions import DomainError
from .spectrum import hyperfine_exponent
from .suppression import SuppressionConfig, Topology, parse_topology, suppression_factor

__all__ = [
    "AlphaBound",
    "bound_alpha_from_hyperfine",
    "bound_alpha_from_neutrality",
    "residual_charge",
    "hyperfine_relative_shift",
]

# Observational inputs quoted for hydrogen.
HYPERFINE_PRECISION = 1e-12
NEUTRALITY_LIMIT = 1e-20
DEFAULT_NEUTRALITY_ENTROPY = 1.0


@dataclass(frozen=True)
class AlphaBound:
    """Lower bound on alpha; ``alpha_min is None`` means no constraint."""

    alpha_min: float | None
    source: str
    precision_used: float
    entropy_used: float
    topology: Topology

    @property
    def bounded(self) -> bool:
        return self.alpha_min is not None

    def forward(self) -> float:
        """Re-evaluate the forward model at ``alpha_min``."""
        if self.alpha_min is None:
            return 0.0
        config = SuppressionConfig(self.entropy_used, self.alpha_min, self.topology)
        if self.source == "hyperfine":
            return hyperfine_relative_shift(config)
        return residual_charge(config)


def _check_positive(name, value):
    if not (value > 0 and math.isfinite(value)):
        raise DomainError(f"{name} must be positive and finite, got {value!r}")


def _alpha_from_x(entropy, x):
    return math.sqrt(entropy / (math.pi * x))


def hyperfine_relative_shift(config: SuppressionConfig) -> float:
    """Relative reduction magnitude ``(1+x)**p - 1`` of the hyperfine split."""
    return pow_shift(suppression_factor(config), hyperfine_exponent(config.topology))


def bound_alpha_from_hyperfine(precision: float, entropy: float, topology=Topology.NONTRAVERSABLE) -> AlphaBound:
    """Solve ``(1 + s/(pi alpha^2))**p - 1 = precision`` for alpha."""
    _check_positive("precision", precision)
    _check_positive("entropy", entropy)
    topology = parse_topology(topology)
    x = inv_pow_shift(precision, hyperfine_exponent(topology))
    return AlphaBound(_alpha_from_x(entropy, x), "hyperfine", precision, entropy, topology)


def residual_charge(config: SuppressionConfig, constants: PhysicalConstants | None = None) -> float:
    """Net charge of an entangled hydrogen atom in units of e.

    ``x/(1+x)`` for a nontraversable wormhole; exactly zero for a traversable
    one, where the lost flux re-emerges at the proton.
    """
    if config.topology is Topology.TRAVERSABLE:
        return 0.0
    return -pow_shift(suppression_factor(config), -1)


def bound_alpha_from_neutrality(
    charge_limit: float, entropy: float = DEFAULT_NEUTRALITY_ENTROPY, topology=Topology.NONTRAVERSABLE
) -> AlphaBound:
    """Solve ``x/(1+x) = charge_limit`` for alpha.

    A traversable wormhole leaves the atom neutral, so the result then has
    ``alpha_min = None``.
    """
    _check_positive("charge_limit", charge_limit)
    _check_positive("entropy", entropy)
    topology = parse_topology(topology)
    if topology is Topology.TRAVERSABLE:
        return AlphaBound(None, "neutrality", charge_limit, entropy, topology)
    if charge_limit >= 1:
        raise DomainError(f"charge_limit must be < 1 (units of e), got {charge_limit!r}")
    # x/(1+x) = q  <=>  (1+x)^-1 - 1 = -q
    x = inv_pow_shift(-charge_limit, -1)
    return AlphaBound(_alpha_from_x(entropy, x), "neutrality", charge_limit, entropy, topology)
