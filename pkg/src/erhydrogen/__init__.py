"""Hydrogen spectra and observational bounds under ER = EPR charge suppression."""

__version__ = "0.1.0"

from .constants import (
    PhysicalConstants,
    StableShift,
    inv_pow_shift,
    load_constants,
    pow_shift,
)
from .constraints import (
    AlphaBound,
    bound_alpha_from_hyperfine,
    bound_alpha_from_neutrality,
    residual_charge,
)
from .entanglement import (
    EntropyResult,
    TrapPairConfig,
    TwoQubitState,
    oscillator_entropy,
    two_qubit_entropy,
)
from .exceptions import ConfigurationError, DomainError, SolverError, ValidationError
from .oracle import RadialProblem, SpectrumReport, solve_radial, verify_scaling
from .spectrum import (
    TransitionKind,
    TransitionResult,
    bohr_energy,
    bohr_radius,
    energy_to_wavelength,
    hyperfine_base,
    hyperfine_transition,
)
from .suppression import (
    EffectiveCharges,
    SuppressionConfig,
    Topology,
    effective_charges,
    flux_balance,
    suppression_factor,
)
