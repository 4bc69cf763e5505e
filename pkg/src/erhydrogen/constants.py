"""
Physical constants and shift-stable arithmetic.

Every prediction of the charge-suppression model is a relative shift of
order 1e-12 to 1e-20 on top of an ordinary hydrogen quantity. Such shifts
are invisible once the modified quantity is formed as a single float, so
the package carries them as ``StableShift`` pairs and evaluates factors of
the form ``(1 + x)**p - 1`` with :func:`pow_shift` rather than by direct
exponentiation.

Constants are read from an embedded text table keyed by dataset id
(``codata-2022`` by default, ``codata-2018`` also bundled).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .exceptions import ConfigurationError, DomainError, ValidationError

__all__ = [
    "DEFAULT_DATASET",
    "PhysicalConstants",
    "StableShift",
    "available_datasets",
    "load_constants",
    "pow_shift",
    "inv_pow_shift",
]

DEFAULT_DATASET = "codata-2022"

# Below this |x| the binomial series is used; its truncation error after
# _SERIES_TERMS terms is far below one ulp for |p| <= 8.
_SERIES_CUTOFF = 1e-4
_SERIES_TERMS = 10

_FIELDS = (
    "elementary_charge",
    "electron_mass",
    "proton_mass",
    "reduced_planck",
    "vacuum_permittivity",
    "light_speed",
    "proton_g_factor",
    "planck_length",
)


@dataclass(frozen=True)
class PhysicalConstants:
    """SI values of the constants entering the hydrogen formulas.

    ``planck_length`` is carried for reference only; no formula uses it.
    """

    elementary_charge: float
    electron_mass: float
    proton_mass: float
    reduced_planck: float
    vacuum_permittivity: float
    light_speed: float
    proton_g_factor: float
    planck_length: float
    dataset: str = DEFAULT_DATASET

    def __post_init__(self):
        for name in _FIELDS:
            value = getattr(self, name)
            if not (value > 0 and math.isfinite(value)):
                raise ValidationError(f"{name} must be positive and finite, got {value!r}")

    @property
    def coulomb_coupling(self) -> float:
        """e^2 / (4 pi eps0) in J*m."""
        return self.elementary_charge**2 / (4 * math.pi * self.vacuum_permittivity)

    @property
    def rydberg_energy_joule(self) -> float:
        return self.electron_mass * self.coulomb_coupling**2 / (2 * self.reduced_planck**2)

    @property
    def rydberg_energy_ev(self) -> float:
        return self.rydberg_energy_joule / self.elementary_charge

    @property
    def hartree_energy_ev(self) -> float:
        return 2 * self.rydberg_energy_ev

    @property
    def bohr_radius(self) -> float:
        """4 pi eps0 hbar^2 / (m_e e^2) in metres."""
        return self.reduced_planck**2 / (self.electron_mass * self.coulomb_coupling)

    @property
    def hc_ev_cm(self) -> float:
        """Planck constant times c, in eV*cm."""
        h = 2 * math.pi * self.reduced_planck
        return h * self.light_speed / self.elementary_charge * 100.0


@dataclass(frozen=True)
class StableShift:
    """A quantity stored as ``base * (1 + relative_delta)``.

    ``relative_delta`` keeps full double precision however small it is, which
    the reconstructed ``value`` cannot.
    """

    base: float
    relative_delta: float

    @property
    def value(self) -> float:
        return self.base * (1.0 + self.relative_delta)

    @property
    def absolute_delta(self) -> float:
        return self.base * self.relative_delta

    def as_dict(self) -> dict:
        return {"base": self.base, "relative_delta": self.relative_delta, "value": self.value}


def _parse_table(text):
    tables = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 4:
            raise ConfigurationError(f"constants table line {lineno}: expected 4 fields, got {len(parts)}")
        name, value, unit, source = parts
        tables.setdefault(source, {})[name] = (float(value), unit)
    return tables


@lru_cache(maxsize=None)
def _tables():
    text = resources.files("erhydrogen").joinpath("data/constants.txt").read_text(encoding="utf-8")
    return _parse_table(text)


def available_datasets() -> list[str]:
    return sorted(_tables())


def constant_units(dataset_id: str = DEFAULT_DATASET) -> dict[str, str]:
    """Map of constant name to unit string for a dataset."""
    table = _tables().get(dataset_id)
    if table is None:
        raise ConfigurationError(f"unknown constants dataset {dataset_id!r}")
    return {name: unit for name, (_, unit) in table.items()}


def load_constants(dataset_id: str = DEFAULT_DATASET) -> PhysicalConstants:
    """Return the bundled constants for ``dataset_id``.

    Raises
    ------
    ConfigurationError
        If the dataset is not bundled or lacks one of the required constants.
    """
    table = _tables().get(dataset_id)
    if table is None:
        known = ", ".join(available_datasets())
        raise ConfigurationError(f"unknown constants dataset {dataset_id!r} (available: {known})")
    missing = [name for name in _FIELDS if name not in table]
    if missing:
        raise ConfigurationError(f"dataset {dataset_id!r} lacks {', '.join(missing)}")
    return PhysicalConstants(**{name: table[name][0] for name in _FIELDS}, dataset=dataset_id)


def _binomial_series(x, p):
    # (1+x)^p - 1 = p x (1 + c), c = (p-1)x/2 (1 + (p-2)x/3 (1 + ...)); c is
    # accumulated on its own so it keeps full relative precision
    c = 0.0
    for k in range(_SERIES_TERMS, 1, -1):
        c = (p - k + 1) * x / k * (1.0 + c)
    px = p * x
    return px + px * c


def pow_shift(x: float, p: float) -> float:
    """Return ``(1 + x)**p - 1`` without cancellation.

    Accurate to a few ulp of the result for any ``x > -1``, including
    ``|x|`` far below machine epsilon.

    Parameters
    ----------
    x : float
        Perturbation, must exceed -1.
    p : float
        Exponent.

    Raises
    ------
    DomainError
        If ``x <= -1`` or either argument is not finite.
    """
    x = float(x)
    p = float(p)
    if not (math.isfinite(x) and math.isfinite(p)):
        raise DomainError(f"pow_shift needs finite arguments, got x={x!r}, p={p!r}")
    if x <= -1.0:
        raise DomainError(f"pow_shift requires x > -1, got {x!r}")
    if x == 0.0 or p == 0.0:
        return 0.0
    if p == 1.0:
        return x
    if abs(x) < _SERIES_CUTOFF:
        return _binomial_series(x, p)
    try:
        return math.expm1(p * math.log1p(x))
    except OverflowError:
        return math.inf


def inv_pow_shift(delta: float, p: float) -> float:
    """Return ``x`` with ``pow_shift(x, p) == delta``.

    Raises
    ------
    DomainError
        If ``1 + delta <= 0`` or ``p == 0``.
    """
    p = float(p)
    if p == 0.0:
        raise DomainError("inv_pow_shift is undefined for p = 0")
    try:
        return pow_shift(delta, 1.0 / p)
    except DomainError:
        raise DomainError(f"inv_pow_shift requires 1 + delta > 0, got delta={delta!r}") from None
