"""
Numerical radial Schroedinger solver used to check the closed-form spectrum.

Works in atomic units of the *unmodified* atom (lengths in Bohr radii,
energies in Hartree) with the Coulomb strength set by ``charge_product``,
so a suppressed charge shows up as a genuinely different potential rather
than a rescaled answer.

Discretisation: uniform cell-centred grid ``r_i = (i - 1/2) h`` with
Dirichlet conditions ``u(0) = u(rmax) = 0`` imposed through mirror ghost
points, three-point second difference, symmetric tridiagonal eigensolve.
Each problem is solved at spacings ``h`` and ``h/2``; the Richardson
combination ``(4 E(h/2) - E(h)) / 3`` is reported as the converged value and
the raw errors give the observed convergence ratio.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .constants import PhysicalConstants
from .exceptions import DomainError, SolverError, ValidationError
from .suppression import Topology, parse_topology

__all__ = [
    "RadialProblem",
    "SpectrumReport",
    "ScalingReport",
    "solve_radial",
    "verify_scaling",
]

MAX_LEVELS = 5
VERIFY_TOLERANCE = 1e-5
X_WINDOW = (1e-4, 1e-2)


@dataclass(frozen=True)
class RadialProblem:
    """Hydrogen-like radial problem ``-u''/(2mu) + [l(l+1)/(2mu r^2) - Z/r] u = E u``.

    ``grid_rmax`` is in Bohr radii; ``grid_points`` is the number of interior
    points of the coarse grid (the fine grid has twice as many).
    ``reduced_mass`` is in kg; None means the electron mass, matching the
    closed-form levels. The physical proton-electron reduced mass raises
    the levels by about 0.05%.
    """

    charge_product: float = 1.0
    angular_momentum: int = 0
    grid_rmax: float = 60.0
    grid_points: int = 6000
    reduced_mass: float | None = None

    def __post_init__(self):
        if not self.charge_product > 0:
            raise ValidationError(f"charge_product must be > 0 for bound states, got {self.charge_product!r}")
        if int(self.angular_momentum) != self.angular_momentum or self.angular_momentum < 0:
            raise ValidationError(f"angular_momentum must be a non-negative integer, got {self.angular_momentum!r}")
        if int(self.grid_points) != self.grid_points or self.grid_points < 1000:
            raise ValidationError(f"grid_points must be an integer >= 1000, got {self.grid_points!r}")
        if not self.grid_rmax >= 50:
            raise ValidationError(f"grid_rmax must be >= 50 Bohr radii, got {self.grid_rmax!r}")
        if self.reduced_mass is not None and not self.reduced_mass > 0:
            raise ValidationError(f"reduced_mass must be positive, got {self.reduced_mass!r}")


@dataclass
class SpectrumReport:
    """Numerical levels next to the closed-form Coulomb levels.

    Energies in eV, ``fitted_decay_length`` in Bohr radii. ``coarse_errors``
    and ``fine_errors`` are the raw relative errors at ``h`` and ``h/2``;
    their ratio is the observed grid-halving gain (4 for a second-order
    scheme).
    """

    eigenvalues: list
    analytic_reference: list
    max_relative_error: float
    fitted_decay_length: float
    charge_product: float = 1.0
    angular_momentum: int = 0
    grid_spacing: float = 0.0
    coarse_errors: list = field(default_factory=list)
    fine_errors: list = field(default_factory=list)
    virial_ratios: list = field(default_factory=list)

    @property
    def convergence_ratios(self) -> list:
        return [c / f if f else math.inf for c, f in zip(self.coarse_errors, self.fine_errors)]

    @property
    def observed_orders(self) -> list:
        return [math.log2(abs(r)) for r in self.convergence_ratios]


@dataclass
class ScalingReport:
    """Outcome of :func:`verify_scaling`."""

    x: float
    topology: Topology
    modified: SpectrumReport
    reference: SpectrumReport
    energy_ratio: float
    expected_energy_ratio: float
    decay_length_ratio: float
    expected_decay_length_ratio: float
    tolerance: float = VERIFY_TOLERANCE

    @property
    def energy_error(self) -> float:
        return abs(self.energy_ratio / self.expected_energy_ratio - 1.0)

    @property
    def decay_length_error(self) -> float:
        return abs(self.decay_length_ratio / self.expected_decay_length_ratio - 1.0)

    @property
    def passed(self) -> bool:
        return self.energy_error <= self.tolerance and self.decay_length_error <= self.tolerance


def _grid(problem, n_interior):
    h = problem.grid_rmax / n_interior
    r = h * (np.arange(1, n_interior + 1) - 0.5)
    return h, r


def _eigensolve(problem, mu, n_interior, n_levels, want_vector=False):
    h, r = _grid(problem, n_interior)
    ell = problem.angular_momentum
    kinetic = 1.0 / (mu * h * h)
    diag = kinetic + ell * (ell + 1) / (2 * mu * r * r) - problem.charge_product / r
    # mirror ghost u_0 = -u_1 puts the node exactly at r = 0; the last point
    # sits h/2 inside rmax and u(rmax) = 0 is imposed the same way
    diag[0] += 0.5 * kinetic
    diag[-1] += 0.5 * kinetic
    off = np.full(n_interior - 1, -0.5 * kinetic)
    if want_vector:
        w, v = eigh_tridiagonal(diag, off, select="i", select_range=(0, n_levels - 1))
        return r, w, v
    w = eigh_tridiagonal(diag, off, eigvals_only=True, select="i", select_range=(0, n_levels - 1))
    return r, w, None


def _tail_window(r, u, charge_product, mu, rmax):
    # tail of the lowest state ~ r^(l+1) exp(-r/a): fit log(u / r^(l+1)) on a
    # window far from both the origin and the outer wall
    a_guess = 1.0 / (charge_product * mu)
    lo, hi = 4.0 * a_guess, min(16.0 * a_guess, 0.5 * rmax)
    mask = (r >= lo) & (r <= hi)
    return r[mask], np.abs(u[mask])


def _fit_decay(r, u, ell):
    y = np.log(u) - (ell + 1) * np.log(r)
    slope = np.polyfit(r, y, 1)[0]
    return -1.0 / slope


def solve_radial(problem: RadialProblem, n_levels: int, constants: PhysicalConstants) -> SpectrumReport:
    """Lowest ``n_levels`` bound states of ``problem``, in eV.

    Raises
    ------
    SolverError
        If the lowest eigenvalue is not negative or the two grids disagree
        by more than the expected discretisation error.
    """
    if int(n_levels) != n_levels or not 1 <= n_levels <= MAX_LEVELS:
        raise ValidationError(f"n_levels must be an integer in [1, {MAX_LEVELS}], got {n_levels!r}")
    n_levels = int(n_levels)
    ell = int(problem.angular_momentum)
    mu = 1.0 if problem.reduced_mass is None else problem.reduced_mass / constants.electron_mass
    hartree = constants.hartree_energy_ev

    coarse_n = int(problem.grid_points)
    r_c, w_c, v_c = _eigensolve(problem, mu, coarse_n, n_levels, want_vector=True)
    r_f, w_f, v_f = _eigensolve(problem, mu, 2 * coarse_n, n_levels, want_vector=True)
    diagnostics = {"coarse": w_c.tolist(), "fine": w_f.tolist(), "grid_points": coarse_n}
    if not (np.all(np.isfinite(w_f)) and w_f[0] < 0):
        raise SolverError("lowest eigenvalue is not a bound state", diagnostics)
    if np.any(w_f >= 0):
        raise SolverError(f"fewer than {n_levels} bound states resolved; increase grid_rmax", diagnostics)
    spread = np.abs(w_c - w_f) / np.abs(w_f)
    if np.any(spread > 1e-2):
        raise SolverError("grid not converged: coarse and fine eigenvalues differ by > 1%", diagnostics)

    extrapolated = (4.0 * w_f - w_c) / 3.0
    ns = np.arange(ell + 1, ell + 1 + n_levels)
    analytic = -0.5 * mu * problem.charge_product**2 / ns**2

    fit_c = _fit_decay(*_tail_window(r_c, v_c[:, 0], problem.charge_product, mu, problem.grid_rmax), ell)
    fit_f = _fit_decay(*_tail_window(r_f, v_f[:, 0], problem.charge_product, mu, problem.grid_rmax), ell)
    decay = (4.0 * fit_f - fit_c) / 3.0

    # <V_coulomb> / E on the fine grid; the Coulomb virial theorem gives 2
    virial = []
    for k in range(n_levels):
        u2 = v_f[:, k] ** 2
        v_mean = -problem.charge_product * np.sum(u2 / r_f) / np.sum(u2)
        virial.append(float(v_mean / w_f[k]))

    rel_err = np.abs(extrapolated / analytic - 1.0)
    return SpectrumReport(
        eigenvalues=[(int(n), float(e * hartree)) for n, e in zip(ns, extrapolated)],
        analytic_reference=[(int(n), float(e * hartree)) for n, e in zip(ns, analytic)],
        max_relative_error=float(rel_err.max()),
        fitted_decay_length=float(decay),
        charge_product=float(problem.charge_product),
        angular_momentum=ell,
        grid_spacing=float(problem.grid_rmax / coarse_n),
        coarse_errors=[float(v) for v in np.abs(w_c / analytic - 1.0)],
        fine_errors=[float(v) for v in np.abs(w_f / analytic - 1.0)],
        virial_ratios=virial,
    )


def verify_scaling(
    x: float,
    topology=Topology.NONTRAVERSABLE,
    constants: PhysicalConstants | None = None,
    n_levels: int = 1,
    grid_points: int = 6000,
) -> ScalingReport:
    """Check energy and size scaling of the suppressed atom numerically.

    Solves the problem at charge product ``1/(1+x)`` (or ``1/(1+x)^2`` for a
    traversable wormhole) and at 1, and compares the ground-state energy and
    fitted decay-length ratios with ``(1+x)^-2`` / ``(1+x)`` (resp.
    ``(1+x)^-4`` / ``(1+x)^2``).
    """
    from .constants import load_constants

    constants = constants or load_constants()
    topology = parse_topology(topology)
    if x != 0 and not X_WINDOW[0] <= x <= X_WINDOW[1]:
        raise DomainError(f"x must be 0 or within [{X_WINDOW[0]:g}, {X_WINDOW[1]:g}] to be resolvable, got {x!r}")
    power = 2 if topology is Topology.TRAVERSABLE else 1
    product = (1.0 + x) ** -power
    reference = solve_radial(RadialProblem(1.0, grid_points=grid_points), n_levels, constants)
    modified = solve_radial(RadialProblem(product, grid_points=grid_points), n_levels, constants)
    return ScalingReport(
        x=x,
        topology=topology,
        modified=modified,
        reference=reference,
        energy_ratio=modified.eigenvalues[0][1] / reference.eigenvalues[0][1],
        expected_energy_ratio=(1.0 + x) ** (-2 * power),
        decay_length_ratio=modified.fitted_decay_length / reference.fitted_decay_length,
        expected_decay_length_ratio=(1.0 + x) ** power,
    )
