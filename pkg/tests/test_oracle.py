import pytest

from erhydrogen.exceptions import DomainError, SolverError, ValidationError
from erhydrogen.oracle import RadialProblem, solve_radial, verify_scaling
from erhydrogen.suppression import Topology


@pytest.fixture(scope="module")
def hydrogen(constants):
    return solve_radial(RadialProblem(1.0), 3, constants)


def test_coulomb_levels(hydrogen, constants):
    for (n, e), (_, ref) in zip(hydrogen.eigenvalues, hydrogen.analytic_reference):
        assert ref == pytest.approx(-constants.rydberg_energy_ev / n**2, rel=1e-14)
        assert e == pytest.approx(ref, rel=1e-6)
    assert hydrogen.max_relative_error == max(abs(e / r - 1) for (_, e), (_, r) in zip(hydrogen.eigenvalues, hydrogen.analytic_reference))


def test_grid_halving_second_order(hydrogen):
    for ratio in hydrogen.convergence_ratios:
        assert ratio >= 4.0
    for order in hydrogen.observed_orders:
        assert order == pytest.approx(2.0, abs=0.01)


def test_virial(hydrogen):
    for ratio in hydrogen.virial_ratios:
        assert ratio == pytest.approx(2.0, rel=1e-4)


def test_decay_length(hydrogen):
    assert hydrogen.fitted_decay_length == pytest.approx(1.0, rel=1e-6)


def test_quadratic_charge_dependence(constants, hydrogen):
    x = 1e-3
    mod = solve_radial(RadialProblem(1 / (1 + x)), 1, constants)
    ratio = mod.eigenvalues[0][1] / hydrogen.eigenvalues[0][1]
    assert ratio == pytest.approx((1 + x) ** -2, rel=1e-6)


def test_z_squared(constants, hydrogen):
    deep = solve_radial(RadialProblem(4.0, grid_points=12000), 3, constants)
    for (_, a), (_, b) in zip(deep.eigenvalues, hydrogen.eigenvalues):
        assert a / b == pytest.approx(16.0, rel=1e-5)


def test_accidental_degeneracy(constants, hydrogen):
    p_state = solve_radial(RadialProblem(1.0, angular_momentum=1), 1, constants)
    assert p_state.eigenvalues[0][0] == 2
    assert p_state.eigenvalues[0][1] == pytest.approx(hydrogen.eigenvalues[1][1], rel=1e-6)


def test_reduced_mass_switch(constants):
    mu = constants.electron_mass * constants.proton_mass / (constants.electron_mass + constants.proton_mass)
    rep = solve_radial(RadialProblem(1.0, reduced_mass=mu), 1, constants)
    assert rep.eigenvalues[0][1] == pytest.approx(-constants.rydberg_energy_ev * mu / constants.electron_mass, rel=1e-6)
    assert rep.analytic_reference[0][1] / -constants.rydberg_energy_ev == pytest.approx(0.99946, abs=1e-5)


def test_deterministic(constants):
    a = solve_radial(RadialProblem(0.9), 2, constants)
    b = solve_radial(RadialProblem(0.9), 2, constants)
    assert a.eigenvalues == b.eigenvalues
    assert a.fitted_decay_length == b.fitted_decay_length


@pytest.mark.parametrize("kwargs", [
    {"charge_product": 0.0},
    {"grid_points": 10},
    {"grid_rmax": 20.0},
    {"angular_momentum": -1},
])
def test_problem_validation(kwargs):
    with pytest.raises(ValidationError):
        RadialProblem(**kwargs)


def test_level_count_validation(constants):
    with pytest.raises(ValidationError):
        solve_radial(RadialProblem(), 6, constants)


def test_unresolved_levels_raise(constants):
    # n = 5 at Z = 0.05 extends far beyond rmax = 50
    with pytest.raises(SolverError) as info:
        solve_radial(RadialProblem(0.05, grid_rmax=50, grid_points=1000), 5, constants)
    assert "coarse" in info.value.diagnostics


@pytest.mark.parametrize("topology, power", [(Topology.NONTRAVERSABLE, 1), (Topology.TRAVERSABLE, 2)])
def test_verify_scaling(constants, topology, power):
    rep = verify_scaling(1e-3, topology, constants)
    assert rep.expected_energy_ratio == pytest.approx(1.001 ** (-2 * power), rel=1e-15)
    assert rep.energy_ratio == pytest.approx(rep.expected_energy_ratio, rel=1e-5)
    assert rep.decay_length_ratio == pytest.approx(1.001**power, rel=1e-5)
    assert rep.passed


def test_verify_scaling_identity(constants):
    rep = verify_scaling(0.0, "nontraversable", constants)
    assert rep.energy_ratio == 1.0
    assert rep.decay_length_ratio == 1.0


def test_verify_scaling_window(constants):
    with pytest.raises(DomainError):
        verify_scaling(1e-13, "nontraversable", constants)
