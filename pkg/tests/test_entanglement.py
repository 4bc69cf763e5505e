import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from erhydrogen.entanglement import (
    TrapPairConfig,
    TwoQubitState,
    coupling_ratio,
    gaussian_entropy,
    oscillator_entropy,
    reference_trap_pair,
    two_qubit_entropy,
)
from erhydrogen.exceptions import DomainError, ValidationError

EPS0 = 8.8541878188e-12


def eig_entropy(amplitudes):
    """Brute force: partial trace over spin 2, numerical eigendecomposition."""
    psi = np.asarray(amplitudes, dtype=complex).reshape(2, 2)
    rho = psi @ psi.conj().T
    p = np.linalg.eigvalsh(rho)
    p = p[p > 0]
    return float(-np.sum(p * np.log(p)))


def random_unitary(rng):
    z = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / abs(np.diag(r)))


def symmetric_pair(g, mass=1.0, omega=1.0):
    # charge_2 chosen so that lambda / (m omega^2) = g
    return TrapPairConfig(mass, mass, omega, omega, 1.0, 1.0, -g * mass * omega**2 * 2 * math.pi * EPS0, EPS0)


class TestTwoQubit:
    def test_singlet(self):
        assert two_qubit_entropy(TwoQubitState.singlet()).entropy == pytest.approx(math.log(2), abs=1e-12)

    def test_triplet_zero(self):
        assert two_qubit_entropy(TwoQubitState.triplet_zero()).entropy == pytest.approx(math.log(2), abs=1e-12)

    def test_product(self):
        r = two_qubit_entropy(TwoQubitState((1, 0, 0, 0)))
        assert r.entropy == 0.0
        assert r.method == "qubit"

    def test_theta_family(self):
        t = math.pi / 6
        amps = (0, math.cos(t), math.sin(t), 0)
        c2, s2 = 0.75, 0.25
        closed = -c2 * math.log(c2) - s2 * math.log(s2)
        assert two_qubit_entropy(TwoQubitState(amps)).entropy == pytest.approx(eig_entropy(amps), abs=1e-10)
        assert closed == pytest.approx(0.5623, abs=1e-4)
        assert two_qubit_entropy(TwoQubitState(amps)).entropy == pytest.approx(closed, abs=1e-12)

    def test_not_normalized(self):
        with pytest.raises(ValidationError):
            two_qubit_entropy(TwoQubitState((1, 1, 0, 0)))

    def test_wrong_length(self):
        with pytest.raises(ValidationError):
            TwoQubitState((1, 0, 0))

    def test_local_unitary_invariance(self):
        rng = np.random.default_rng(3)
        for _ in range(200):
            v = rng.normal(size=4) + 1j * rng.normal(size=4)
            v /= np.linalg.norm(v)
            u = np.kron(random_unitary(rng), random_unitary(rng))
            w = u @ v
            a = two_qubit_entropy(TwoQubitState(tuple(v))).entropy
            b = two_qubit_entropy(TwoQubitState(tuple(w / np.linalg.norm(w)))).entropy
            assert abs(a - b) <= 1e-10

    @given(
        a=st.tuples(st.floats(-1, 1), st.floats(-1, 1)).filter(lambda t: math.hypot(*t) > 1e-3),
        b=st.tuples(st.floats(-1, 1), st.floats(-1, 1)).filter(lambda t: math.hypot(*t) > 1e-3),
    )
    def test_product_states(self, a, b):
        na, nb = math.hypot(*a), math.hypot(*b)
        state = TwoQubitState.product((a[0] / na, a[1] / na), (b[0] / nb, b[1] / nb))
        assert two_qubit_entropy(state).entropy <= 1e-10

    @given(st.lists(st.floats(-1, 1), min_size=8, max_size=8).filter(lambda v: np.linalg.norm(v) > 1e-2))
    def test_matches_brute_force(self, parts):
        v = np.array(parts[:4]) + 1j * np.array(parts[4:])
        v /= np.linalg.norm(v)
        r = two_qubit_entropy(TwoQubitState(tuple(v))).entropy
        assert r == pytest.approx(eig_entropy(v), abs=1e-10)
        assert 0 <= r <= math.log(2) + 1e-15


class TestOscillator:
    def test_decoupled(self):
        cfg = TrapPairConfig(1e-30, 2e-27, 3e9, 1e8, 1e-6, 0.0, 1.6e-19)
        assert oscillator_entropy(cfg).entropy <= 1e-10

    def test_symmetric_closed_form(self):
        g = 0.5
        r = 0.25 * math.log((1 + g) / (1 - g))
        nu = 0.5 * math.cosh(r)
        closed = (nu + 0.5) * math.log(nu + 0.5) - (nu - 0.5) * math.log(nu - 0.5)
        got = oscillator_entropy(symmetric_pair(g)).entropy
        assert got == pytest.approx(closed, abs=1e-12)
        # truncated Fock-space diagonalisation of the same Hamiltonian (40 levels per mode)
        assert got == pytest.approx(0.0943924659444167, abs=1e-12)

    def test_scale_free(self):
        a = oscillator_entropy(symmetric_pair(0.7)).entropy
        b = oscillator_entropy(symmetric_pair(0.7, mass=9.1e-31, omega=3e9)).entropy
        assert a == pytest.approx(b, abs=1e-12)

    def test_reference_pair_exceeds_one_nat(self, constants):
        cfg = reference_trap_pair(constants)
        assert coupling_ratio(cfg) == pytest.approx(0.999, rel=1e-12)
        assert cfg.separation == 1e-6
        assert oscillator_entropy(cfg, constants).entropy >= 1.0

    def test_unstable(self):
        with pytest.raises(DomainError):
            symmetric_pair(1.0)
        with pytest.raises(DomainError):
            symmetric_pair(1.5)

    def test_invalid_values(self):
        with pytest.raises(ValidationError):
            TrapPairConfig(0.0, 1.0, 1.0, 1.0, 1.0, 0.0, 0.0)

    def test_monotone_to_zero(self):
        gs = np.linspace(0.95, 0.0, 40)
        values = [oscillator_entropy(symmetric_pair(g)).entropy for g in gs]
        assert all(a > b for a, b in zip(values, values[1:-1]))
        assert values[-1] <= 1e-10

    @given(
        g=st.floats(0.0, 0.99),
        mass_ratio=st.floats(1e-4, 1e4),
        freq_ratio=st.floats(1e-2, 1e2),
    )
    @settings(max_examples=200)
    def test_label_swap(self, g, mass_ratio, freq_ratio):
        m1, m2, w1, w2 = 1.0, mass_ratio, 1.0, freq_ratio
        lam = g * math.sqrt(m1 * w1**2 * m2 * w2**2)
        cfg = TrapPairConfig(m1, m2, w1, w2, 1.0, 1.0, -lam * 2 * math.pi * EPS0, EPS0)
        a = oscillator_entropy(cfg).entropy
        b = oscillator_entropy(cfg.swapped()).entropy
        assert abs(a - b) <= 1e-10


def test_gaussian_entropy_pure():
    assert gaussian_entropy(0.5) == 0.0
    with pytest.raises(DomainError):
        gaussian_entropy(0.3)
