import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qutritdyn.gates import (
    NonUnitaryTargetError,
    Pulse,
    PulseSequence,
    _physical_round_trip,
    compile_pulse_sequence,
    g2,
    gate_fidelity,
    pulse_to_physical,
    random_sequence,
    synthesize,
    x3,
    z3,
)
from qutritdyn.numerics import expm_unitary, max_abs_diff, unitarity_deviation
from qutritdyn.evolution import SemiclassicalGenerator

angles = st.floats(0, 2 * np.pi, allow_nan=False)
thetas = st.floats(0, 6, allow_nan=False)


def test_x3_actions_exact():
    phi = 0.913
    e = np.eye(3)
    assert np.array_equal(x3(phi) @ e[0], e[0])
    assert np.array_equal(x3(phi) @ e[1], e[1])
    assert np.array_equal(x3(phi) @ e[2], np.exp(1j * phi) * e[2])


def test_z3_reports_deviation():
    g = z3(1, -1, 0)
    assert not g.is_unitary
    assert g.unitarity_deviation == pytest.approx(1.0)
    g = z3(0.3, 0.2j, 0.5)
    assert g.matrix[2, 0] == -0.5 and g.matrix[1, 1] == -0.2j
    assert g.unitarity_deviation > 0


def test_g2():
    y = x3(0.4)
    m = g2(y)
    assert np.array_equal(m[:6, :6], np.eye(6))
    assert np.array_equal(m[6:, 6:], y)
    assert unitarity_deviation(m) < 1e-15
    with pytest.raises(ValueError):
        g2(np.eye(2))


@settings(max_examples=80, deadline=None)
@given(thetas, thetas, angles, angles)
def test_single_pulse_diagonal_is_real(ta, tb, pa, pb):
    u = Pulse(ta, tb, pa, pb).unitary()
    assert np.max(np.abs(np.diag(u).imag)) < 1e-12
    gen = SemiclassicalGenerator(Pulse(ta, tb, pa, pb).A, Pulse(ta, tb, pa, pb).B)
    assert max_abs_diff(u, expm_unitary(gen.matrix(), 1.0)) < 1e-12


@settings(max_examples=40, deadline=None)
@given(thetas, thetas, angles, angles)
def test_pulse_inverse(ta, tb, pa, pb):
    p = Pulse(ta, tb, pa, pb)
    assert max_abs_diff(p.inverse().unitary() @ p.unitary(), np.eye(3)) < 1e-12


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), angles)
def test_fidelity_global_phase_invariant(seed, a):
    u = compile_pulse_sequence(random_sequence(3, np.random.default_rng(seed)))
    assert gate_fidelity(u, np.exp(1j * a) * u) == pytest.approx(1.0, abs=1e-12)
    assert gate_fidelity(u, u) <= 1.0


def test_sequence_order_first_pulse_acts_first():
    p1, p2 = Pulse(0.4, 1.1, 0.2, 2.0), Pulse(1.3, 0.2, 4.0, 0.5)
    u = compile_pulse_sequence(PulseSequence((p1, p2)))
    assert max_abs_diff(u, p2.unitary() @ p1.unitary()) < 1e-15
    assert np.array_equal(compile_pulse_sequence(PulseSequence()), np.eye(3))


def test_sequence_vector_round_trip():
    seq = PulseSequence.from_vector([-0.5, 1.0, 0.3, 7.0])
    p = seq.pulses[0]
    assert p.theta_a == 0.5 and p.phi_a == pytest.approx(0.3 + np.pi)
    assert p.phi_b == pytest.approx(7.0 - 2 * np.pi)
    assert max_abs_diff(p.unitary(), Pulse(-0.5, 1.0, 0.3, 7.0).unitary()) < 1e-15
    with pytest.raises(ValueError):
        PulseSequence((p, p), max_pulses=1)


def test_synthesize_input_errors():
    with pytest.raises(NonUnitaryTargetError):
        synthesize(2 * np.eye(3))
    with pytest.raises(ValueError):
        synthesize(np.eye(2))


def test_synthesize_identity_is_empty():
    res = synthesize(np.exp(0.3j) * np.eye(3))
    assert res.converged and len(res.sequence) == 0 and res.fidelity == pytest.approx(1.0)


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_synthesize_round_trip(seed):
    target = compile_pulse_sequence(random_sequence(3, np.random.default_rng(seed)))
    res = synthesize(target, 3, seed=seed)
    assert res.converged
    assert gate_fidelity(target, compile_pulse_sequence(res.sequence)) >= 1 - 1e-6
    assert len(res.sequence) <= 3


def test_synthesize_deterministic():
    target = compile_pulse_sequence(random_sequence(2, np.random.default_rng(9)))
    a = synthesize(target, 2, seed=4)
    b = synthesize(target, 2, seed=4)
    assert a.to_dict() == b.to_dict()


def test_single_pulse_cannot_make_phase_gate():
    res = synthesize(x3(np.pi / 2), 1, starts=8)
    assert not res.converged
    assert res.fidelity < 0.9


@pytest.mark.parametrize("config", ["L", "lambda", "V"])
def test_pulse_to_physical_round_trip(config):
    p = Pulse(0.7, 1.9, 2.2, 5.1)
    u = _physical_round_trip(p, config, 0.6, 1.4, 2.5, delta_phi=0.3)
    assert max_abs_diff(u, p.unitary()) < 1e-14
    with pytest.raises(ValueError):
        pulse_to_physical(p, config, 0.0, 1.0, 1.0)
