import numpy as np
import pytest

from qutritdyn.hamiltonians import (
    Configuration,
    SystemParams,
    commutator,
    excitation_operator,
    find_conserved_charges,
    h_atom,
    h_counter_rotating,
    h_field,
    h_interaction_exact,
    h_rwa_interaction_picture,
    h_rwa_resonant,
    interaction_terms,
)
from qutritdyn.numerics import hermitian_check, max_abs_diff
from qutritdyn.operators import FockTruncation, atomic_ket, joint_index, joint_ket

CONFIGS = list(Configuration)
TR = FockTruncation(5, 4)


def generic(**kw):
    base = dict(g_a=0.83, g_b=1.27, delta_phi=0.61)
    base.update(kw)
    return SystemParams(**base)


@pytest.mark.parametrize(
    "name,expected",
    [("L", "L"), ("ladder", "L"), ("LAMBDA", "lambda"), ("v", "V"), ("Vee", "V")],
)
def test_configuration_parse(name, expected):
    assert Configuration.parse(name).value == expected


def test_configuration_parse_rejects():
    with pytest.raises(ValueError):
        Configuration.parse("delta")


def test_params_validation():
    with pytest.raises(ValueError):
        SystemParams(g_a=-1)
    with pytest.raises(ValueError):
        SystemParams(omega_e=np.nan)


@pytest.mark.parametrize("config", CONFIGS)
def test_resonant_params_have_zero_detuning(config):
    p = SystemParams.resonant(config, 3.0, 5.0)
    assert p.detunings(config) == pytest.approx((0.0, 0.0))
    q = SystemParams(omega_e=2.0, omega_i=0.5, omega_g=0.0, Omega_a=0.7, Omega_b=1.0).with_detunings("L")
    assert (q.delta_a, q.delta_b) == pytest.approx((0.2, -0.5))


def test_h_atom():
    p = SystemParams(omega_e=1, omega_i=0, omega_g=-1)
    assert np.array_equal(h_atom(p), np.diag([1, 0, -1]))
    assert np.array_equal(h_atom(SystemParams()), np.zeros((3, 3)))
    p = SystemParams(omega_e=2.5, omega_i=0.7, omega_g=-0.2)
    assert np.allclose(h_atom(p) @ atomic_ket("i"), 0.7 * atomic_ket("i"))


def test_h_field():
    assert np.array_equal(h_field(SystemParams(), TR), np.zeros((TR.dim, TR.dim)))
    p = SystemParams(Omega_a=1.3, Omega_b=0.4)
    h = h_field(p, TR)
    k = joint_index("g", 2, 3, TR)
    assert h[k, k] == pytest.approx(2 * 1.3 + 3 * 0.4)
    na, nb = TR.cutoff_a, TR.cutoff_b
    trace = 3 * (1.3 * sum(range(na)) * nb + 0.4 * sum(range(nb)) * na)
    assert np.trace(h).real == pytest.approx(trace)


def test_h_interaction_exact_basic():
    assert np.array_equal(h_interaction_exact(generic(g_a=0, g_b=0), TR), np.zeros((TR.dim, TR.dim)))
    h = h_interaction_exact(generic(), TR)
    assert hermitian_check(h).max_deviation < 1e-12


def test_h_interaction_exact_matrix_element():
    # g_a s_ig a sends |g,1,n> to sqrt(1) g_a |i,0,n>; no other term connects them
    p = generic()
    h = h_interaction_exact(p, TR)
    for n_b in range(TR.cutoff_b):
        val = h[joint_index("i", 0, n_b, TR), joint_index("g", 1, n_b, TR)]
        assert val == pytest.approx(+p.g_a)


def test_terms_reconstruct_exact_and_rwa():
    p = generic()
    terms = interaction_terms(p)
    total = sum(t.matrix(TR) for t in terms)
    assert max_abs_diff(total, h_interaction_exact(p, TR)) < 1e-14
    for config in CONFIGS:
        rotating = sum(t.matrix(TR) for t in terms if t.is_rotating(config))
        assert max_abs_diff(rotating, h_rwa_resonant(config, p, TR)) < 1e-14
        assert sum(t.is_rotating(config) for t in terms) == 4


@pytest.mark.parametrize("config", CONFIGS)
def test_rwa_hermitian_and_conserves_excitations(config):
    h = h_rwa_resonant(config, generic(), TR)
    assert hermitian_check(h).max_deviation < 1e-12
    assert np.max(np.abs(commutator(h, excitation_operator(config, TR)))) < 1e-10


def test_excitation_operator_ladder_matches_stated_form():
    # L: a+a + b+b + 2 s_ee + s_ii
    n = excitation_operator("L", TR)
    k = joint_index("e", 1, 2, TR)
    assert n[k, k] == 1 + 2 + 2
    k = joint_index("i", 1, 2, TR)
    assert n[k, k] == 1 + 2 + 1


@pytest.mark.parametrize(
    "config,expected",
    [
        ("L", ((0, 0, -1), (0, -1, -1))),
        ("lambda", ((0, 0, -1), (0, 1, 1))),
        ("V", ((0, 0, 1), (0, -1, -1))),
    ],
)
def test_conserved_charges_match_frozen_leg_shifts(config, expected):
    k_a, k_b = find_conserved_charges(config)
    assert (k_a, k_b) == expected
    cfg = Configuration.parse(config)
    # charge n_x + k_x[level] is constant on a block, so leg offsets are -k
    shifts = tuple((-k_a[j], -k_b[j]) for j in range(3))
    assert shifts == cfg.leg_shifts


def test_ladder_dark_state_and_ladder_relation():
    p = generic()
    h = h_rwa_resonant("L", p, TR)
    for m in range(TR.cutoff_b):
        assert np.array_equal(h @ joint_ket("g", 0, m, TR), np.zeros(TR.dim))
    # |i, n_a, n_b+1> couples to |g, n_a+1, n_b+1> with g_a sqrt(n_a+1)
    n_a, n_b = 1, 1
    out = h @ joint_ket("i", n_a, n_b + 1, TR)
    assert out[joint_index("g", n_a + 1, n_b + 1, TR)] == pytest.approx(p.g_a * np.sqrt(n_a + 1))


def test_rwa_jaynes_cummings_limit():
    h = h_rwa_resonant("L", generic(g_b=0.0), TR)
    assert np.all(h[joint_index("e", 0, 0, TR)] == 0)
    # block diagonal in n_b: no element connects different b photon numbers
    for r, c in zip(*np.nonzero(h)):
        assert r % TR.cutoff_b == c % TR.cutoff_b


@pytest.mark.parametrize("config", CONFIGS)
def test_interaction_picture_rwa(config):
    p = generic(delta_a=0.0, delta_b=0.0)
    assert max_abs_diff(h_rwa_interaction_picture(config, p, 2.3, TR), h_rwa_resonant(config, p, TR)) < 1e-15
    d = 0.9
    p = generic(delta_a=d, delta_b=d)
    for t in (0.0, 0.4, 1.7):
        h = h_rwa_interaction_picture(config, p, t, TR)
        assert hermitian_check(h).max_deviation < 1e-12
        h2 = h_rwa_interaction_picture(config, p, t + 2 * np.pi / d, TR)
        assert max_abs_diff(h, h2) < 1e-12


def test_interaction_picture_phase_sign():
    # raising-with-absorption term carries exp(-i delta t)
    p = generic(delta_a=0.7, delta_b=0.0)
    t = 0.5
    h = h_rwa_interaction_picture("L", p, t, TR)
    el = h[joint_index("i", 0, 0, TR), joint_index("g", 1, 0, TR)]
    assert el == pytest.approx(p.g_a * np.exp(-1j * 0.7 * t))


def test_counter_rotating_structure():
    om = 40.0
    p = SystemParams.resonant("L", om, om, 0.8, 1.1, delta_phi=0.3)
    p0 = SystemParams(g_a=0.8, g_b=1.1, delta_phi=0.3)
    assert max_abs_diff(h_counter_rotating(p, 0.0, TR), h_interaction_exact(p0, TR)) < 1e-15
    for t in (0.013, 0.27):
        h = h_counter_rotating(p, t, TR)
        assert hermitian_check(h).max_deviation < 1e-12
        diff = h - h_rwa_interaction_picture("L", p.with_detunings("L"), t, TR)
        # every discarded term is a counter-rotating one at frequency 2*om
        expected = np.zeros_like(diff)
        for term in interaction_terms(p):
            if term.is_rotating("L"):
                continue
            sign = 1.0 if term.raises_atom(Configuration.LADDER) else -1.0
            expected += np.exp(1j * sign * 2 * om * t) * term.matrix(TR)
        assert max_abs_diff(diff, expected) < 1e-12
