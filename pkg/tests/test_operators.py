import itertools

import numpy as np
import pytest

from qutritdyn.numerics import DimensionError, max_abs_diff
from qutritdyn.operators import (
    FockTruncation,
    annihilator,
    atomic_ket,
    creator,
    dipole_operator,
    embed,
    joint_index,
    joint_ket,
    ket_bra,
    level_index,
    number_operator,
    sigma,
)

LEVELS = "eig"


def test_basis_order():
    assert np.array_equal(atomic_ket("e"), [1, 0, 0])
    assert np.array_equal(atomic_ket("i"), [0, 1, 0])
    assert np.array_equal(atomic_ket("g"), [0, 0, 1])
    with pytest.raises(ValueError):
        level_index("x")


def test_sigma_printed_matrices():
    assert np.array_equal(sigma("g", "i"), [[0, 0, 0], [0, 0, 1], [0, 0, 0]])
    assert np.array_equal(sigma("i", "e"), [[0, 1, 0], [0, 0, 0], [0, 0, 0]])
    assert np.array_equal(sigma("e", "e"), np.diag([1, 0, 0]))
    assert np.array_equal(ket_bra("i", "g"), sigma("g", "i"))


@pytest.mark.parametrize("x,y", list(itertools.product(LEVELS, repeat=2)))
def test_sigma_algebra(x, y):
    assert np.array_equal(sigma(x, y) @ sigma(y, x), sigma(y, y))
    assert np.array_equal(sigma(x, y).conj().T, sigma(y, x))


def test_annihilator():
    assert np.array_equal(annihilator(2), [[0, 1], [0, 0]])
    vac = np.zeros(4)
    vac[0] = 1
    assert np.array_equal(annihilator(4) @ vac, np.zeros(4))
    a = annihilator(6)
    # sqrt(n)**2 rounds, so exact equality holds only to one ulp
    assert max_abs_diff(a.conj().T @ a, number_operator(6)) < 1e-14
    assert np.array_equal(creator(6), a.conj().T)
    with pytest.raises(ValueError):
        annihilator(0)


def test_embed_examples():
    tr = FockTruncation(3, 2)
    assert np.array_equal(embed(np.eye(3), np.eye(3), np.eye(2), tr), np.eye(tr.dim))
    out = embed(sigma("g", "i"), annihilator(3), np.eye(2), tr) @ joint_ket("g", 1, 0, tr)
    assert np.array_equal(out, joint_ket("i", 0, 0, tr))
    proj = embed(sigma("g", "g"), np.eye(3), np.eye(2), tr)
    assert np.array_equal(proj @ joint_ket("e", 2, 1, tr), np.zeros(tr.dim))


def test_embed_dimension_mismatch():
    with pytest.raises(DimensionError):
        embed(np.eye(3), np.eye(2), np.eye(2), FockTruncation(3, 2))


def test_embed_mixed_product(rng):
    tr = FockTruncation(3, 2)

    def r(n):
        return rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))

    a1, b1, c1, a2, b2, c2 = r(3), r(3), r(2), r(3), r(3), r(2)
    lhs = embed(a1, b1, c1, tr) @ embed(a2, b2, c2, tr)
    assert max_abs_diff(lhs, embed(a1 @ a2, b1 @ b2, c1 @ c2, tr)) < 1e-12


def test_joint_index_layout():
    tr = FockTruncation(4, 5)
    assert tr.dim == 60
    assert joint_index("i", 2, 3, tr) == (1 * 4 + 2) * 5 + 3
    with pytest.raises(IndexError):
        joint_index("e", 4, 0, tr)
    with pytest.raises(ValueError):
        FockTruncation(0, 3)


def test_dipole_operator():
    assert np.array_equal(dipole_operator(1, 0), sigma("g", "i") + sigma("i", "g"))
    wp_ig, wp_ei = 0.3 + 0.4j, -1.1 + 0.2j
    d = dipole_operator(wp_ig, wp_ei)
    assert np.allclose(d @ atomic_ket("g"), wp_ig * atomic_ket("i"))
    assert np.allclose(d @ atomic_ket("i"), np.conj(wp_ig) * atomic_ket("g") + wp_ei * atomic_ket("e"))
    assert np.array_equal(np.diag(d), np.zeros(3))
    assert d[0, 2] == 0 and d[2, 0] == 0
    assert np.array_equal(d, d.conj().T)
