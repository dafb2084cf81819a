import numpy as np
import pytest

from qutritdyn.evolution import BlockIndex, block_unitary, closed_form_exp
from qutritdyn.hamiltonians import Configuration, SystemParams
from qutritdyn.printed import (
    RECORDED,
    REFERENCE,
    ReferencePoint,
    compare_entries,
    derived_ladder_parts,
    discrepancy_ledger,
    printed_block_unitary,
    printed_closed_form,
    printed_rabi_frequency,
)


def test_ledger_complete_at_reference():
    ledger = discrepancy_ledger()
    assert ledger["complete"]
    assert len(ledger["recorded"]) == len(RECORDED)
    for d in ledger["recorded"]:
        assert d["abs_diff"] > 1e-6
        assert len(d["printed"]) == 2 and len(d["derived"]) == 2


def test_ledger_complete_at_other_point():
    p = ReferencePoint(g_a=1.7, g_b=0.45, delta_phi=-1.1, n_a=3, n_b=3, t=2.3, alpha=-0.4 + 1.1j, beta=0.9 - 0.3j)
    assert discrepancy_ledger(p)["complete"]


def test_unrecorded_entries_agree():
    recorded = {(s, c, e) for s, c, e, _ in RECORDED}
    for d in compare_entries():
        if (d.source, d.config, d.entry) not in recorded:
            assert d.abs_diff < 1e-12, d


def test_v_configuration_printed_table_is_exact():
    p = SystemParams(g_a=0.8, g_b=1.3, delta_phi=0.4)
    block = BlockIndex("V", 2, 1)
    lam = block.rabi_frequency(p)
    printed = printed_block_unitary("V", 0.8, 1.3, 0.4, 2, 1, 1.7, lam)
    assert np.max(np.abs(printed - block_unitary(block, p, 1.7))) < 1e-12


def test_printed_lambda_rabi_frequency_typo():
    p = SystemParams(g_a=0.8, g_b=1.3)
    assert printed_rabi_frequency("lambda", 0.8, 1.3, 1, 1) == pytest.approx(
        BlockIndex("lambda", 1, 1).rabi_frequency(p)
    )
    assert printed_rabi_frequency("lambda", 0.8, 1.3, 1, 2) != pytest.approx(
        BlockIndex("lambda", 1, 2).rabi_frequency(p)
    )


def test_printed_closed_form_differs_only_in_u13():
    u = printed_closed_form(0.4 + 0.3j, -0.7 + 0.2j)
    d = np.abs(u - closed_form_exp(0.4 + 0.3j, -0.7 + 0.2j)) > 1e-12
    assert d[0, 2] and d.sum() == 1


def test_derived_parts_reconstruct():
    r = REFERENCE
    p0, pc, ps, u = derived_ladder_parts(r.g_a, r.g_b, r.delta_phi, r.alpha, r.beta, r.t)
    assert np.max(np.abs(u.conj().T @ u - np.eye(3))) < 1e-12
