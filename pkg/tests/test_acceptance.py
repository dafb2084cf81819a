"""Acceptance criteria, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -v`` or directly with
``python3 tests/test_acceptance.py``.
"""

import json
import sys
import time

import numpy as np
import pytest

from qutritdyn.gates import Pulse, x3, z3
from qutritdyn.validation import (
    check_closed_form,
    check_gates,
    check_joint_space,
    check_ode,
    check_rwa_scaling,
    check_specials,
    check_typo_ledger,
    check_unitarity,
    jc_vacuum_deviation,
    report_json,
    run_validation,
)

SEED = 0


def _fmt(metrics):
    return ", ".join(f"{k}={v:.3g}" for k, v in metrics.items())


def c1():
    t0 = time.perf_counter()
    sec = check_closed_form(SEED, n_cases=200)
    dt = time.perf_counter() - t0
    return sec["passed"] and dt < 10, f"{_fmt(sec['metrics'])}, {dt:.1f}s (limit 10s)"


def c2():
    t0 = time.perf_counter()
    sec = check_joint_space(SEED, n_cases=50, cutoff=24)
    dt = time.perf_counter() - t0
    return sec["passed"] and dt < 60, f"{_fmt(sec['metrics'])}, {dt:.1f}s (limit 60s)"


def c3():
    sec = check_unitarity(SEED)
    return sec["passed"], _fmt(sec["metrics"])


def c4():
    sec = check_specials(SEED)
    keys = ("identity_at_t0", "dark_state_h", "dark_state_trajectory", "u22_vs_cos", "lambda_formula")
    m = {k: sec["metrics"][k] for k in keys}
    return all(v < sec["tolerances"][k] for k, v in m.items()), _fmt(m)


def c5():
    dev = jc_vacuum_deviation()
    return dev < 1e-10, f"max|P_i - cos^2(g_a t)|={dev:.3g}"


def c6():
    sec = check_ode(SEED, steps=10_000)
    ratios = ", ".join(f"{r:.1f}" for r in sec["step_doubling_ratios"])
    return sec["passed"], f"{_fmt(sec['metrics'])}, step-doubling error ratios [{ratios}]"


def c7():
    t0 = time.perf_counter()
    sec = check_rwa_scaling()
    dt = time.perf_counter() - t0
    m = sec["metrics"]
    ref = sec["pure_level_reference"]["ratio"]
    return (
        sec["passed"] and dt < 120,
        f"ratio={m['ratio']:.3g} (range [1.5, 3]), envelope={m['envelope']:.3g}, "
        f"pure-level ratio {ref:.2f} for reference, {dt:.1f}s (limit 120s)",
    )


def c8():
    sec = check_gates(SEED, trials=50, pulses=3)
    phi = 1.234
    e = np.eye(3)
    exact = (
        np.array_equal(x3(phi) @ e[0], e[0])
        and np.array_equal(x3(phi) @ e[1], e[1])
        and np.array_equal(x3(phi) @ e[2], np.exp(1j * phi) * e[2])
    )
    z = z3(0.5, 0.5, 0.5).unitarity_deviation  # reported only
    rt = sec["round_trip"]
    return (
        sec["passed"] and exact,
        f"{_fmt(sec['metrics'])}, round trips {rt['successes']}/{rt['trials']}, "
        f"z3(0.5,0.5,0.5) unitarity deviation {z:.3g} (reported)",
    )


def c9():
    sec = check_typo_ledger()
    ledger = json.loads(report_json(run_validation(["typo_ledger"])))["checks"]["typo_ledger"]["ledger"]
    wanted = {("block", "L", "u13"), ("block", "L", "u23"), ("block", "L", "u32"),
              ("block", "L", "u33"), ("block", "lambda", "lambda")}
    listed = {(d["source"], d["config"], d["entry"]) for d in ledger["recorded"]}
    side_by_side = all(len(d["printed"]) == 2 and len(d["derived"]) == 2 for d in ledger["recorded"])
    ok = sec["passed"] and wanted <= listed and side_by_side and ledger["complete"]
    return ok, f"{len(ledger['recorded'])} recorded discrepancies, complete={ledger['complete']}"


CRITERIA = [
    (1, "closed form vs oracle", c1),
    (2, "joint-space consistency", c2),
    (3, "unitarity and probability conservation", c3),
    (4, "special cases", c4),
    (5, "Jaynes-Cummings reduction", c5),
    (6, "amplitude-ODE equivalence", c6),
    (7, "RWA scaling", c7),
    (8, "gate properties", c8),
    (9, "discrepancy ledger", c9),
]


def _line(num, name, ok, detail):
    return f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {name}: {detail}"


@pytest.mark.parametrize("num,name,fn", CRITERIA, ids=[f"c{n}" for n, _, _ in CRITERIA])
def test_criterion(num, name, fn, capsys):
    ok, detail = fn()
    with capsys.disabled():
        print("\n" + _line(num, name, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for num, name, fn in CRITERIA:
        ok, detail = fn()
        failed += not ok
        print(_line(num, name, ok, detail), flush=True)
    sys.exit(1 if failed else 0)
