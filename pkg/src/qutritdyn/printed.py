"""Published closed-form entries, transcribed as printed, for regression against the derivation.

Some printed entries disagree with the exact exponential.  Each known
disagreement is listed in :data:`RECORDED`; :func:`discrepancy_ledger`
evaluates printed and derived values side by side at one fixed parameter
point and also confirms that no other entry disagrees.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .evolution import BlockIndex, block_unitary, closed_form_exp, semiclassical_amplitudes
from .hamiltonians import Configuration, SystemParams

__all__ = [
    "ReferencePoint",
    "REFERENCE",
    "RECORDED",
    "Discrepancy",
    "printed_rabi_frequency",
    "printed_block_unitary",
    "printed_closed_form",
    "printed_ladder_parts",
    "derived_ladder_parts",
    "compare_entries",
    "discrepancy_ledger",
]


@dataclass(frozen=True)
class ReferencePoint:
    g_a: float = 0.8
    g_b: float = 1.3
    delta_phi: float = 0.4
    n_a: int = 1
    n_b: int = 2
    t: float = 0.9
    alpha: complex = 0.7 + 0.2j
    beta: complex = -0.3 + 0.9j


REFERENCE = ReferencePoint()

# (source, config, entry, note); entries use the printed 1-based labels
RECORDED = (
    ("block", "L", "u13", "overall sign flipped"),
    ("block", "L", "u23", "g_b with e^{-i dphi} printed; derivation gives g_a, no phase"),
    ("block", "L", "u31", "overall sign flipped and e^{-i dphi} printed for e^{+i dphi}"),
    ("block", "L", "u32", "g_b with e^{-i dphi} printed; derivation gives g_a, no phase"),
    ("block", "L", "u33", "g_a^2 (n_a+1) printed; derivation gives g_b^2 (n_b+1)"),
    ("block", "lambda", "u23", "g_b printed; derivation gives g_a"),
    ("block", "lambda", "lambda", "n_b^2 printed under the root; derivation gives n_b"),
    ("exponential", "general", "u13", "extra overall minus sign"),
    ("ladder_parts", "L", "cos[2,2]", "alpha^2 + beta^2 printed; derivation gives |alpha|^2 + |beta|^2"),
    ("ladder_parts", "L", "sin", "prefactor lacks i*G' (G' = sqrt(g_a^2|alpha|^2 + g_b^2|beta|^2))"),
)


def printed_rabi_frequency(config, g_a, g_b, n_a, n_b) -> float:
    config = Configuration.parse(config)
    if config is Configuration.LADDER:
        return float(np.sqrt(g_a**2 * (n_a + 1) + g_b**2 * (n_b + 1)))
    if config is Configuration.LAMBDA:
        return float(np.sqrt(g_a**2 * (n_a + 1) + g_b**2 * n_b**2))
    return float(np.sqrt(g_a**2 * n_a + g_b**2 * (n_b + 1)))


def printed_block_unitary(config, g_a, g_b, dphi, n_a, n_b, t, lam=None) -> np.ndarray:
    """Block propagator assembled entry by entry from the printed tables.

    ``lam`` defaults to the printed Rabi frequency; pass the corrected one
    to isolate entry misprints from the lambda-configuration n_b^2 misprint.
    """
    config = Configuration.parse(config)
    if lam is None:
        lam = printed_rabi_frequency(config, g_a, g_b, n_a, n_b)
    c, s = np.cos(lam * t), np.sin(lam * t)
    one_c = 1 - c
    em, ep = np.exp(-1j * dphi), np.exp(1j * dphi)
    u = np.empty((3, 3), dtype=complex)
    if config is Configuration.LADDER:
        ra, rb = np.sqrt(n_a + 1), np.sqrt(n_b + 1)
        u[0, 0] = c + g_a**2 / lam**2 * (n_a + 1) * one_c
        u[0, 1] = -1j * g_b / lam * em * rb * s
        u[0, 2] = g_b * g_a / lam**2 * em * rb * ra * one_c
        u[1, 0] = -1j * g_b / lam * ep * rb * s
        u[1, 1] = c
        u[1, 2] = -1j * g_b / lam * em * ra * s
        u[2, 0] = g_b * g_a / lam**2 * em * rb * ra * one_c
        u[2, 1] = -1j * g_b / lam * em * ra * s
        u[2, 2] = c + g_a**2 / lam**2 * (n_a + 1) * one_c
    elif config is Configuration.LAMBDA:
        ra, rb = np.sqrt(n_a + 1), np.sqrt(n_b)
        u[0, 0] = c + g_a**2 / lam**2 * (n_a + 1) * one_c
        u[0, 1] = 1j * g_b / lam * em * rb * s
        u[0, 2] = g_b * g_a / lam**2 * em * rb * ra * one_c
        u[1, 0] = 1j * g_b / lam * ep * rb * s
        u[1, 1] = c
        u[1, 2] = -1j * g_b / lam * ra * s
        u[2, 0] = g_b * g_a / lam**2 * ep * rb * ra * one_c
        u[2, 1] = -1j * g_a / lam * ra * s
        u[2, 2] = c + g_b**2 / lam**2 * n_b * one_c
    else:
        ra, rb = np.sqrt(n_a), np.sqrt(n_b + 1)
        u[0, 0] = c + g_a**2 / lam**2 * n_a * one_c
        u[0, 1] = -1j * g_b / lam * em * rb * s
        u[0, 2] = g_b * g_a / lam**2 * em * rb * ra * one_c
        u[1, 0] = -1j * g_b / lam * ep * rb * s
        u[1, 1] = c
        u[1, 2] = 1j * g_a / lam * ra * s
        u[2, 0] = g_b * g_a / lam**2 * ep * rb * ra * one_c
        u[2, 1] = 1j * g_a / lam * ra * s
        u[2, 2] = c + g_b**2 / lam**2 * (n_b + 1) * one_c
    return u


def printed_closed_form(A: complex, B: complex) -> np.ndarray:
    """The general exponential exactly as printed (needs ``G != 0``)."""
    aa, bb = abs(A) ** 2, abs(B) ** 2
    g2 = aa + bb
    g = np.sqrt(g2)
    c, s = np.cos(g), np.sin(g)
    Ac, Bc = np.conj(A), np.conj(B)
    return np.array(
        [
            [(aa + bb * c) / g2, -1j * B * s / g, -B * A * (c - 1) / g2],
            [-1j * Bc * s / g, c, -1j * A * s / g],
            [Ac * Bc * (c - 1) / g2, -1j * Ac * s / g, (bb + aa * c) / g2],
        ]
    )


def printed_ladder_parts(g_a, g_b, dphi, alpha, beta, t):
    """Printed (constant, cos, sin) parts of the L-configuration propagator.

    Returns ``(P0, Pc, Ps, U)`` where ``U = P0 + cos(Gt) Pc - sin(Gt) Ps``
    is the sum as printed, with the common ``1/G'^2`` prefactor applied.
    """
    em, ep = np.exp(-1j * dphi), np.exp(1j * dphi)
    aa, bb = abs(alpha) ** 2, abs(beta) ** 2
    gp2 = g_a**2 * aa + g_b**2 * bb
    x = g_a * g_b * beta * alpha
    xc = g_a * g_b * np.conj(beta) * np.conj(alpha)
    p0 = np.array([[g_a**2 * aa, 0, -em * x], [0, 0, 0], [-ep * xc, 0, g_b**2 * bb]]) / gp2
    pc = (
        np.array(
            [
                [g_b**2 * bb, 0, em * x],
                [0, g_a**2 * alpha**2 + g_b**2 * beta**2, 0],
                [ep * xc, 0, g_a**2 * aa],
            ]
        )
        / gp2
    )
    ps = (
        np.array(
            [
                [0, em * g_b * beta, 0],
                [ep * g_b * np.conj(beta), 0, g_a * alpha],
                [0, g_a * np.conj(alpha), 0],
            ]
        )
        / gp2
    )
    arg = t * np.sqrt(gp2)
    return p0, pc, ps, p0 + np.cos(arg) * pc - np.sin(arg) * ps


def derived_ladder_parts(g_a, g_b, dphi, alpha, beta, t):
    """Exact counterparts of :func:`printed_ladder_parts`: ``U = P0 + cos Pc - sin Ps``."""
    params = SystemParams(g_a=g_a, g_b=g_b, delta_phi=dphi)
    gen = semiclassical_amplitudes("L", params, alpha, beta, t)
    m = gen.matrix()
    G = gen.G
    m2 = m @ m / G**2
    p0, pc, ps = np.eye(3) - m2, m2, 1j * m / G
    return p0, pc, ps, p0 + np.cos(G) * pc - np.sin(G) * ps


@dataclass(frozen=True)
class Discrepancy:
    source: str
    config: str
    entry: str
    printed: complex
    derived: complex
    abs_diff: float
    note: str = ""

    def to_dict(self) -> dict:
        d = asdict(self)
        for k in ("printed", "derived"):
            z = complex(d[k])
            d[k] = [z.real, z.imag]
        return d


def _params(p: ReferencePoint) -> SystemParams:
    return SystemParams(g_a=p.g_a, g_b=p.g_b, delta_phi=p.delta_phi)


def compare_entries(p: ReferencePoint = REFERENCE) -> list[Discrepancy]:
    """Every comparable printed/derived pair at ``p``, matching or not."""
    out = []
    for cfg in Configuration:
        block = BlockIndex(cfg, p.n_a, p.n_b)
        derived = block_unitary(block, _params(p), p.t)
        lam = block.rabi_frequency(_params(p))
        printed = printed_block_unitary(cfg, p.g_a, p.g_b, p.delta_phi, p.n_a, p.n_b, p.t, lam)
        for j in range(3):
            for k in range(3):
                out.append(
                    Discrepancy(
                        "block", cfg.value, f"u{j + 1}{k + 1}", complex(printed[j, k]),
                        complex(derived[j, k]), float(abs(printed[j, k] - derived[j, k])),
                    )
                )
        lp = printed_rabi_frequency(cfg, p.g_a, p.g_b, p.n_a, p.n_b)
        ld = block.rabi_frequency(_params(p))
        out.append(Discrepancy("block", cfg.value, "lambda", lp, ld, abs(lp - ld)))

    gen = semiclassical_amplitudes("L", _params(p), p.alpha, p.beta, p.t)
    pr = printed_closed_form(gen.A, gen.B)
    de = closed_form_exp(gen.A, gen.B)
    for j in range(3):
        for k in range(3):
            out.append(
                Discrepancy(
                    "exponential", "general", f"u{j + 1}{k + 1}", complex(pr[j, k]),
                    complex(de[j, k]), float(abs(pr[j, k] - de[j, k])),
                )
            )

    pp = printed_ladder_parts(p.g_a, p.g_b, p.delta_phi, p.alpha, p.beta, p.t)
    dp = derived_ladder_parts(p.g_a, p.g_b, p.delta_phi, p.alpha, p.beta, p.t)
    for name, a, b in zip(("const", "cos"), pp[:2], dp[:2]):
        for j in range(3):
            for k in range(3):
                out.append(
                    Discrepancy(
                        "ladder_parts", "L", f"{name}[{j + 1},{k + 1}]", complex(a[j, k]),
                        complex(b[j, k]), float(abs(a[j, k] - b[j, k])),
                    )
                )
    # the sin part is misprinted as a whole, so it is compared as one matrix
    k = int(np.argmax(np.abs(pp[2] - dp[2])))
    j, i = divmod(k, 3)
    out.append(
        Discrepancy(
            "ladder_parts", "L", "sin", complex(pp[2][j, i]), complex(dp[2][j, i]),
            float(np.max(np.abs(pp[2] - dp[2]))),
        )
    )
    return out


def discrepancy_ledger(p: ReferencePoint = REFERENCE, tol: float = 1e-12) -> dict:
    """Recorded misprints with printed and derived values side by side.

    ``unrecorded`` lists entries that disagree but are missing from
    :data:`RECORDED`; ``resolved`` lists recorded entries that agree at ``p``.
    Both are empty when the ledger is complete.
    """
    entries = compare_entries(p)
    by_key = {(d.source, d.config, d.entry): d for d in entries}
    notes = {(s, c, e): n for s, c, e, n in RECORDED}
    recorded = []
    for key, note in notes.items():
        d = by_key[key]
        recorded.append(
            Discrepancy(d.source, d.config, d.entry, d.printed, d.derived, d.abs_diff, note)
        )
    unrecorded = [d for d in entries if d.abs_diff > tol and (d.source, d.config, d.entry) not in notes]
    resolved = [d for d in recorded if d.abs_diff <= tol]
    return {
        "reference": {k: (v if not isinstance(v, complex) else [v.real, v.imag]) for k, v in asdict(p).items()},
        "recorded": [d.to_dict() for d in recorded],
        "unrecorded": [d.to_dict() for d in unrecorded],
        "resolved": [d.to_dict() for d in resolved],
        "complete": not unrecorded and not resolved,
    }
