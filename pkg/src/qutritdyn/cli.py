"""Command-line front end.

Exit codes: 0 success, 1 tolerance breach, 2 bad input.  Every artifact
embeds its full parameter set, and ``qutritdyn rerun FILE`` regenerates it.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import __version__
from .ensemble import CoherentPrep, TruncationError, evolve_ensemble
from .evolution import semiclassical_from_params
from .gates import (
    NonUnitaryTargetError,
    compile_pulse_sequence,
    random_sequence,
    synthesize,
    x3,
)
from .hamiltonians import Configuration, SystemParams
from .operators import FockTruncation
from .validation import CHECKS, report_json, run_validation

EXIT_OK, EXIT_BREACH, EXIT_INPUT = 0, 1, 2
PROB_TOL = 1e-8

PERMUTATIONS = {
    "swap01": (1, 0, 2),
    "swap12": (0, 2, 1),
    "swap02": (2, 1, 0),
    "cycle": (1, 2, 0),
    "cycle-inv": (2, 0, 1),
}


class InputError(ValueError):
    pass


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _complex_arg(text: str) -> complex:
    try:
        return complex(text.replace(" ", ""))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from None


def _config_arg(text: str) -> str:
    try:
        return Configuration.parse(text).value
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _atom_arg(text: str):
    if text in ("e", "i", "g"):
        return text
    try:
        vals = json.loads(text)
        amps = [complex(*v) if isinstance(v, list) else complex(v) for v in vals]
    except (ValueError, TypeError):
        raise argparse.ArgumentTypeError(
            f"atom must be e, i, g or a JSON list of three amplitudes, got {text!r}"
        ) from None
    if len(amps) != 3:
        raise argparse.ArgumentTypeError("atom needs exactly three amplitudes")
    return amps


def _seed(args) -> int:
    env = os.environ.get("QUTRIT_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise InputError(f"QUTRIT_SEED must be an integer, got {env!r}") from None
    return args.seed


def _write(text: str, path: str | None) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _matrix_json(m) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(m)]


# ---- simulate ---------------------------------------------------------------


def cmd_simulate(args) -> int:
    if args.tmax < 0:
        raise InputError("--tmax must be >= 0")
    if args.samples < 1:
        raise InputError("--samples must be >= 1")
    atom = args.atom
    amps = {"e": (1, 0, 0), "i": (0, 1, 0), "g": (0, 0, 1)}[atom] if isinstance(atom, str) else atom
    try:
        params = SystemParams(g_a=args.ga, g_b=args.gb, delta_phi=args.dphi)
        prep = CoherentPrep(args.mean_a, args.mean_b, args.phase_a, args.phase_b, tuple(amps))
    except ValueError as exc:
        raise InputError(str(exc)) from None
    times = np.array([0.0]) if args.tmax == 0 else np.linspace(0.0, args.tmax, args.samples)
    try:
        traj = evolve_ensemble(args.config, params, prep, times, FockTruncation(args.cutoff, args.cutoff))
    except TruncationError as exc:
        raise InputError(str(exc)) from None

    meta = {
        "command": "simulate",
        "version": __version__,
        "config": args.config,
        "ga": args.ga,
        "gb": args.gb,
        "dphi": args.dphi,
        "atom": atom if isinstance(atom, str) else [[z.real, z.imag] for z in amps],
        "mean_a": args.mean_a,
        "mean_b": args.mean_b,
        "phase_a": args.phase_a,
        "phase_b": args.phase_b,
        "tmax": args.tmax,
        "samples": args.samples,
        "cutoff": args.cutoff,
        "seed": _seed(args),
    }
    lines = ["# " + json.dumps(meta, sort_keys=True), "t,p_e,p_i,p_g"]
    for row in zip(traj.times, traj.p_e, traj.p_i, traj.p_g):
        lines.append(",".join(_fmt(x) for x in row))
    _write("\n".join(lines) + "\n", args.output)

    drift = float(np.max(np.abs(traj.total() - 1.0)))
    if drift > PROB_TOL:
        print(f"population sum drifts by {drift:.3e} > {PROB_TOL:g}", file=sys.stderr)
        return EXIT_BREACH
    return EXIT_OK


# ---- validate ---------------------------------------------------------------


def cmd_validate(args) -> int:
    checks = None
    if args.checks:
        checks = [c.strip() for c in args.checks.split(",") if c.strip()]
        unknown = [c for c in checks if c not in CHECKS]
        if unknown:
            raise InputError(f"unknown checks {unknown}; choose from {', '.join(CHECKS)}")
    report = run_validation(checks, seed=_seed(args))
    report["metadata"] = {"command": "validate", "version": __version__, "checks": checks, "seed": report["seed"]}
    _write(report_json(report), args.output)
    if not report["passed"]:
        failed = [k for k, v in report["checks"].items() if not v["passed"]]
        print(f"tolerance breach in: {', '.join(failed)}", file=sys.stderr)
        return EXIT_BREACH
    return EXIT_OK


# ---- semiclassical ----------------------------------------------------------


def cmd_semiclassical(args) -> int:
    try:
        params = SystemParams(g_a=args.ga, g_b=args.gb, delta_phi=args.dphi)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    u = semiclassical_from_params(args.config, params, args.alpha, args.beta, args.t)
    meta = {
        "command": "semiclassical",
        "version": __version__,
        "config": args.config,
        "ga": args.ga,
        "gb": args.gb,
        "dphi": args.dphi,
        "alpha": [args.alpha.real, args.alpha.imag],
        "beta": [args.beta.real, args.beta.imag],
        "t": args.t,
    }
    _write(json.dumps({"metadata": meta, "matrix": _matrix_json(u)}, indent=2, sort_keys=True) + "\n", args.output)
    return EXIT_OK


# ---- synthesize -------------------------------------------------------------


def parse_target(text: str) -> np.ndarray:
    """Named preset or inline JSON matrix of ``[re, im]`` pairs."""
    text = text.strip()
    if text == "identity":
        return np.eye(3, dtype=complex)
    if text.startswith("x3:"):
        try:
            return x3(float(text[3:]))
        except ValueError:
            raise InputError(f"bad phase in {text!r}") from None
    if text.startswith("random:"):
        try:
            rng = np.random.default_rng(int(text[7:]))
        except ValueError:
            raise InputError(f"bad seed in {text!r}") from None
        return compile_pulse_sequence(random_sequence(3, rng))
    if text in PERMUTATIONS:
        return np.eye(3, dtype=complex)[:, list(PERMUTATIONS[text])]
    try:
        rows = json.loads(text)
        m = np.array([[complex(*z) if isinstance(z, list) else complex(z) for z in row] for row in rows])
    except (ValueError, TypeError):
        raise InputError(
            f"unknown target {text!r}; use identity, x3:PHI, random:SEED, "
            f"{', '.join(PERMUTATIONS)} or a JSON matrix of [re, im] pairs"
        ) from None
    if m.shape != (3, 3):
        raise InputError(f"target must be 3x3, got shape {m.shape}")
    return m


def cmd_synthesize(args) -> int:
    target = parse_target(args.target)
    if args.max_pulses < 0 or args.starts < 1 or not 0 < args.tol < 1:
        raise InputError("need --max-pulses >= 0, --starts >= 1 and 0 < --tol < 1")
    seed = _seed(args)
    try:
        res = synthesize(target, args.max_pulses, tol=args.tol, starts=args.starts, seed=seed)
    except NonUnitaryTargetError as exc:
        raise InputError(str(exc)) from None
    out = res.to_dict()
    out["metadata"] = {
        "command": "synthesize",
        "version": __version__,
        "target": args.target,
        "max_pulses": args.max_pulses,
        "tol": args.tol,
        "starts": args.starts,
        "seed": seed,
    }
    _write(json.dumps(out, indent=2, sort_keys=True) + "\n", args.output)
    return EXIT_OK


# ---- rerun ------------------------------------------------------------------


def _metadata_argv(meta: dict) -> list[str]:
    cmd = meta.get("command")
    if cmd == "simulate":
        atom = meta["atom"] if isinstance(meta["atom"], str) else json.dumps(meta["atom"])
        argv = ["simulate", "--atom", atom]
        for key in ("config", "ga", "gb", "dphi", "mean_a", "mean_b", "phase_a", "phase_b", "tmax", "samples", "cutoff", "seed"):
            argv += ["--" + key.replace("_", "-"), str(meta[key])]
        return argv
    if cmd == "semiclassical":
        argv = ["semiclassical"]
        for key in ("config", "ga", "gb", "dphi", "t"):
            argv += ["--" + key, str(meta[key])]
        for key in ("alpha", "beta"):
            argv += ["--" + key, str(complex(*meta[key]))]
        return argv
    if cmd == "synthesize":
        return [
            "synthesize", "--target", meta["target"], "--max-pulses", str(meta["max_pulses"]),
            "--tol", repr(meta["tol"]), "--starts", str(meta["starts"]), "--seed", str(meta["seed"]),
        ]
    if cmd == "validate":
        argv = ["validate", "--seed", str(meta["seed"])]
        if meta.get("checks"):
            argv += ["--checks", ",".join(meta["checks"])]
        return argv
    raise InputError(f"no rerunnable metadata (command {cmd!r})")


def read_metadata(path: str) -> dict:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if text.startswith("# "):
        return json.loads(text.splitlines()[0][2:])
    try:
        return json.loads(text)["metadata"]
    except (ValueError, KeyError, TypeError):
        raise InputError(f"{path} carries no metadata") from None


def cmd_rerun(args) -> int:
    try:
        meta = read_metadata(args.artifact)
    except OSError as exc:
        raise InputError(str(exc)) from None
    argv = _metadata_argv(meta)
    if args.output:
        argv += ["-o", args.output]
    sub = build_parser().parse_args(argv)
    return sub.func(sub)


# ---- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qutritdyn", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, seed=True):
        sp.add_argument("-o", "--output", help="output path (default: stdout)")
        if seed:
            sp.add_argument("--seed", type=int, default=0, help="RNG seed; QUTRIT_SEED overrides")

    def couplings(sp):
        sp.add_argument("--config", type=_config_arg, default="L", help="L|ladder, lambda, V|vee")
        sp.add_argument("--ga", type=float, default=1.0, help="coupling g_a (angular frequency)")
        sp.add_argument("--gb", type=float, default=1.0, help="coupling g_b (angular frequency)")
        sp.add_argument("--dphi", type=float, default=0.0, help="phase difference delta_phi")

    s = sub.add_parser("simulate", help="coherent-state population trajectory as CSV")
    couplings(s)
    s.add_argument("--atom", type=_atom_arg, default="e", help="e, i, g or JSON [c_e, c_i, c_g]")
    s.add_argument("--mean-a", type=float, default=0.0)
    s.add_argument("--mean-b", type=float, default=0.0)
    s.add_argument("--phase-a", type=float, default=0.0)
    s.add_argument("--phase-b", type=float, default=0.0)
    s.add_argument("--tmax", type=float, default=10.0)
    s.add_argument("--samples", type=int, default=400)
    s.add_argument("--cutoff", type=int, default=24, help="Fock cutoff per mode")
    common(s)
    s.set_defaults(func=cmd_simulate)

    v = sub.add_parser("validate", help="oracle-equivalence suite as a JSON report")
    v.add_argument("--checks", help=f"comma list from: {', '.join(CHECKS)}")
    common(v)
    v.set_defaults(func=cmd_validate)

    c = sub.add_parser("semiclassical", help="3x3 coherent-amplitude propagator as JSON")
    couplings(c)
    c.add_argument("--alpha", type=_complex_arg, default=1 + 0j)
    c.add_argument("--beta", type=_complex_arg, default=1 + 0j)
    c.add_argument("--t", type=float, default=1.0)
    common(c, seed=False)
    c.set_defaults(func=cmd_semiclassical)

    y = sub.add_parser("synthesize", help="pulse sequence approximating a target gate")
    y.add_argument("--target", default="identity", help="identity, x3:PHI, random:SEED, permutation name or JSON")
    y.add_argument("--max-pulses", type=int, default=3)
    y.add_argument("--tol", type=float, default=1e-6)
    y.add_argument("--starts", type=int, default=32)
    common(y)
    y.set_defaults(func=cmd_synthesize)

    r = sub.add_parser("rerun", help="regenerate an artifact from its embedded metadata")
    r.add_argument("artifact")
    r.add_argument("-o", "--output")
    r.set_defaults(func=cmd_rerun)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
