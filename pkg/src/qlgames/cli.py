"""Command-line surface: lattice checks, solvers, sweeps, simulation, play.

Exit codes: 0 success, 1 property-check failure, 2 usage or config error.
All angles are degrees; JSON output is stable-key-ordered for golden
tests.  The default seed comes from QLGAMES_SEED when set.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys

import numpy as np

from . import contextual, equilibrium, hilbert, lattice, playsim
from .games import (
    GameSpecError,
    SpinHalfGameSpec,
    SpinOneGameSpec,
    payoff_matrix_half,
    payoff_matrix_one,
    pure_saddle_exists,
)

_THETA_SET = (10.0, 30.0, 45.0, 70.0, 89.0)
SCHEMA_VERSION = 1


def _emit(obj, path):
    text = json.dumps(obj, sort_keys=True, indent=2) + "\n"
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _write_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def _default_seed():
    return int(os.environ.get("QLGAMES_SEED", "0"))


def _usage_error(message):
    print(f"error: {message}", file=sys.stderr)
    return 2


def _load_config(path):
    with open(path) as fh:
        cfg = json.load(fh)
    if cfg.get("schema_version") != SCHEMA_VERSION:
        raise GameSpecError(f"config schema_version must be {SCHEMA_VERSION}")
    return cfg


def _build_spec(args):
    """Game spec from config file plus flag overrides (flags win)."""
    cfg = _load_config(args.config) if getattr(args, "config", None) else {}
    game = args.game or cfg.get("game")
    if game not in ("spin-half", "spin-one"):
        raise GameSpecError(f"unknown game {game!r}")
    payoffs = dict(cfg.get("payoffs", {}))
    theta_a = args.theta_a if args.theta_a is not None else cfg.get("theta_a")
    theta_b = args.theta_b if args.theta_b is not None else cfg.get("theta_b")
    if theta_a is None or theta_b is None:
        raise GameSpecError("theta_a and theta_b are required (flags or config)")
    if game == "spin-half":
        if getattr(args, "payoffs", None) is not None:
            payoffs = dict(zip("abcd", args.payoffs))
        return SpinHalfGameSpec(
            theta_a,
            theta_b,
            payoffs.get("a", 1.0),
            payoffs.get("b", 1.0),
            payoffs.get("c", 1.0),
            payoffs.get("d", 1.0),
        )
    u = args.u if getattr(args, "u", None) is not None else payoffs.get("u")
    v = args.v if getattr(args, "v", None) is not None else payoffs.get("v")
    if u is None or v is None:
        raise GameSpecError("spin-one payoffs need --u and --v (or config)")
    return SpinOneGameSpec(theta_a, theta_b, tuple(u), tuple(v))


def _require_positive_payoffs(spec):
    if isinstance(spec, SpinHalfGameSpec):
        if min(spec.payoffs) <= 0:
            raise GameSpecError("payoffs must be strictly positive")
    else:
        if min(spec.u) <= 0 or min(spec.v) <= 0:
            raise GameSpecError("payoffs must be strictly positive")
        bad = spec.ordering_violations()
        if bad:
            raise GameSpecError("payoff ordering violated: " + ", ".join(bad))


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_lattice(args) -> int:
    if args.game == "spin-half":
        lat = lattice.build_spin_half_lattice()
        rep_for = hilbert.spin_half_representation
    else:
        lat = lattice.build_spin_one_lattice()
        rep_for = hilbert.spin_one_representation
    distributive, first_witness = lattice.certify_distributivity(lat)
    violations = lattice.distributivity_violations(lat)
    modular, mod_witness = lattice.certify_modularity(lat)
    ortho = lattice.certify_orthocomplement(lat)
    thetas = args.theta if args.theta else list(_THETA_SET)
    reps = {}
    for theta in thetas:
        rep = hilbert.check_representation(lat, rep_for(theta))
        reps[f"{theta:g}"] = {
            "ok": rep.ok,
            "max_deviation": rep.max_deviation,
            "mismatches": list(rep.mismatches),
        }
    report = {
        "game": args.game,
        "lattice": lat.to_dict(),
        "distributive": distributive,
        "first_distributivity_witness": None
        if first_witness is None
        else {"triple": list(first_witness.triple), "lhs": first_witness.lhs, "rhs": first_witness.rhs},
        "distributivity_witnesses": [
            {"triple": list(w.triple), "lhs": w.lhs, "rhs": w.rhs} for w in violations
        ],
        "modular": modular,
        "modularity_witness": None if mod_witness is None else list(mod_witness.triple),
        "orthocomplement_ok": ortho.ok,
        "orthocomplement_violations": list(ortho.violations),
        "representation": reps,
    }
    _emit(report, args.output)
    healthy = (
        not distributive
        and modular
        and ortho.ok
        and all(r["ok"] for r in reps.values())
    )
    return 0 if healthy else 1


def cmd_classical(args) -> int:
    spec = _build_spec(args)
    matrix = payoff_matrix_half(spec) if isinstance(spec, SpinHalfGameSpec) else payoff_matrix_one(spec)
    solution = equilibrium.solve_classical(matrix)
    report = {
        "game": args.game,
        "pure_saddle_exists": pure_saddle_exists(matrix),
        "classical": solution.to_dict(),
    }
    _emit(report, args.output)
    return 0


def cmd_equilibrium(args) -> int:
    spec = _build_spec(args)
    _require_positive_payoffs(spec)
    is_half = isinstance(spec, SpinHalfGameSpec)
    defaults = (0.5, 0.01, 0.1) if is_half else (3.0, 0.05, 1.0)
    coarse = args.coarse_step if args.coarse_step is not None else defaults[0]
    refine = args.refine_tol if args.refine_tol is not None else defaults[1]
    residual = args.residual_step if args.residual_step is not None else defaults[2]
    if is_half:
        results = equilibrium.saddle_search_half(
            spec,
            coarse_step=coarse,
            refine_tol=refine,
            residual_step=residual,
            max_residual=args.max_residual,
        )
        matrix = payoff_matrix_half(spec)
        if args.sweep:
            grid = np.arange(0.0, 180.0, coarse)
            from ._kernels import payoff_surface_half

            surface = payoff_surface_half(
                spec.a,
                spec.b,
                spec.c,
                spec.d,
                np.deg2rad(spec.theta_a),
                np.deg2rad(spec.theta_b),
                np.deg2rad(grid),
                np.deg2rad(grid),
            )
            rows = [
                (float(a), float(b), float(surface[i, j]))
                for i, a in enumerate(grid)
                for j, b in enumerate(grid)
            ]
            _write_csv(args.sweep, ("alpha", "beta", "payoff"), rows)
    else:
        if args.sweep:
            return _usage_error("--sweep is only available for the spin-half game")
        results = equilibrium.saddle_search_one(
            spec,
            coarse_step=coarse,
            refine_tol=refine,
            residual_step=residual,
            max_residual=args.max_residual,
        )
        matrix = payoff_matrix_one(spec)
    classical = equilibrium.solve_classical(matrix)
    report = {
        "game": args.game,
        "quantum": [r.to_dict() for r in results],
        "classical": classical.to_dict(),
        "pure_saddle_exists": pure_saddle_exists(matrix),
    }
    _emit(report, args.output)
    return 0


def cmd_simulate(args) -> int:
    spec = _build_spec(args)
    cfg = playsim.SimConfig(
        rounds=args.rounds,
        seed=args.seed if args.seed is not None else _default_seed(),
        mode=args.mode,
        game=args.game,
        risk_policy=args.risk_policy,
    )
    trace = bool(args.trace)
    expected = None
    if args.game == "spin-half":
        if args.mode == "quantum":
            if args.alpha is None or args.beta is None:
                raise GameSpecError("quantum spin-half simulation needs --alpha and --beta")
            report = playsim.simulate_quantum_half(spec, args.alpha, args.beta, cfg, trace=trace)
            expected = playsim.born_no_frequencies_half(spec, args.beta)
        else:
            if args.base is None or args.policy is None:
                raise GameSpecError("mechanical simulation needs --base and --policy")
            report = playsim.simulate_mechanical_half(
                args.base, args.policy, cfg, spec=spec, trace=trace
            )
    else:
        if args.mode != "quantum":
            raise GameSpecError("the spin-one game only has a quantum simulator")
        if args.phi is None or args.psi is None:
            raise GameSpecError("spin-one simulation needs --phi and --psi")
        report = playsim.simulate_quantum_one(
            spec,
            tuple(args.phi),
            tuple(args.psi),
            cfg,
            question_weights=args.question_weights,
            trace=trace,
        )
        expected = playsim.born_no_frequencies_one(spec, tuple(args.psi))
    out = report.to_dict()
    status = 0
    if args.check_freq is not None:
        if expected is None:
            return _usage_error("--check-freq applies to quantum mode only")
        deviation = playsim.frequency_check(report, expected)
        out["frequency_check"] = {"deviation": deviation, "tolerance": args.check_freq}
        if deviation > args.check_freq:
            status = 1
    if args.trace:
        tr = report.trace
        keys = sorted(tr.keys())
        rows = zip(*(tr[k] for k in keys))
        _write_csv(args.trace, ("round",) + tuple(keys), ((i,) + row for i, row in enumerate(rows)))
    _emit(out, args.output)
    return status


def cmd_interference(args) -> int:
    if args.sweep:
        rows = [
            (b, t, d, cs, i, "" if lam is None else lam)
            for (b, t, d, cs, i, lam) in contextual.interference_sweep(
                args.beta_step, args.theta_step
            )
        ]
        _write_csv(
            args.sweep,
            ("beta", "theta", "direct", "classical_sum", "interference", "lambda"),
            rows,
        )
        if args.beta is None or args.theta is None:
            return 0
    if args.beta is None or args.theta is None:
        return _usage_error("interference needs --beta and --theta (or --sweep)")
    rep = contextual.interference_decomposition(args.beta, args.theta)
    _emit(rep.to_dict(), args.output)
    return 0


def cmd_play(args) -> int:
    spec = _build_spec(args)
    if args.script:
        stream = open(args.script)
    elif sys.stdin.isatty():
        stream = sys.stdin
    else:
        return _usage_error("interactive play needs a terminal; use --script for scripted input")
    seed = args.seed if args.seed is not None else _default_seed()
    rng = np.random.Generator(np.random.Philox(int(seed)))
    q1, q2, _, _ = hilbert.spin_half_profile(spec.theta_b, args.beta)
    paytab = {1: spec.a, 2: spec.b, 3: spec.c, 4: spec.d}
    opposite = {1: 3, 2: 4, 3: 1, 4: 2}
    tally = 0.0
    rounds = 0
    interactive = stream is sys.stdin
    try:
        while True:
            if interactive:
                sys.stdout.write("question (1-4, quit to stop): ")
                sys.stdout.flush()
            line = stream.readline()
            if not line:
                break
            token = line.strip().lower()
            if not token:
                continue
            if token in ("quit", "q", "exit"):
                break
            if token not in ("1", "2", "3", "4"):
                print(f"ignoring {token!r}: ask 1, 2, 3, or 4")
                continue
            question = int(token)
            # Bob collapses in the context of the question
            if question in (1, 3):
                position = 1 if rng.random() < q1 else 3
            else:
                position = 2 if rng.random() < q2 else 4
            answer, _ = playsim.reaction(position, question)
            payoff = paytab[question] if position == opposite[question] else 0.0
            tally += payoff
            rounds += 1
            if not args.quiet:
                print(f"round {rounds}: asked {question} -> {answer}, payoff {payoff:g}")
    finally:
        if stream is not sys.stdin:
            stream.close()
    _, attainable = equilibrium.best_response_alice(spec, args.beta)
    summary = {
        "rounds": rounds,
        "tally": tally,
        "mean_payoff": tally / rounds if rounds else 0.0,
        "best_response_value": attainable,
        "seed": int(seed),
    }
    _emit(summary, args.output)
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _add_spec_flags(parser, with_game=True):
    if with_game:
        parser.add_argument("--game", choices=("spin-half", "spin-one"))
    parser.add_argument("--config", help="JSON game config; flags override its values")
    parser.add_argument("--theta-a", type=float, default=None)
    parser.add_argument("--theta-b", type=float, default=None)
    parser.add_argument("--payoffs", type=float, nargs=4, metavar=("A", "B", "C", "D"))
    parser.add_argument("--u", type=float, nargs=5, metavar=tuple(f"U{i}" for i in range(5)))
    parser.add_argument("--v", type=float, nargs=5, metavar=tuple(f"V{i}" for i in range(5)))
    parser.add_argument("--output", help="write the JSON report here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qlgames",
        description="Quantum-like guessing games: lattices, equilibria, simulation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lattice", help="certify lattice laws and the projector representation")
    p.add_argument("--game", choices=("spin-half", "spin-one"), required=True)
    p.add_argument("--theta", type=float, action="append", help="representation check angle(s)")
    p.add_argument("--output")
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("classical", help="solve the classical mixed-strategy baseline")
    _add_spec_flags(p)
    p.set_defaults(func=cmd_classical)

    p = sub.add_parser("equilibrium", help="search Born-strategy equilibria")
    _add_spec_flags(p)
    p.add_argument("--coarse-step", type=float, default=None,
                   help="grid step in degrees (default 0.5 spin-half, 3 spin-one)")
    p.add_argument("--refine-tol", type=float, default=None)
    p.add_argument("--residual-step", type=float, default=None)
    p.add_argument("--max-residual", type=float, default=None)
    p.add_argument("--sweep", help="write an (alpha, beta, payoff) CSV of the coarse grid")
    p.set_defaults(func=cmd_equilibrium)

    p = sub.add_parser("simulate", help="run the Monte Carlo simulator")
    _add_spec_flags(p)
    p.add_argument("--mode", choices=("quantum", "mechanical"), default="quantum")
    p.add_argument("--rounds", type=int, required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--alpha", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--phi", type=float, nargs=2, metavar=("A1", "A2"))
    p.add_argument("--psi", type=float, nargs=2, metavar=("B1", "B2"))
    p.add_argument("--base", type=float, nargs=4, metavar=("W1", "W2", "W3", "W4"))
    p.add_argument("--policy", type=float, nargs=4, metavar=("P1", "P2", "P3", "P4"))
    p.add_argument("--risk-policy", choices=("always-risk", "never-risk"), default="never-risk")
    p.add_argument("--question-weights", type=float, nargs=10)
    p.add_argument("--check-freq", type=float, default=None,
                   help="fail (exit 1) when the Born frequency deviation exceeds this")
    p.add_argument("--trace", help="write a per-round trace CSV here")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("interference", help="two-context probability decomposition")
    p.add_argument("--beta", type=float)
    p.add_argument("--theta", type=float)
    p.add_argument("--sweep", help="write the decomposition grid CSV here")
    p.add_argument("--beta-step", type=float, default=1.0)
    p.add_argument("--theta-step", type=float, default=1.0)
    p.add_argument("--output")
    p.set_defaults(func=cmd_interference)

    p = sub.add_parser("play", help="play the four-corner game against a Born-sampled Bob")
    _add_spec_flags(p)
    p.add_argument("--beta", type=float, required=True, help="Bob's strategy angle")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--script", help="file of questions (one per line) for scripted play")
    p.add_argument("--quiet", action="store_true", help="suppress per-round lines")
    p.set_defaults(func=cmd_play)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (GameSpecError, hilbert.HilbertError, lattice.LatticeError,
            contextual.ContextError, playsim.SimError, FileNotFoundError,
            json.JSONDecodeError) as exc:
        return _usage_error(str(exc))


if __name__ == "__main__":
    sys.exit(main())
