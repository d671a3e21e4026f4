"""Command-line entry point: ``searchlab <command> [options]``.

Exit codes: 0 success, 1 usage, 2 numerical failure, 3 I/O failure.
"""

from __future__ import annotations

import argparse
import sys
from datetime import datetime, timezone

import numpy as np

from . import __version__
from .algorithms import (
    SearchInstance,
    fenner_state,
    fenner_success_time,
    fg_state,
    fg_success_time,
    rc_evolve,
)
from .equivalence import verify_identity
from .fullspace import (
    complete_graph_walk,
    evolve_full,
    fenner_star,
    rc_evolve_full,
    rc_full,
    reduce_to_subspace,
    uniform_vector,
)
from .reporting import (
    ALGORITHMS,
    Table,
    build_trajectory,
    compare_trajectories,
    continuous_times,
    gap_table,
    schedule_table,
    subsample,
    to_csv,
    to_json,
    trajectory_at_times,
    trajectory_table,
)
from .subspace import fidelity
from .synthesis import (
    norm_scaling_probe,
    reality_classifier,
    walk_follower_hamiltonian,
    walk_follower_lambda1,
    walk_follower_time,
)

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC, EXIT_IO = 0, 1, 2, 3
COMMANDS = ("trajectory", "gap", "schedule", "equivalence", "synth", "fullspace", "norms",
            "compare")
DEFAULT_NORM_SIZES = "100,1000,10000,100000"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _positive_int(text):
    n = int(text)
    if n < 2:
        raise argparse.ArgumentTypeError(f"must be >= 2, got {n}")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--N", type=_positive_int, default=64, help="search space size (>= 2)")
    common.add_argument("--eps", type=float, default=1.0, help="adiabatic accuracy parameter")
    common.add_argument("--gamma", type=float, default=None, help="walk jumping rate (default 1/N)")
    common.add_argument("--marked", type=int, default=1, help="1-based marked index")
    common.add_argument("--samples", type=_positive_int, default=101)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--output", "-o", default="-", help="output path, '-' for stdout")
    common.add_argument("--reproducible", action="store_true",
                        help="omit the timestamp so reruns are byte-identical")

    parser = _Parser(prog="searchlab", description="Unstructured-search evolution lab.")
    parser.add_argument("--version", action="version", version=f"searchlab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    defaults = {"trajectory": "fg", "gap": "rc", "schedule": "rc", "equivalence": "rc-ground",
                "synth": "walk-follower", "fullspace": "fg", "norms": "walk-follower",
                "compare": "rc-ground"}
    helps = {
        "trajectory": "amplitudes and Bloch coordinates along an evolution",
        "gap": "energy gap over s",
        "schedule": "interpolation schedule s(t)",
        "equivalence": "walk vs adiabatic ground-state coefficients",
        "synth": "walk-following Hamiltonian entries over s",
        "fullspace": "N-dimensional simulation projected on (|w>, |r>)",
        "norms": "operator norm scaling with N",
        "compare": "pointwise deviation between two trajectories",
    }
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common], help=helps[name])
        p.add_argument("--algorithm", choices=ALGORITHMS, default=defaults[name])
        if name == "norms":
            p.add_argument("--s", type=float, default=0.5)
            p.add_argument("--sizes", default=DEFAULT_NORM_SIZES,
                           help="comma-separated N values")
            p.add_argument("--space", choices=("full", "subspace"), default="full")
        if name == "fullspace":
            p.add_argument("--steps", type=int, default=None)
        if name == "compare":
            p.add_argument("--against", choices=ALGORITHMS, default="fenner")
            p.add_argument("--match", choices=("fraction", "time"), default="time",
                           help="sample B at A's times, or at the same fraction of its runtime")
    return parser


def _instance(args) -> SearchInstance:
    return SearchInstance(args.N, w=args.marked, gamma=args.gamma, eps=args.eps)


def _cmd_trajectory(args, inst):
    return trajectory_table(build_trajectory(args.algorithm, inst, args.samples))


def _cmd_gap(args, inst):
    return gap_table(args.algorithm, inst, args.samples)


def _cmd_schedule(args, inst):
    return schedule_table(args.algorithm, inst, args.samples)


def _cmd_equivalence(args, inst):
    rep = verify_identity(inst, args.samples)
    summary = {"max_rel_deviation": rep.max_rel_deviation,
               "max_pole_fidelity_deficit": rep.max_pole_fidelity_deficit,
               "skipped": rep.skipped}
    return Table(["s", "t", "lhs", "rhs", "deviation"], list(rep.rows), summary=summary)


def _cmd_synth(args, inst):
    rows = []
    ss = np.linspace(0.0, 1.0, args.samples)
    n_complex = 0
    for s in ss:
        s = float(s)
        H = walk_follower_hamiltonian(s, inst)
        n_complex += reality_classifier(H).value == "complex"
        rows.append((s, walk_follower_time(s, inst), walk_follower_lambda1(s, inst),
                     H.h11.real, H.h12.real, H.h12.imag, H.h22.real))
    cols = ["s", "t", "lambda1", "h11", "re_h12", "im_h12", "h22"]
    return Table(cols, rows, summary={"complex_samples": n_complex})


def _cmd_fullspace(args, inst):
    if inst.N > 1 << 20:
        raise ValueError("fullspace is limited to N <= 2**20")
    if args.algorithm == "fg":
        op, T, exact = complete_graph_walk(inst), fg_success_time(inst), fg_state
    elif args.algorithm == "fenner":
        op, T, exact = fenner_star(inst), fenner_success_time(inst), fenner_state
    elif args.algorithm == "rc":
        op = rc_full(0.5, inst)
        _, traj = rc_evolve_full(inst, args.steps)
        ref = rc_evolve(inst, len(traj.t) - 1)
        deficit = max(1.0 - fidelity(traj.state(i), ref.state(i)) for i in range(len(traj.t)))
        _, leak = reduce_to_subspace(op, inst)
        table = trajectory_table(subsample(traj, args.samples))
        table.summary.update({"max_deficit_vs_2d": deficit, "leakage": leak})
        return table
    else:
        raise ValueError("fullspace supports fg, fenner and rc")
    steps = args.steps or max(1000, int(np.ceil(T / 0.01)))
    _, traj = evolve_full(op, uniform_vector(inst.N), 0.0, T, steps)
    deficit = max(1.0 - fidelity(traj.state(i), exact(float(t), inst))
                  for i, t in enumerate(traj.t))
    _, leak = reduce_to_subspace(op, inst)
    table = trajectory_table(subsample(traj, args.samples))
    table.summary.update({"max_deficit_vs_2d": deficit, "leakage": leak})
    return table


def _cmd_norms(args, inst):
    sizes = [int(x) for x in args.sizes.split(",") if x.strip()]
    family = {"rc": "rc", "fenner": "fenner", "fg": "fg",
              "walk-follower": "walk-follower"}.get(args.algorithm)
    if family is None:
        raise ValueError(f"no Hamiltonian family for {args.algorithm!r}")
    rep = norm_scaling_probe(family, args.s, sizes, eps=args.eps, space=args.space)
    rows = [(n, v) for n, v in zip(rep.sizes, rep.norms)]
    return Table(["N", "norm"], rows, summary={"slope": rep.slope})


def _cmd_compare(args, inst):
    a = build_trajectory(args.algorithm, inst, args.samples)
    if args.match == "time":
        b = trajectory_at_times(args.against, inst, continuous_times(args.algorithm, a, inst))
    else:
        b = build_trajectory(args.against, inst, len(a.t))
    table = compare_trajectories(a, b)
    table.summary["against"] = args.against
    table.summary["match"] = args.match
    return table


HANDLERS = {
    "trajectory": _cmd_trajectory,
    "gap": _cmd_gap,
    "schedule": _cmd_schedule,
    "equivalence": _cmd_equivalence,
    "synth": _cmd_synth,
    "fullspace": _cmd_fullspace,
    "norms": _cmd_norms,
    "compare": _cmd_compare,
}


def run(args) -> Table:
    """Execute a parsed command and return its table with metadata attached."""
    inst = _instance(args)
    table = HANDLERS[args.command](args, inst)
    meta = {"command": args.command, "N": inst.N, "eps": inst.eps, "gamma": inst.gamma,
            "algorithm": args.algorithm, "version": __version__}
    if not args.reproducible:
        meta["timestamp"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
    table.metadata = meta
    return table


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        table = run(args)
    except UsageError as exc:
        print(f"searchlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ArithmeticError as exc:
        print(f"searchlab: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"searchlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = to_json(table) if args.format == "json" else to_csv(table)
    try:
        if args.output == "-":
            sys.stdout.write(text)
        else:
            with open(args.output, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
    except OSError as exc:
        print(f"searchlab: cannot write {args.output}: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
