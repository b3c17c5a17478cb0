"""Command line interface: generate deployments, solve single instances,
run sweeps, and verify solutions against the brute-force oracles.

Exit codes: 0 success, 1 usage error, 2 generation failure, 3 verification
failure.
"""

import argparse
import json
import math
import sys

from . import oracles
from .geom import (
    GenParams,
    GenerationFailed,
    GraphError,
    generate_random_udg,
    read_graph_file,
    write_graph_file,
)
from .sweeps import SweepSpec, run_sweep, write_csv
from .tour import solution_cost
from .tree import build_gathering_tree, verify_solution

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_GENERATION = 2
EXIT_VERIFY = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _float_list(text):
    try:
        return [float(x) for x in text.split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad number list {text!r}")


def build_parser():
    p = _Parser(prog="muletree")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a connected random deployment")
    g.add_argument("--area", type=float, required=True, help="square area (units^2)")
    g.add_argument("--density", type=float, required=True, help="nodes per unit area")
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--max-rejections", type=int, default=200)
    g.add_argument("-o", "--out", required=True, help="output graph file")

    s = sub.add_parser("solve", help="build a gathering tree for a graph file")
    s.add_argument("graph")
    s.add_argument("--rm", type=float, default=0.2, help="mule travel radius")
    s.add_argument("--mule-policy", choices=["full-scan", "center-node"],
                   default="full-scan")
    s.add_argument("--cost", action="store_true", help="include tour costs")
    s.add_argument("--verify", action="store_true",
                   help="run feasibility/structural checks; exit 3 on failure")
    s.add_argument("--out", help="write the solution JSON here (default stdout)")

    for mode in ("sweep-density", "sweep-area"):
        w = sub.add_parser(mode, help=f"run the {mode.split('-')[1]} sweep suite")
        w.add_argument("--area", type=_float_list, default=None,
                       help="comma-separated areas (units^2)")
        w.add_argument("--density", type=_float_list, default=None,
                       help="comma-separated densities")
        w.add_argument("--seeds-per-cell", type=int, default=5)
        w.add_argument("--seed", type=int, default=0, help="base seed")
        w.add_argument("--rm", type=float, default=0.2)
        w.add_argument("--jobs", type=int, default=1)
        w.add_argument("--mule-policy", choices=["full-scan", "center-node"],
                       default="center-node")
        w.add_argument("--out", required=True, help="output CSV path")

    v = sub.add_parser("verify", help="solve and check against brute-force oracles")
    v.add_argument("graph")
    v.add_argument("--rm", type=float, default=0.2)
    v.add_argument("--out", help="write the certificate JSON here (default stdout)")
    return p


def _emit(payload, path):
    text = json.dumps(payload, indent=2, sort_keys=True)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def cmd_gen(args):
    try:
        g = generate_random_udg(GenParams(
            area_side=math.sqrt(args.area), density=args.density,
            seed=args.seed, max_rejections=args.max_rejections,
        ))
    except (GenerationFailed, GraphError) as exc:
        print(f"generation failed: {exc}", file=sys.stderr)
        return EXIT_GENERATION
    write_graph_file(g, args.out)
    print(f"wrote {g.n} nodes to {args.out}")
    return EXIT_OK


def cmd_solve(args):
    g = read_graph_file(args.graph)
    sol = build_gathering_tree(g, args.rm, mule_policy=args.mule_policy)
    payload = sol.to_json()
    if args.cost:
        total, breakdown = solution_cost(g, sol.tree, sol.mule)
        payload["cost"] = {
            "total": total,
            "tours": [
                {"node": t.node, "children": t.n_children,
                 "length": t.length, "exact": t.exact}
                for t in breakdown
            ],
        }
    status = EXIT_OK
    if args.verify:
        checks, report = verify_solution(g, sol)
        payload["checks"] = checks
        payload["min_dual_slack"] = report.min_slack
        if not all(checks.values()):
            status = EXIT_VERIFY
    _emit(payload, args.out)
    return status


def cmd_sweep(args, mode):
    default_densities = (
        SweepSpec().densities if mode == "sweep-density" else [2.5, 10.0, 40.0]
    )
    areas = SweepSpec().areas if args.area is None else args.area
    densities = default_densities if args.density is None else args.density
    spec = SweepSpec(
        areas=areas, densities=densities, seeds_per_cell=args.seeds_per_cell,
        base_seed=args.seed, r_m=args.rm, mule_policy=args.mule_policy,
        jobs=args.jobs,
    )
    failures = []
    records = run_sweep(spec, failures=failures)
    for area, density, seed, msg in failures:
        print(f"skipped cell area={area} density={density} seed={seed}: {msg}",
              file=sys.stderr)
    with open(args.out, "w") as fh:
        write_csv(records, fh)
    print(f"wrote {len(records)} runs to {args.out}")
    return EXIT_OK


def cmd_verify(args):
    g = read_graph_file(args.graph)
    sol = build_gathering_tree(g, args.rm)
    checks, report = verify_solution(g, sol)
    payload = sol.to_json()
    payload["checks"] = checks
    payload["min_dual_slack"] = report.min_slack
    if g.n <= oracles.MAX_NODES_MWCDS:
        opt = oracles.brute_mwcds(g, sol.run.weights)
        payload["mwcds_opt"] = opt.weight
        checks["lb_below_opt"] = sol.lower_bound <= opt.weight + 1e-9
        checks["weight_within_20_opt"] = sol.weight_cds <= 20.0 * opt.weight + 1e-9
    if g.n <= oracles.MAX_NODES_MULE:
        ref = oracles.brute_mule(g)
        total, _ = solution_cost(g, sol.tree, sol.mule)
        payload["brute_mule_cost"] = ref.cost
        payload["pipeline_cost"] = total
        checks["cost_above_brute"] = total >= ref.cost - 1e-9
    _emit(payload, args.out)
    return EXIT_OK if all(checks.values()) else EXIT_VERIFY


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else EXIT_USAGE
    try:
        if args.command == "gen":
            return cmd_gen(args)
        if args.command == "solve":
            return cmd_solve(args)
        if args.command in ("sweep-density", "sweep-area"):
            return cmd_sweep(args, args.command)
        if args.command == "verify":
            return cmd_verify(args)
    except (GraphError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
