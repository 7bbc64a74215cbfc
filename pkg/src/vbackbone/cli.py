"""Command-line entry point: ``gen``, ``solve``, ``oracle`` and ``run``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .algorithms import ALGORITHMS, MCDS2_RULES, run_algorithm
from .errors import (ConfigError, GenerationFailedError, GraphFormatError, InvalidNodeError,
                     PreconditionError, TooLargeError)
from .experiment import (ExperimentConfig, aggregate, emit_csv, emit_plot_data, emit_raw,
                         load_config, metadata, run_trials)
from .graph import Graph
from .topology import (DEFAULT_AREA_SIDE, DEFAULT_MAX_RETRIES, DEFAULT_RADIUS, PRNG_NAME,
                       GenSpec, generate, to_graph)
from .verify import DEFAULT_NODE_LIMIT, exact_min_cds

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_INVALID = 0, 1, 2, 3

log = logging.getLogger("vbackbone")


def _bool(x: bool) -> str:
    return "true" if x else "false"


def cmd_gen(args) -> int:
    spec = GenSpec(n=args.n, area_side=args.area, radius=args.radius, seed=args.seed,
                   require_connected=args.connected, max_retries=args.retries)
    topo = generate(spec)
    g = to_graph(topo)
    out = Path(args.out)
    topo_path, graph_path = out.with_name(out.name + ".topo"), out.with_name(out.name + ".graph")
    topo.save(topo_path)
    g.save(graph_path)
    print(f"topology: {topo_path}")
    print(f"graph: {graph_path}")
    print(f"nodes: {g.n} edges: {g.m} connected: {_bool(g.is_connected())} prng: {PRNG_NAME}")
    return EXIT_OK


def cmd_solve(args) -> int:
    g = Graph.load(args.graph)
    res = run_algorithm(args.algo, g, args.mcds2_rule)
    print(f"algorithm: {res.algorithm}")
    print("cds: " + " ".join(map(str, res.sorted_nodes())))
    print(f"size: {res.size}")
    print(f"valid: {_bool(res.is_valid_cds)}")
    print(f"repaired: {_bool(res.repaired)}")
    return EXIT_OK if res.is_valid_cds else EXIT_INVALID


def cmd_oracle(args) -> int:
    g = Graph.load(args.graph)
    opt = exact_min_cds(g, args.limit)
    print(f"min_size: {opt.min_size}")
    print("witness: " + " ".join(map(str, sorted(opt.witness))))
    print(f"subsets_examined: {opt.subsets_examined}")
    return EXIT_OK


def cmd_run(args) -> int:
    overrides = dict(
        n_values=args.n_values, trials=args.trials, area_side=args.area, radius=args.radius,
        base_seed=args.seed, algorithms=args.algorithms, mcds2_rule=args.mcds2_rule,
        include_oracle=args.oracle, oracle_limit=args.oracle_limit,
        max_retries=args.retries, timing=args.timing,
    )
    if args.config:
        cfg = load_config(args.config, **overrides)
    else:
        cfg = ExperimentConfig().with_overrides(**overrides)
    rows = run_trials(cfg)
    records = aggregate(rows)
    emit_csv(records, args.out_csv if args.out_csv else sys.stdout)
    if args.out_plot:
        emit_plot_data(records, args.out_plot)
    if args.raw:
        emit_raw(rows, args.raw)
    if args.meta:
        Path(args.meta).write_text(json.dumps(metadata(cfg), indent=2, sort_keys=True) + "\n")
    return EXIT_OK


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(p) for p in text.replace(",", " ").split())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _name_list(text: str) -> tuple[str, ...]:
    return tuple(p for p in text.replace(",", " ").split() if p)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="vbackbone",
                                description="Connected dominating sets for unit-disk graphs.")
    p.add_argument("-v", "--verbose", action="count", default=0)
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a random geometric topology")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--area", type=float, default=DEFAULT_AREA_SIDE)
    g.add_argument("--radius", type=float, default=DEFAULT_RADIUS)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", required=True, help="output prefix; writes PREFIX.topo and PREFIX.graph")
    g.add_argument("--connected", action=argparse.BooleanOptionalAction, default=True)
    g.add_argument("--retries", type=int, default=DEFAULT_MAX_RETRIES)
    g.set_defaults(func=cmd_gen)

    s = sub.add_parser("solve", help="run one algorithm on a graph file")
    s.add_argument("--graph", required=True)
    s.add_argument("--algo", choices=sorted(ALGORITHMS), required=True)
    s.add_argument("--mcds2-rule", choices=sorted(MCDS2_RULES), default="single")
    s.set_defaults(func=cmd_solve)

    o = sub.add_parser("oracle", help="exact minimum CDS by exhaustive search")
    o.add_argument("--graph", required=True)
    o.add_argument("--limit", type=int, default=DEFAULT_NODE_LIMIT)
    o.set_defaults(func=cmd_oracle)

    r = sub.add_parser("run", help="CDS size versus node count experiment")
    r.add_argument("--config", help="key=value config file; flags override it")
    r.add_argument("--out-csv")
    r.add_argument("--out-plot")
    r.add_argument("--raw", help="per-trial CSV log")
    r.add_argument("--meta", help="JSON file with the effective config and PRNG name")
    r.add_argument("--n-values", type=_int_list)
    r.add_argument("--trials", type=int)
    r.add_argument("--area", type=float)
    r.add_argument("--radius", type=float)
    r.add_argument("--seed", type=int)
    r.add_argument("--algorithms", type=_name_list)
    r.add_argument("--mcds2-rule")
    r.add_argument("--oracle", action=argparse.BooleanOptionalAction, default=None)
    r.add_argument("--oracle-limit", type=int)
    r.add_argument("--retries", type=int)
    r.add_argument("--timing", action=argparse.BooleanOptionalAction, default=None)
    r.set_defaults(func=cmd_run)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    logging.basicConfig(level=logging.WARNING - 10 * args.verbose,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (OSError, GraphFormatError) as exc:
        code, msg = EXIT_IO, str(exc)
    except (PreconditionError, TooLargeError, GenerationFailedError, InvalidNodeError) as exc:
        code, msg = EXIT_INVALID, str(exc)
    except (ConfigError, ValueError) as exc:
        code, msg = EXIT_USAGE, str(exc)
    print(f"error: {msg}", file=sys.stderr)
    return code

if __name__ == "__main__":
    sys.exit(main())
