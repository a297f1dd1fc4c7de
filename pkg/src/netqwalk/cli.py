"""Command-line interface.

Three subcommands: ``prioritize`` sweeps a walker over an interactome
and scores the ranking against target genes, ``cci`` runs the discrete
walkers over a cell-cell-interaction graph, and ``graph-stats`` prints
connectivity statistics as JSON.  Every flag can also be supplied
through an environment variable named ``NETQWALK_<FLAG>`` (dashes
become underscores, e.g. ``NETQWALK_T_MAX``); explicit command-line
values win.  Exit codes: 0 success, 1 validation or input error,
2 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .expm import ConvergenceError
from .graphs import graph_stats, read_edge_list
from .pipeline import (
    CciConfig,
    ExperimentConfig,
    RWR_MODES,
    WALKERS,
    emit_cci_reports,
    emit_reports,
    run_cci_analysis,
    run_prioritization,
)
from .ctqrw import HAMILTONIAN_KINDS

ENV_PREFIX = "NETQWALK_"


class _UsageError(Exception):
    """Raised instead of argparse's SystemExit so usage maps to code 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # noqa: D102 - argparse hook
        raise _UsageError(f"{self.prog}: {message}")


def _add(parser, flag: str, **kwargs) -> None:
    """``add_argument`` honoring the ``NETQWALK_`` environment override."""
    env_name = ENV_PREFIX + flag.lstrip("-").replace("-", "_").upper()
    env_value = os.environ.get(env_name)
    if env_value is not None:
        # argparse runs string defaults through `type`, so the raw
        # environment string slots in as an overridable default.
        kwargs["default"] = env_value
        kwargs["required"] = False
    kwargs.setdefault("help", "")
    kwargs["help"] += f" [env: {env_name}]"
    parser.add_argument(flag, **kwargs)


def _comma_ints(text: str) -> tuple[int, ...]:
    return tuple(int(part) for part in text.split(",") if part.strip())


def _comma_floats(text: str) -> tuple[float, ...]:
    return tuple(float(part) for part in text.split(",") if part.strip())


def _comma_labels(text: str) -> tuple[str, ...]:
    return tuple(part.strip() for part in text.split(",") if part.strip())


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="netqwalk",
        description="Classical and quantum random walks on biomolecular networks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    pri = sub.add_parser(
        "prioritize",
        help="sweep a walker over an interactome and rank candidate genes",
    )
    _add(pri, "--graph", required=True, help="undirected edge list (TSV)")
    _add(pri, "--scores", required=True, help="seed p-value table (TSV)")
    _add(pri, "--targets", required=True, help="target p-value table (TSV)")
    _add(pri, "--walker", default="ctqrw", choices=WALKERS, help="walk model")
    _add(
        pri, "--hamiltonian", default="adjacency", choices=HAMILTONIAN_KINDS,
        help="generator for the continuous quantum walk",
    )
    _add(pri, "--alpha", type=float, default=0.85, help="restart probability weight")
    _add(pri, "--t-max", type=float, default=10.0, help="largest evolution time")
    _add(pri, "--t-step", type=float, default=0.1, help="time grid spacing")
    _add(
        pri, "--steps-max", type=int, default=20,
        help="largest step count for discrete walkers",
    )
    _add(
        pri, "--collapse", type=_comma_floats, default="",
        help="comma-separated collapse times (ctqrw only)",
    )
    _add(pri, "--k", type=_comma_ints, default="20,50,100", help="K values for AP@K")
    _add(pri, "--seed-thresh", type=float, default=0.01, help="seed p-value cutoff")
    _add(
        pri, "--target-thresh", type=float, default=5e-8,
        help="target p-value cutoff",
    )
    _add(pri, "--rng-seed", type=int, default=0, help="seed for random phases")
    _add(
        pri, "--rwr-mode", default="steady", choices=RWR_MODES,
        help="restart walk sweep: steady state or truncated iterations",
    )
    _add(pri, "--out", required=True, help="output directory")

    cci = sub.add_parser(
        "cci",
        help="walk a cell-cell-interaction graph and extract supported paths",
    )
    _add(cci, "--nodes", required=True, help="node-layer table (TSV)")
    _add(cci, "--edges", required=True, help="directed edge list (TSV)")
    _add(cci, "--steps", type=int, default=5, help="number of walk steps")
    _add(
        cci, "--targets", required=True, type=_comma_labels,
        help="comma-separated target node labels",
    )
    _add(
        cci, "--epsilon", type=float, default=0.05,
        help="per-hop probability threshold for the support subgraph",
    )
    _add(cci, "--rng-seed", type=int, default=0, help="recorded in the manifest")
    _add(cci, "--out", required=True, help="output directory")

    stats = sub.add_parser("graph-stats", help="print connectivity statistics as JSON")
    _add(stats, "--graph", required=True, help="undirected edge list (TSV)")
    return parser


def _run_prioritize(args) -> int:
    config = ExperimentConfig(
        graph_path=args.graph,
        scores_path=args.scores,
        targets_path=args.targets,
        walker=args.walker,
        hamiltonian=args.hamiltonian,
        alpha=args.alpha,
        t_max=args.t_max,
        t_step=args.t_step,
        steps_max=args.steps_max,
        collapse_times=args.collapse,
        k_list=args.k,
        seed_thresh=args.seed_thresh,
        target_thresh=args.target_thresh,
        rng_seed=args.rng_seed,
        rwr_mode=args.rwr_mode,
    )
    result = run_prioritization(config)
    emit_reports(result, args.out)
    summary = result.summary()
    for k, entry in summary["per_k"].items():
        print(
            f"AP@{k}: max {entry['max_ap']:.4f} at "
            f"{summary['grid_kind']}={entry['argmax_grid_value']:g}, "
            f"mean {entry['mean_ap']:.4f}"
        )
    print(f"wrote sweep.csv, summary.json, manifest.json to {args.out}")
    return 0


def _run_cci(args) -> int:
    config = CciConfig(
        nodes_path=args.nodes,
        edges_path=args.edges,
        steps=args.steps,
        targets=args.targets,
        epsilon=args.epsilon,
        rng_seed=args.rng_seed,
    )
    result = run_cci_analysis(config)
    files = emit_cci_reports(result, args.out)
    for walker in sorted(result.walkers):
        output = result.walkers[walker]
        print(
            f"{walker}: support subgraph has {output.support.edge_count} edges"
            + (f", zero rows: {', '.join(output.zero_rows)}" if output.zero_rows else "")
        )
    print(f"wrote {len(files)} files to {args.out}")
    return 0


def _run_graph_stats(args) -> int:
    stats = graph_stats(read_edge_list(args.graph))
    print(json.dumps(stats, indent=2, sort_keys=True))
    return 0


_COMMANDS = {
    "prioritize": _run_prioritize,
    "cci": _run_cci,
    "graph-stats": _run_graph_stats,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    try:
        return _COMMANDS[args.command](args)
    except (ConvergenceError, FloatingPointError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2
    except KeyError as exc:
        message = exc.args[0] if exc.args else str(exc)
        print(f"error: {message}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
