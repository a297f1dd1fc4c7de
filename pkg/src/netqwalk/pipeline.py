"""Experiment drivers: prioritization sweeps and CCI walk analysis.

The prioritization driver loads an interactome, restricts it to the
greatest connected component, seeds a walker from significance-filtered
genes, sweeps the walk parameter (time, steps, or restart iterations),
and scores the resulting rankings against a held-out target set with
precision@K and average precision@K.  The cell-cell-interaction driver
runs discrete walkers over a symmetrized multipartite graph, compares
per-node transition profiles through their pairwise distances, and
extracts the communication subgraph supported by the walk.  Both
drivers emit deterministic CSV/JSON reports.
"""

from __future__ import annotations

import csv
import hashlib
import json
import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import classical, ctqrw, dtqrw
from .expm import as_hermitian, real_expm_action
from .graphs import (
    LabeledGraph,
    PartitionedCciGraph,
    build_cci_graph,
    graph_stats,
    greatest_component,
    laplacian,
    parse_label_pairs,
    parse_node_layers,
    read_edge_list,
    symmetrized_view,
)
from .metrics import (
    average_precision_at_k,
    pairwise_distance_matrix,
    precision_at_k,
    walk_support_subgraph,
)

logger = logging.getLogger(__name__)

WALKERS = ("rwr", "ctrw", "dtrw", "ctqrw", "dtqrw")
CONTINUOUS_WALKERS = ("ctrw", "ctqrw")
DISCRETE_WALKERS = ("dtrw", "dtqrw")
RWR_MODES = ("steady", "iterations")

SWEEP_CSV = "sweep.csv"
SUMMARY_JSON = "summary.json"
MANIFEST_JSON = "manifest.json"
CCI_MANIFEST_JSON = "cci_manifest.json"

#: How many leading labels of each ranking land in the sweep CSV.
_DIGEST_TOP = 10


# ---------------------------------------------------------------------------
# score tables and seed/target selection
# ---------------------------------------------------------------------------

def parse_score_table(text: str) -> dict[str, float]:
    """Parse a two-column ``label<TAB>p-value`` table.

    Comment lines start with ``#``; blank lines are skipped.  Duplicate
    labels and unparseable or negative values are rejected with the
    offending line number.
    """
    table: dict[str, float] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if len(fields) != 2:
            raise ValueError(
                f"line {lineno}: expected 'label value', got {len(fields)} fields"
            )
        label, value = fields
        if label in table:
            raise ValueError(f"line {lineno}: duplicate label {label!r}")
        try:
            p = float(value)
        except ValueError:
            raise ValueError(
                f"line {lineno}: cannot parse value {value!r}"
            ) from None
        if not np.isfinite(p) or p < 0:
            raise ValueError(f"line {lineno}: value must be finite and >= 0")
        table[label] = p
    if not table:
        raise ValueError("score table is empty")
    return table


def read_score_table(path) -> dict[str, float]:
    """Read a ``label<TAB>p-value`` table from ``path``."""
    return parse_score_table(Path(path).read_text())


@dataclass(frozen=True)
class SeedTargetSets:
    """Significance-filtered seed and target gene sets.

    Genes passing both filters are kept as seeds and removed from the
    targets, so the two sets are disjoint.
    """

    seeds: tuple[str, ...]
    targets: tuple[str, ...]
    seed_thresh: float
    target_thresh: float
    intersection_removed: int


def build_seed_target_sets(
    scores: dict[str, float],
    seed_thresh: float,
    target_table: dict[str, float],
    target_thresh: float,
) -> SeedTargetSets:
    """Select seeds and targets by strict p-value thresholds.

    A gene is a seed when its score satisfies ``p < seed_thresh`` and a
    target when ``p < target_thresh`` in the target table; genes in both
    filtered sets stay seeds only.
    """
    if not scores or not target_table:
        raise ValueError("score tables must be nonempty")
    if seed_thresh <= 0 or target_thresh <= 0:
        raise ValueError("thresholds must be positive")
    seeds = {label for label, p in scores.items() if p < seed_thresh}
    raw_targets = {label for label, p in target_table.items() if p < target_thresh}
    if not seeds:
        raise ValueError(
            f"no seeds pass the threshold p < {seed_thresh:g}"
        )
    overlap = seeds & raw_targets
    targets = raw_targets - overlap
    logger.info(
        "selected %d seeds (p < %g) and %d targets (p < %g, %d overlapping removed)",
        len(seeds), seed_thresh, len(targets), target_thresh, len(overlap),
    )
    return SeedTargetSets(
        seeds=tuple(sorted(seeds)),
        targets=tuple(sorted(targets)),
        seed_thresh=float(seed_thresh),
        target_thresh=float(target_thresh),
        intersection_removed=len(overlap),
    )


# ---------------------------------------------------------------------------
# prioritization sweep
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExperimentConfig:
    """One prioritization run: data paths, walker, grid, and evaluation.

    Continuous walkers sweep ``t = 0, t_step, ..., t_max``; discrete
    walkers sweep ``1..steps_max`` steps.  Restart walks default to the
    single steady state of the restart equation; ``rwr_mode =
    'iterations'`` instead sweeps truncated iteration counts, since a
    time axis for restart walks can be read either way.
    """

    graph_path: str
    scores_path: str
    targets_path: str
    walker: str = "ctqrw"
    hamiltonian: str = "adjacency"
    alpha: float = 0.85
    t_max: float = 10.0
    t_step: float = 0.1
    steps_max: int = 20
    collapse_times: tuple[float, ...] = ()
    k_list: tuple[int, ...] = (20, 50, 100)
    seed_thresh: float = 0.01
    target_thresh: float = 5e-8
    rng_seed: int = 0
    rwr_mode: str = "steady"

    def __post_init__(self) -> None:
        if self.walker not in WALKERS:
            raise ValueError(f"unknown walker {self.walker!r}; expected {WALKERS}")
        if self.hamiltonian not in ctqrw.HAMILTONIAN_KINDS:
            raise ValueError(f"unknown hamiltonian {self.hamiltonian!r}")
        if not 0.0 <= self.alpha < 1.0:
            raise ValueError(f"alpha must lie in [0, 1), got {self.alpha}")
        if self.t_step <= 0 or self.t_max < 0:
            raise ValueError("time grid requires t_step > 0 and t_max >= 0")
        if self.steps_max < 1:
            raise ValueError("steps_max must be >= 1")
        if not self.k_list or any(k < 1 for k in self.k_list):
            raise ValueError("k_list must be nonempty with every K >= 1")
        if self.rwr_mode not in RWR_MODES:
            raise ValueError(f"rwr_mode must be one of {RWR_MODES}")
        if self.collapse_times and self.walker != "ctqrw":
            raise ValueError("a collapse schedule requires walker='ctqrw'")
        # normalize sequence fields and validate the collapse schedule
        object.__setattr__(self, "k_list", tuple(int(k) for k in self.k_list))
        sched = ctqrw.CollapseSchedule(tuple(self.collapse_times))
        object.__setattr__(self, "collapse_times", sched.times)

    def grid_points(self) -> tuple[str, tuple]:
        """(kind, values) of the sweep grid for the configured walker."""
        if self.walker in CONTINUOUS_WALKERS:
            count = int(np.floor(self.t_max / self.t_step + 1e-9))
            return "time", tuple(round(i * self.t_step, 10) for i in range(count + 1))
        if self.walker in DISCRETE_WALKERS:
            return "steps", tuple(range(1, self.steps_max + 1))
        if self.rwr_mode == "steady":
            return "steady", (0.0,)
        return "iterations", tuple(range(1, self.steps_max + 1))

    def echo(self) -> dict:
        return {
            "graph_path": str(self.graph_path),
            "scores_path": str(self.scores_path),
            "targets_path": str(self.targets_path),
            "walker": self.walker,
            "hamiltonian": self.hamiltonian,
            "alpha": float(self.alpha),
            "t_max": float(self.t_max),
            "t_step": float(self.t_step),
            "steps_max": int(self.steps_max),
            "collapse_times": [float(t) for t in self.collapse_times],
            "k_list": [int(k) for k in self.k_list],
            "seed_thresh": float(self.seed_thresh),
            "target_thresh": float(self.target_thresh),
            "rng_seed": int(self.rng_seed),
            "rwr_mode": self.rwr_mode,
        }


@dataclass(frozen=True)
class GridRecord:
    """Evaluation of one grid point: AP@K and P@K per configured K."""

    grid_value: float
    ap: tuple[float, ...]
    prec: tuple[float, ...]
    ranking_sha256: str
    top_labels: tuple[str, ...]


@dataclass(frozen=True)
class SweepResult:
    """Full sweep output plus the metadata needed to reproduce it."""

    config: ExperimentConfig
    grid_kind: str
    records: tuple[GridRecord, ...]
    graph_summary: dict
    module_summary: dict

    def summary(self) -> dict:
        """Per-K maxima and means over the grid."""
        per_k = {}
        for i, k in enumerate(self.config.k_list):
            series = np.array([r.ap[i] for r in self.records])
            best = int(np.argmax(series))
            per_k[str(k)] = {
                "max_ap": float(series[best]),
                "argmax_grid_value": float(self.records[best].grid_value),
                "mean_ap": float(series.mean()),
            }
        return {
            "walker": self.config.walker,
            "grid_kind": self.grid_kind,
            "n_grid_points": len(self.records),
            "per_k": per_k,
        }


def _uniform_over(labels_in_gc: list[str], gc: LabeledGraph) -> np.ndarray:
    p0 = np.zeros(gc.n)
    for label in labels_in_gc:
        p0[gc.index(label)] = 1.0
    return p0 / p0.sum()


def _sweep_distributions(config: ExperimentConfig, gc: LabeledGraph, p0, grid):
    """Yield one node-probability vector per grid value."""
    walker = config.walker
    if walker == "rwr":
        if config.rwr_mode == "steady":
            yield classical.rwr_steady_state(gc, p0, config.alpha)
        else:
            for n in grid:
                yield classical.rwr_iterate(gc, p0, config.alpha, n)
    elif walker == "ctrw":
        # wrap the Laplacian once so its eigendecomposition is reused
        lap = as_hermitian(laplacian(gc))
        for t in grid:
            yield real_expm_action(lap, p0, t)
    elif walker == "dtrw":
        for n in grid:
            yield classical.dtrw_evolve(gc, p0, n)
    elif walker == "ctqrw":
        spec = _hamiltonian_spec(config, gc)
        h = ctqrw.build_hamiltonian(gc, spec)
        psi0 = ctqrw.initial_state_from_scores(p0)
        for t in grid:
            times = tuple(tc for tc in config.collapse_times if tc < t)
            psi = ctqrw.evolve_with_collapses(h, psi0, t, times)
            yield ctqrw.measure(psi)
    else:  # dtqrw
        arcs = dtqrw.arc_basis(gc)
        psi0 = dtqrw.arc_state_from_scores(arcs, p0)
        for n in grid:
            psi = dtqrw.evolve(arcs, psi0, n)
            yield dtqrw.node_probabilities(arcs, psi)


def _hamiltonian_spec(config: ExperimentConfig, gc: LabeledGraph) -> ctqrw.HamiltonianSpec:
    if config.hamiltonian == "chiral":
        return ctqrw.random_chiral_phases(gc, config.rng_seed)
    return ctqrw.HamiltonianSpec(config.hamiltonian)


def run_prioritization(config: ExperimentConfig) -> SweepResult:
    """Execute one prioritization sweep end to end.

    The graph is restricted to its greatest component before any walk;
    seeds outside the component are dropped with a warning, and the
    ranking never contains a seed.
    """
    g = read_edge_list(config.graph_path)
    stats = graph_stats(g)
    gc = greatest_component(g)
    st = build_seed_target_sets(
        read_score_table(config.scores_path),
        config.seed_thresh,
        read_score_table(config.targets_path),
        config.target_thresh,
    )
    gc_labels = set(gc.labels)
    graph_labels = set(g.labels)
    seeds_in_gc = [s for s in st.seeds if s in gc_labels]
    dropped = len(st.seeds) - len(seeds_in_gc)
    if dropped:
        logger.warning(
            "%d of %d seeds fall outside the greatest component and are dropped",
            dropped, len(st.seeds),
        )
    if not seeds_in_gc:
        raise ValueError("no seed genes fall inside the greatest component")
    targets_in_gc = [t for t in st.targets if t in gc_labels]
    if not targets_in_gc:
        raise ValueError("no target genes fall inside the greatest component")

    module = set(st.seeds) | set(st.targets)
    module_in_graph = module & graph_labels
    module_in_gc = module & gc_labels
    module_summary = {
        "seeds_total": len(st.seeds),
        "targets_total": len(st.targets),
        "intersection_removed": st.intersection_removed,
        "seeds_in_graph": sum(1 for s in st.seeds if s in graph_labels),
        "seeds_in_gc": len(seeds_in_gc),
        "targets_in_graph": sum(1 for t in st.targets if t in graph_labels),
        "targets_in_gc": len(targets_in_gc),
        "gc_module_fraction": (
            len(module_in_gc) / len(module_in_graph) if module_in_graph else 0.0
        ),
    }

    p0 = _uniform_over(seeds_in_gc, gc)
    relevance = set(targets_in_gc)
    grid_kind, grid = config.grid_points()
    records = []
    for grid_value, p in zip(grid, _sweep_distributions(config, gc, p0, grid)):
        ranking = ctqrw.rank_by_probability(p, labels=gc.labels, exclude=seeds_in_gc)
        digest = hashlib.sha256("\n".join(ranking.items).encode()).hexdigest()
        records.append(
            GridRecord(
                grid_value=float(grid_value),
                ap=tuple(
                    average_precision_at_k(ranking, relevance, k)
                    for k in config.k_list
                ),
                prec=tuple(
                    precision_at_k(ranking, relevance, k) for k in config.k_list
                ),
                ranking_sha256=digest,
                top_labels=ranking.items[:_DIGEST_TOP],
            )
        )
    return SweepResult(
        config=config,
        grid_kind=grid_kind,
        records=tuple(records),
        graph_summary={"graph": stats, "gc": graph_stats(gc)},
        module_summary=module_summary,
    )


# ---------------------------------------------------------------------------
# report emission
# ---------------------------------------------------------------------------

def _fmt(value: float) -> str:
    return f"{float(value):.17g}"


def _write_json(path: Path, obj) -> None:
    path.write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def emit_reports(result: SweepResult, out_dir) -> list[Path]:
    """Write ``sweep.csv``, ``summary.json`` and ``manifest.json``.

    Outputs are deterministic: the same result writes byte-identical
    files.
    """
    if not result.records:
        raise ValueError("refusing to emit reports for an empty grid")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    k_list = result.config.k_list

    sweep_path = out / SWEEP_CSV
    with sweep_path.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(
            ["walker", "grid_kind", "grid_value"]
            + [f"ap_at_{k}" for k in k_list]
            + [f"p_at_{k}" for k in k_list]
            + ["ranking_sha256", "top_nodes"]
        )
        for rec in result.records:
            writer.writerow(
                [result.config.walker, result.grid_kind, _fmt(rec.grid_value)]
                + [_fmt(v) for v in rec.ap]
                + [_fmt(v) for v in rec.prec]
                + [rec.ranking_sha256, "|".join(rec.top_labels)]
            )

    summary_path = out / SUMMARY_JSON
    _write_json(summary_path, result.summary())

    manifest_path = out / MANIFEST_JSON
    _write_json(
        manifest_path,
        {
            "config": result.config.echo(),
            "graph": result.graph_summary,
            "module": result.module_summary,
            "outputs": [SWEEP_CSV, SUMMARY_JSON, MANIFEST_JSON],
        },
    )
    return [sweep_path, summary_path, manifest_path]


# ---------------------------------------------------------------------------
# CCI analysis
# ---------------------------------------------------------------------------

CCI_WALKERS = ("dtrw", "dtqrw")


@dataclass(frozen=True)
class CciConfig:
    """One CCI run: data paths, step count, targets and threshold."""

    nodes_path: str
    edges_path: str
    steps: int = 5
    targets: tuple[str, ...] = ()
    epsilon: float = 0.05
    rng_seed: int = 0

    def __post_init__(self) -> None:
        if self.steps < 1:
            raise ValueError("steps must be >= 1")
        if not self.targets:
            raise ValueError("at least one target node label is required")
        if not 0.0 < self.epsilon < 1.0:
            raise ValueError(f"epsilon must lie in (0, 1), got {self.epsilon}")
        object.__setattr__(self, "targets", tuple(self.targets))

    def echo(self) -> dict:
        return {
            "nodes_path": str(self.nodes_path),
            "edges_path": str(self.edges_path),
            "steps": int(self.steps),
            "targets": list(self.targets),
            "epsilon": float(self.epsilon),
            "rng_seed": int(self.rng_seed),
        }


@dataclass(frozen=True)
class CciWalkerOutput:
    """Profiles, distances and support subgraph for one walker."""

    profiles: np.ndarray
    distances: np.ndarray
    support: LabeledGraph
    zero_rows: tuple[str, ...]


@dataclass(frozen=True)
class CciResult:
    config: CciConfig
    cci: PartitionedCciGraph
    walkers: dict


def run_cci_analysis(config: CciConfig) -> CciResult:
    """Run both discrete walkers over a CCI graph and compare profiles.

    Each walker produces an ``n x n`` matrix of transition profiles
    after ``config.steps`` steps on the symmetrized view (row = start
    node), the pairwise distance matrix of those profiles, and the
    communication subgraph supported at ``config.epsilon``.  Nodes the
    coined walker cannot start from (isolated in the symmetrized view)
    get zero rows, which are flagged.
    """
    cci = build_cci_graph(
        parse_node_layers(Path(config.nodes_path).read_text()),
        parse_label_pairs(Path(config.edges_path).read_text()),
    )
    for t in config.targets:
        cci.graph.index(t)  # raises KeyError for unknown labels
    sym = symmetrized_view(cci)
    n = sym.n
    walkers = {}
    for walker in CCI_WALKERS:
        profiles = np.zeros((n, n))
        zero_rows = []
        for j in range(n):
            if walker == "dtrw":
                profiles[j] = classical.dtrw_transition_profile(sym, j, config.steps)
            else:
                try:
                    profiles[j] = dtqrw.transition_profile(sym, j, config.steps)
                except ValueError:
                    zero_rows.append(sym.labels[j])
        walkers[walker] = CciWalkerOutput(
            profiles=profiles,
            distances=pairwise_distance_matrix(profiles),
            support=walk_support_subgraph(
                cci, profiles, config.targets, config.epsilon
            ),
            zero_rows=tuple(zero_rows),
        )
    return CciResult(config=config, cci=cci, walkers=walkers)


def emit_cci_reports(result: CciResult, out_dir) -> list[Path]:
    """Write per-walker profile/distance CSVs, support TSVs, and a manifest."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    labels = result.cci.graph.labels
    written = []
    manifest_walkers = {}
    for walker, output in sorted(result.walkers.items()):
        prof_path = out / f"cci_{walker}_profiles.csv"
        dist_path = out / f"cci_{walker}_distances.csv"
        supp_path = out / f"cci_{walker}_support.tsv"
        for path, matrix in ((prof_path, output.profiles), (dist_path, output.distances)):
            with path.open("w", newline="") as fh:
                writer = csv.writer(fh, lineterminator="\n")
                writer.writerow(["node"] + list(labels))
                for j, label in enumerate(labels):
                    writer.writerow([label] + [_fmt(v) for v in matrix[j]])
        with supp_path.open("w") as fh:
            fh.write("# directed support edges: tail<TAB>head\n")
            for j, k in output.support.edges:
                fh.write(f"{labels[j]}\t{labels[k]}\n")
        written += [prof_path, dist_path, supp_path]
        manifest_walkers[walker] = {
            "profiles": prof_path.name,
            "distances": dist_path.name,
            "support": supp_path.name,
            "support_edges": int(output.support.edge_count),
            "zero_rows": list(output.zero_rows),
        }
    manifest_path = out / CCI_MANIFEST_JSON
    _write_json(
        manifest_path,
        {
            "config": result.config.echo(),
            "layers": {
                layer: int(count)
                for layer, count in result.cci.layer_counts().items()
            },
            "graph": {
                "nodes": int(result.cci.graph.n),
                "edges": int(result.cci.graph.edge_count),
            },
            "walkers": manifest_walkers,
        },
    )
    written.append(manifest_path)
    return written
