"""Ranking evaluation and walk-profile analysis.

Precision@K and average precision@K score a ranked gene list against a
ground-truth relevance set.  Transition profiles (one distribution per
start node) are compared through their pairwise Euclidean distances, and
thresholded profiles carve communication subgraphs out of CCI networks.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist

from .graphs import LabeledGraph, PartitionedCciGraph


@dataclass(frozen=True)
class RankedList:
    """Ordered predictions, best first, with the score behind each rank."""

    items: tuple
    scores: np.ndarray

    def __post_init__(self) -> None:
        items = tuple(self.items)
        scores = np.asarray(self.scores, dtype=np.float64).reshape(-1)
        if len(items) != scores.shape[0]:
            raise ValueError("one score per ranked item is required")
        if len(set(items)) != len(items):
            raise ValueError("ranked items must be unique")
        if scores.size > 1 and np.any(np.diff(scores) > 0):
            raise ValueError("scores must be non-increasing")
        scores = scores.copy()
        scores.setflags(write=False)
        object.__setattr__(self, "items", items)
        object.__setattr__(self, "scores", scores)

    def __len__(self) -> int:
        return len(self.items)


def _ranked_items(ranked) -> list:
    return list(ranked.items) if isinstance(ranked, RankedList) else list(ranked)


def precision_at_k(ranked, relevant, k: int) -> float:
    """Fraction of the first ``k`` ranks that are relevant.

    The denominator stays ``k`` even when fewer than ``k`` items were
    ranked.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    items = _ranked_items(ranked)
    rel = set(relevant)
    hits = sum(1 for item in items[:k] if item in rel)
    return hits / k


def average_precision_at_k(ranked, relevant, k: int) -> float:
    """Average precision at ``k`` against a nonempty relevance set.

    The precision at each relevant rank ``N <= k`` is averaged and
    normalized by ``min(k, M)`` with ``M`` the relevance-set size, so a
    ranking whose first ``min(k, M)`` items are exactly the relevant
    items scores 1.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    rel = set(relevant)
    if not rel:
        raise ValueError("relevance set must be nonempty")
    items = _ranked_items(ranked)
    hits = 0
    total = 0.0
    for n, item in enumerate(items[:k], start=1):
        if item in rel:
            hits += 1
            total += hits / n
    return total / min(k, len(rel))


def pairwise_distance_matrix(profiles) -> np.ndarray:
    """Euclidean distance between every pair of profiles.

    ``profiles`` is a matrix with one distribution per row; all rows must
    share the same dimension.  The result is symmetric with a zero
    diagonal.
    """
    rows = [np.asarray(p, dtype=np.float64).reshape(-1) for p in profiles]
    if not rows:
        raise ValueError("at least one profile is required")
    dim = rows[0].shape[0]
    for i, row in enumerate(rows):
        if row.shape[0] != dim:
            raise ValueError(
                f"profile {i} has dimension {row.shape[0]}, expected {dim}"
            )
    mat = np.vstack(rows)
    d = cdist(mat, mat)
    d = 0.5 * (d + d.T)
    np.fill_diagonal(d, 0.0)
    return d


def walk_support_subgraph(
    cci: PartitionedCciGraph,
    profiles,
    targets,
    epsilon: float,
    sources=None,
) -> LabeledGraph:
    """Subgraph of three-hop communication paths supported by a walk.

    A directed edge survives when it lies on some ``sender -> ligand ->
    receptor -> receiver`` path ending in a target whose every hop
    ``u -> v`` carries transition probability ``profiles[u][v] >=
    epsilon``.  The result shares the node set of ``cci`` and its edge
    set shrinks monotonically as ``epsilon`` grows.

    Parameters
    ----------
    profiles : ndarray of shape (n, n)
        Row ``u`` is the walker's node distribution when started at ``u``.
    targets : iterable of node labels or indices
        Receiver-side endpoints of the paths of interest (must be nonempty).
    epsilon : float
        Per-hop probability threshold in (0, 1).
    sources : iterable of node labels or indices, optional
        Restrict paths to these start nodes (default: every sender).
    """
    g = cci.graph
    if not 0.0 < epsilon < 1.0:
        raise ValueError(f"epsilon must lie in (0, 1), got {epsilon}")

    def to_index(x) -> int:
        return g.index(x) if isinstance(x, str) else int(x)

    target_set = {to_index(t) for t in targets}
    if not target_set:
        raise ValueError("at least one target node is required")
    prof = np.asarray(profiles, dtype=np.float64)
    if prof.shape != (g.n, g.n):
        raise ValueError(f"profiles must have shape ({g.n}, {g.n}), got {prof.shape}")
    if sources is None:
        source_set = set(cci.nodes_in_layer("sender"))
    else:
        source_set = {to_index(s) for s in sources}
    succ: dict[int, list[int]] = {}
    for j, k in g.edges:
        succ.setdefault(int(j), []).append(int(k))
    kept: set[tuple[int, int]] = set()
    for s in sorted(source_set):
        for l in succ.get(s, ()):  # noqa: E741 - ligand index
            if prof[s, l] < epsilon:
                continue
            for r in succ.get(l, ()):
                if prof[l, r] < epsilon:
                    continue
                for ct in succ.get(r, ()):
                    if ct in target_set and prof[r, ct] >= epsilon:
                        kept.update(((s, l), (l, r), (r, ct)))
    edges = np.array(sorted(kept), dtype=np.int64).reshape(-1, 2)
    return LabeledGraph(g.labels, edges, directed=True)
