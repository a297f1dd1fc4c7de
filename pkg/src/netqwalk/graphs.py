"""Graph construction, ingestion and matrix views for biomolecular networks.

The central type is :class:`LabeledGraph`, an immutable node-indexed graph
with string labels.  Undirected edges are stored once with ``j < k``;
self-loops are dropped at construction and duplicate edges are merged by
summing their weights.  All walk modules operate on these graphs through
the sparse matrix views built here (adjacency, degree, Laplacian).

Cell-cell interaction (CCI) networks are handled by
:class:`PartitionedCciGraph`, a directed four-partite graph whose layers
are ``sender -> ligand -> receptor -> receiver`` and whose edges may only
connect adjacent layers in the forward direction.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp
from scipy.sparse import csgraph

logger = logging.getLogger(__name__)

CCI_LAYERS = ("sender", "ligand", "receptor", "receiver")


class GraphFormatError(ValueError):
    """Malformed edge-list or node-layer input."""


class CciValidationError(ValueError):
    """Edge set violates the four-partite layer constraints."""


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class LabeledGraph:
    """Node-indexed graph with unique string labels.

    Parameters
    ----------
    labels : tuple of str
        Node labels; index ``i`` refers to ``labels[i]``.
    edges : ndarray of shape (m, 2)
        Integer index pairs.  For undirected graphs each edge appears once
        with ``edges[e, 0] < edges[e, 1]``.
    directed : bool
        Whether edges are ordered pairs.
    weights : ndarray of shape (m,)
        Nonnegative edge weights (1.0 for unweighted input).
    """

    labels: tuple[str, ...]
    edges: np.ndarray
    directed: bool = False
    weights: np.ndarray | None = None
    _index: dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        labels = tuple(self.labels)
        if len(set(labels)) != len(labels):
            raise GraphFormatError("node labels must be unique")
        n = len(labels)
        edges = np.asarray(self.edges, dtype=np.int64).reshape(-1, 2)
        if edges.size and (edges.min() < 0 or edges.max() >= n):
            raise GraphFormatError("edge indices out of range")
        if edges.size and np.any(edges[:, 0] == edges[:, 1]):
            raise GraphFormatError("self-loops are not allowed after construction")
        if not self.directed and edges.size and np.any(edges[:, 0] > edges[:, 1]):
            raise GraphFormatError("undirected edges must be stored with j < k")
        weights = self.weights
        if weights is None:
            weights = np.ones(edges.shape[0])
        weights = np.asarray(weights, dtype=np.float64).reshape(-1)
        if weights.shape[0] != edges.shape[0]:
            raise GraphFormatError("weights length must match edge count")
        if weights.size and (not np.all(np.isfinite(weights)) or weights.min() < 0):
            raise GraphFormatError("edge weights must be finite and >= 0")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "edges", _frozen(edges))
        object.__setattr__(self, "weights", _frozen(weights))
        object.__setattr__(self, "_index", {lab: i for i, lab in enumerate(labels)})

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def edge_count(self) -> int:
        return self.edges.shape[0]

    def index(self, label: str) -> int:
        """Return the node index of ``label``."""
        try:
            return self._index[label]
        except KeyError:
            raise KeyError(f"unknown node label {label!r}") from None

    def __contains__(self, label: object) -> bool:
        return label in self._index


def _merge_edges(
    edges: np.ndarray, weights: np.ndarray, directed: bool
) -> tuple[np.ndarray, np.ndarray, int]:
    """Canonicalize, drop self-loops and merge duplicates (weights summed)."""
    edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    weights = np.asarray(weights, dtype=np.float64).reshape(-1)
    loops = edges[:, 0] == edges[:, 1]
    n_loops = int(loops.sum())
    if n_loops:
        edges, weights = edges[~loops], weights[~loops]
    if not directed and edges.size:
        edges = np.sort(edges, axis=1)
    if edges.size == 0:
        return edges.reshape(0, 2), weights[:0], n_loops
    uniq, inv = np.unique(edges, axis=0, return_inverse=True)
    merged = np.zeros(uniq.shape[0])
    np.add.at(merged, inv.reshape(-1), weights)
    return uniq, merged, n_loops


def graph_from_edges(
    edge_list,
    directed: bool = False,
    nodes=None,
) -> LabeledGraph:
    """Build a :class:`LabeledGraph` from ``(u, v)`` or ``(u, v, w)`` tuples.

    Labels are assigned indices by first appearance (``nodes`` first, then
    edge endpoints).  Duplicate edges are merged with weight summation and
    self-loops are dropped with a counted warning.
    """
    labels: list[str] = []
    index: dict[str, int] = {}

    def at(label) -> int:
        label = str(label)
        if label not in index:
            index[label] = len(labels)
            labels.append(label)
        return index[label]

    for lab in nodes or ():
        at(lab)
    pairs = []
    weights = []
    for item in edge_list:
        u, v = item[0], item[1]
        w = float(item[2]) if len(item) > 2 else 1.0
        pairs.append((at(u), at(v)))
        weights.append(w)
    edges = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
    edges, merged, n_loops = _merge_edges(edges, np.asarray(weights), directed)
    if n_loops:
        logger.warning("dropped %d self-loop(s) during graph construction", n_loops)
    return LabeledGraph(tuple(labels), edges, directed=directed, weights=merged)


def load_edge_list(text: str, directed: bool = False) -> LabeledGraph:
    """Parse a tab-separated edge list ``u<TAB>v[<TAB>w]``.

    Lines starting with ``#`` and blank lines are skipped.  Labels are
    whitespace-trimmed and case-sensitive; indices are assigned by first
    appearance.  Duplicate edges merge (weights summed, default weight 1)
    and self-loops are dropped with a counted warning.

    Raises
    ------
    GraphFormatError
        On a malformed row (with its line number) or empty input.
    """
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = [f.strip() for f in line.split("\t")]
        if len(fields) not in (2, 3) or not fields[0] or not fields[1]:
            raise GraphFormatError(
                f"line {lineno}: expected 'u<TAB>v[<TAB>w]', got {raw!r}"
            )
        w = 1.0
        if len(fields) == 3:
            try:
                w = float(fields[2])
            except ValueError:
                raise GraphFormatError(
                    f"line {lineno}: weight {fields[2]!r} is not a number"
                ) from None
            if not np.isfinite(w) or w < 0:
                raise GraphFormatError(
                    f"line {lineno}: weight must be finite and >= 0, got {w}"
                )
        rows.append((fields[0], fields[1], w))
    if not rows:
        raise GraphFormatError("empty edge list: no data rows found")
    return graph_from_edges(rows, directed=directed)


def read_edge_list(path, directed: bool = False) -> LabeledGraph:
    """Read an edge-list TSV file (UTF-8)."""
    with open(path, encoding="utf-8") as fh:
        return load_edge_list(fh.read(), directed=directed)


# ---------------------------------------------------------------------------
# Matrix views
# ---------------------------------------------------------------------------

def adjacency_matrix(g: LabeledGraph) -> sp.csr_matrix:
    """Sparse adjacency matrix (symmetric with zero diagonal when undirected).

    Entries are the edge weights, i.e. 0/1 for unweighted graphs.
    """
    rows = g.edges[:, 0]
    cols = g.edges[:, 1]
    vals = g.weights
    if not g.directed:
        rows, cols = np.concatenate([rows, cols]), np.concatenate([cols, rows])
        vals = np.concatenate([vals, vals])
    return sp.csr_matrix((vals, (rows, cols)), shape=(g.n, g.n))


def degree_vector(g: LabeledGraph) -> np.ndarray:
    """Weighted degree of every node (out-degree for directed graphs)."""
    a = adjacency_matrix(g)
    return np.asarray(a.sum(axis=1)).reshape(-1)


def laplacian(g: LabeledGraph) -> sp.csr_matrix:
    """Graph Laplacian ``degree matrix minus adjacency``.

    Only defined for undirected graphs; symmetrize directed input
    explicitly before calling.
    """
    if g.directed:
        raise ValueError("laplacian requires an undirected graph; symmetrize first")
    a = adjacency_matrix(g)
    d = np.asarray(a.sum(axis=1)).reshape(-1)
    return sp.diags(d, format="csr") - a


# ---------------------------------------------------------------------------
# Connectivity
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ComponentDecomposition:
    """Connected-component labelling of a graph.

    ``component_of[i]`` is the component id of node ``i`` and ``sizes``
    holds the component sizes sorted in descending order.
    """

    component_of: np.ndarray
    sizes: np.ndarray

    def __post_init__(self) -> None:
        comp = np.asarray(self.component_of, dtype=np.int64)
        sizes = np.asarray(self.sizes, dtype=np.int64)
        if comp.size and sizes.sum() != comp.size:
            raise ValueError("component sizes must sum to the node count")
        object.__setattr__(self, "component_of", _frozen(comp))
        object.__setattr__(self, "sizes", _frozen(sizes))

    @property
    def count(self) -> int:
        return int(self.sizes.size)


def connected_components(g: LabeledGraph) -> ComponentDecomposition:
    """Decompose ``g`` into (weakly) connected components."""
    if g.n == 0:
        return ComponentDecomposition(np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64))
    a = adjacency_matrix(g)
    _, comp = csgraph.connected_components(a, directed=g.directed, connection="weak")
    sizes = np.sort(np.bincount(comp))[::-1]
    return ComponentDecomposition(comp, sizes)


def node_subgraph(g: LabeledGraph, node_indices) -> LabeledGraph:
    """Subgraph induced by ``node_indices``, preserving labels and order."""
    keep = np.zeros(g.n, dtype=bool)
    keep[np.asarray(list(node_indices), dtype=np.int64)] = True
    new_id = np.cumsum(keep) - 1
    mask = keep[g.edges[:, 0]] & keep[g.edges[:, 1]]
    edges = new_id[g.edges[mask]]
    labels = tuple(lab for i, lab in enumerate(g.labels) if keep[i])
    return LabeledGraph(labels, edges, directed=g.directed, weights=g.weights[mask])


def greatest_component(g: LabeledGraph) -> LabeledGraph:
    """Return the greatest connected component as a label-preserving subgraph.

    Ties on component size break deterministically: the component that
    contains the lexicographically smallest label wins.
    """
    decomp = connected_components(g)
    comp = decomp.component_of
    if g.n == 0:
        return g
    sizes = np.bincount(comp)
    best = np.flatnonzero(sizes == sizes.max())
    if best.size == 1:
        winner = best[0]
    else:
        winner = min(
            best,
            key=lambda c: min(lab for i, lab in enumerate(g.labels) if comp[i] == c),
        )
    return node_subgraph(g, np.flatnonzero(comp == winner))


def graph_stats(g: LabeledGraph) -> dict:
    """Node/edge/fragment counts for the graph and its greatest component."""
    decomp = connected_components(g)
    gc = greatest_component(g)
    return {
        "nodes": g.n,
        "edges": g.edge_count,
        "fragments": decomp.count,
        "gc_nodes": gc.n,
        "gc_edges": gc.edge_count,
    }


# ---------------------------------------------------------------------------
# Cell-cell interaction graphs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PartitionedCciGraph:
    """Directed four-partite cell-cell interaction graph.

    Every node belongs to exactly one layer of :data:`CCI_LAYERS` and every
    edge connects adjacent layers in the forward direction, so each valid
    communication path is a three-hop ``sender -> ligand -> receptor ->
    receiver`` chain.
    """

    graph: LabeledGraph
    layer_of: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(self.layer_of) != self.graph.n:
            raise CciValidationError("one layer assignment per node is required")
        object.__setattr__(self, "layer_of", tuple(self.layer_of))

    def layer_counts(self) -> dict[str, int]:
        return {layer: self.layer_of.count(layer) for layer in CCI_LAYERS}

    def nodes_in_layer(self, layer: str) -> list[int]:
        return [i for i, lay in enumerate(self.layer_of) if lay == layer]


def build_cci_graph(nodes, edges) -> PartitionedCciGraph:
    """Validate and build a four-partite CCI graph.

    Parameters
    ----------
    nodes : iterable of (label, layer)
        Layer must be one of :data:`CCI_LAYERS`.
    edges : iterable of (label, label)
        Directed edges; both endpoints must exist and the target layer must
        be the successor of the source layer.

    Raises
    ------
    CciValidationError
        On unknown layers, duplicate nodes, missing endpoints, intra-layer,
        layer-skipping or reverse-direction edges (naming the edge).
    """
    labels: list[str] = []
    layers: list[str] = []
    seen: dict[str, str] = {}
    for label, layer in nodes:
        label = str(label).strip()
        layer = str(layer).strip().lower()
        if layer not in CCI_LAYERS:
            raise CciValidationError(
                f"node {label!r}: unknown layer {layer!r} "
                f"(expected one of {', '.join(CCI_LAYERS)})"
            )
        if label in seen:
            raise CciValidationError(f"duplicate node label {label!r}")
        seen[label] = layer
        labels.append(label)
        layers.append(layer)
    rank = {layer: i for i, layer in enumerate(CCI_LAYERS)}
    pairs = []
    for u, v in edges:
        u, v = str(u).strip(), str(v).strip()
        for endpoint in (u, v):
            if endpoint not in seen:
                raise CciValidationError(
                    f"edge ({u}, {v}): unknown node {endpoint!r}"
                )
        du, dv = rank[seen[u]], rank[seen[v]]
        if dv != du + 1:
            if du == dv:
                kind = "intra-layer edge"
            elif dv < du:
                kind = "reverse-direction edge"
            else:
                kind = "layer-skipping edge"
            raise CciValidationError(
                f"{kind} ({u} [{seen[u]}] -> {v} [{seen[v]}]) is not allowed"
            )
        pairs.append((u, v))
    g = graph_from_edges(pairs, directed=True, nodes=labels)
    return PartitionedCciGraph(g, tuple(layers))


def symmetrized_view(cci: PartitionedCciGraph) -> LabeledGraph:
    """Undirected view of a CCI graph with the same node set.

    Each directed edge becomes a single unweighted undirected edge; this is
    the substrate for arc-space walks, which require a reverse arc for
    every arc.
    """
    g = cci.graph
    edges, weights, _ = _merge_edges(
        g.edges.copy(), np.ones(g.edge_count), directed=False
    )
    return LabeledGraph(g.labels, edges, directed=False, weights=np.ones(len(weights)))


def parse_node_layers(text: str) -> list[tuple[str, str]]:
    """Parse a node-layer TSV (``label<TAB>layer``) into (label, layer) pairs."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = [f.strip() for f in line.split("\t")]
        if len(fields) != 2 or not fields[0] or not fields[1]:
            raise GraphFormatError(
                f"line {lineno}: expected 'label<TAB>layer', got {raw!r}"
            )
        out.append((fields[0], fields[1]))
    if not out:
        raise GraphFormatError("empty node-layer table")
    return out


def parse_label_pairs(text: str) -> list[tuple[str, str]]:
    """Parse a two-column TSV of label pairs (comments and blanks skipped)."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = [f.strip() for f in line.split("\t")]
        if len(fields) != 2 or not fields[0] or not fields[1]:
            raise GraphFormatError(
                f"line {lineno}: expected 'u<TAB>v', got {raw!r}"
            )
        out.append((fields[0], fields[1]))
    if not out:
        raise GraphFormatError("empty edge table")
    return out
