"""Continuous-time quantum random walks on labeled graphs.

A walk is generated by a Hermitian Hamiltonian built from the graph:
the adjacency matrix, the combinatorial Laplacian, or a chiral variant
whose edge entries carry unit-modulus phases ``exp(i * phi)``.  States
evolve under ``psi(t) = expm(-i H t) psi(0)``; wavefunction collapse
replaces the state by its normalized squared modulus at scheduled
times, which suppresses interference while retaining the quantum
propagator between collapses.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from .expm import ConvergenceError, SparseHermitian, expm_action
from .graphs import LabeledGraph
from .metrics import RankedList
from .states import as_amplitude_vector

__all__ = [
    "HamiltonianSpec",
    "CollapseSchedule",
    "build_hamiltonian",
    "uniform_chiral_phases",
    "random_chiral_phases",
    "initial_state_from_scores",
    "evolve",
    "evolve_with_collapses",
    "transition_probability",
    "transition_rate",
    "collapse",
    "measure",
    "rank_by_probability",
]

HAMILTONIAN_KINDS = ("adjacency", "laplacian", "chiral")

#: Norm drift beyond this is renormalized away; beyond _DRIFT_FAIL it is an error.
_DRIFT_RENORM = 1e-12
_DRIFT_FAIL = 1e-8


@dataclass(frozen=True)
class HamiltonianSpec:
    """Which Hamiltonian to build, plus edge phases for the chiral kind.

    ``phases`` maps an oriented edge ``(j, k)`` to an angle ``phi``; the
    Hamiltonian gets ``H[j, k] = w * exp(i phi)`` and ``H[k, j]`` its
    conjugate.  Every edge of the graph must receive exactly one phase,
    and phases on non-edges are rejected.
    """

    kind: str
    phases: tuple[tuple[int, int, float], ...] = field(default=())

    def __post_init__(self) -> None:
        if self.kind not in HAMILTONIAN_KINDS:
            raise ValueError(
                f"unknown hamiltonian kind {self.kind!r}; "
                f"expected one of {HAMILTONIAN_KINDS}"
            )
        entries = []
        for j, k, phi in self.phases:
            entries.append((int(j), int(k), float(phi)))
        if entries and self.kind != "chiral":
            raise ValueError("phases are only meaningful for kind='chiral'")
        object.__setattr__(self, "phases", tuple(entries))

    @classmethod
    def adjacency(cls) -> "HamiltonianSpec":
        return cls("adjacency")

    @classmethod
    def laplacian(cls) -> "HamiltonianSpec":
        return cls("laplacian")

    @classmethod
    def chiral(cls, phases) -> "HamiltonianSpec":
        if isinstance(phases, dict):
            phases = [(j, k, phi) for (j, k), phi in phases.items()]
        return cls("chiral", tuple(phases))


def uniform_chiral_phases(g: LabeledGraph, phi: float) -> HamiltonianSpec:
    """Chiral spec assigning the same angle to every edge of ``g``.

    For a directed graph the phase is oriented along each stored edge,
    so a directed cycle acquires a consistent circulation.
    """
    phases = [(int(j), int(k), float(phi)) for j, k in g.edges]
    return HamiltonianSpec.chiral(phases)


def random_chiral_phases(g: LabeledGraph, rng) -> HamiltonianSpec:
    """Chiral spec with angles drawn uniformly from [0, 2*pi)."""
    rng = np.random.default_rng(rng)
    angles = rng.uniform(0.0, 2.0 * np.pi, size=g.edge_count)
    phases = [
        (int(j), int(k), float(a)) for (j, k), a in zip(g.edges, angles)
    ]
    return HamiltonianSpec.chiral(phases)


def _edge_weight_map(g: LabeledGraph) -> dict[tuple[int, int], float]:
    if g.weights is None:
        return {(int(j), int(k)): 1.0 for j, k in g.edges}
    return {
        (int(j), int(k)): float(w) for (j, k), w in zip(g.edges, g.weights)
    }


def build_hamiltonian(g: LabeledGraph, spec: HamiltonianSpec) -> SparseHermitian:
    """Hermitian walk generator for ``g`` according to ``spec``.

    Adjacency and Laplacian Hamiltonians require an undirected graph.
    The chiral kind accepts directed graphs, using the undirected
    support of the edges; each support edge must be phased exactly once.
    """
    from .graphs import adjacency_matrix, laplacian

    if spec.kind == "adjacency":
        if g.directed:
            raise ValueError("adjacency Hamiltonian requires an undirected graph")
        return SparseHermitian(adjacency_matrix(g).astype(np.complex128))
    if spec.kind == "laplacian":
        return SparseHermitian(laplacian(g).astype(np.complex128))

    weight_of = _edge_weight_map(g)
    support = {}
    for (j, k), w in weight_of.items():
        key = (j, k) if j < k else (k, j)
        support[key] = support.get(key, 0.0) + w
    phased: dict[tuple[int, int], complex] = {}
    for j, k, phi in spec.phases:
        key = (j, k) if j < k else (k, j)
        if key not in support:
            raise ValueError(f"phase assigned to non-edge ({j}, {k})")
        if key in phased:
            raise ValueError(f"edge ({key[0]}, {key[1]}) phased more than once")
        angle = phi if j < k else -phi
        phased[key] = support[key] * np.exp(1j * angle)
    missing = sorted(set(support) - set(phased))
    if missing:
        j, k = missing[0]
        raise ValueError(
            f"{len(missing)} edge(s) missing a phase, first ({j}, {k})"
        )
    rows = np.empty(2 * len(phased), dtype=np.int64)
    cols = np.empty_like(rows)
    vals = np.empty(2 * len(phased), dtype=np.complex128)
    for i, ((j, k), h) in enumerate(sorted(phased.items())):
        rows[2 * i], cols[2 * i], vals[2 * i] = j, k, h
        rows[2 * i + 1], cols[2 * i + 1], vals[2 * i + 1] = k, j, np.conj(h)
    matrix = sp.csr_matrix((vals, (rows, cols)), shape=(g.n, g.n))
    return SparseHermitian(matrix)


def initial_state_from_scores(scores) -> np.ndarray:
    """Unit-norm initial state proportional to a nonnegative score vector."""
    s = np.asarray(scores, dtype=np.float64).reshape(-1)
    if s.size == 0:
        raise ValueError("score vector must be nonempty")
    if not np.all(np.isfinite(s)):
        raise ValueError("score vector must be finite")
    if np.any(s < 0):
        raise ValueError("score vector must be nonnegative")
    nrm = float(np.linalg.norm(s))
    if nrm == 0.0:
        raise ValueError("score vector must have at least one positive entry")
    return (s / nrm).astype(np.complex128)


def _check_drift(psi: np.ndarray) -> np.ndarray:
    nrm = float(np.linalg.norm(psi))
    drift = abs(nrm - 1.0)
    if drift >= _DRIFT_FAIL:
        raise ConvergenceError(
            f"evolution lost unitarity: norm drifted by {drift:.3e}"
        )
    if drift > _DRIFT_RENORM:
        return psi / nrm
    return psi


def evolve(
    hamiltonian: SparseHermitian,
    psi0,
    t: float,
    tol: float = 1e-10,
    backend: str = "auto",
) -> np.ndarray:
    """State after Schrodinger evolution of ``psi0`` for time ``t``."""
    psi0 = as_amplitude_vector(psi0, hamiltonian.n)
    psi = expm_action(hamiltonian, psi0, t, tol=tol, backend=backend)
    return _check_drift(psi)


@dataclass(frozen=True)
class CollapseSchedule:
    """Strictly increasing collapse times, all inside (0, t_final)."""

    times: tuple[float, ...]

    def __post_init__(self) -> None:
        times = tuple(float(t) for t in self.times)
        if not all(np.isfinite(times)):
            raise ValueError("collapse times must be finite")
        if any(t <= 0.0 for t in times):
            raise ValueError("collapse times must be positive")
        if any(b <= a for a, b in zip(times, times[1:])):
            raise ValueError("collapse times must be strictly increasing")
        object.__setattr__(self, "times", times)

    def validate_horizon(self, t_final: float) -> None:
        if self.times and self.times[-1] >= t_final:
            raise ValueError(
                f"collapse time {self.times[-1]} is not inside (0, {t_final})"
            )


def collapse(psi, norm: str = "l2") -> np.ndarray:
    """Collapse a state onto its squared-modulus profile.

    The default renormalizes ``|psi|**2`` to unit Euclidean norm, giving
    a valid state whose subsequent evolution is unitary.  ``norm='l1'``
    instead scales the profile to unit sum, for sensitivity checks; the
    result is then not a unit state.
    """
    psi = np.asarray(psi, dtype=np.complex128).reshape(-1)
    prob = np.abs(psi) ** 2
    if norm == "l2":
        scale = float(np.linalg.norm(prob))
    elif norm == "l1":
        scale = float(prob.sum())
    else:
        raise ValueError(f"unknown collapse norm {norm!r}; expected 'l2' or 'l1'")
    if scale == 0.0:
        raise ValueError("cannot collapse the zero state")
    return (prob / scale).astype(np.complex128)


def evolve_with_collapses(
    hamiltonian: SparseHermitian,
    psi0,
    t_final: float,
    schedule=None,
    tol: float = 1e-10,
    backend: str = "auto",
    collapse_norm: str = "l2",
) -> np.ndarray:
    """Evolve to ``t_final`` with collapses at the scheduled times.

    An empty schedule reduces exactly to :func:`evolve`.
    """
    if schedule is None:
        schedule = CollapseSchedule(())
    elif not isinstance(schedule, CollapseSchedule):
        schedule = CollapseSchedule(tuple(schedule))
    if t_final < 0:
        raise ValueError(f"t_final must be nonnegative, got {t_final}")
    schedule.validate_horizon(t_final)
    psi = as_amplitude_vector(psi0, hamiltonian.n)
    t_prev = 0.0
    for t_c in schedule.times:
        psi = expm_action(hamiltonian, psi, t_c - t_prev, tol=tol, backend=backend)
        if collapse_norm == "l2":
            psi = _check_drift(psi)
        psi = collapse(psi, norm=collapse_norm)
        t_prev = t_c
    psi = expm_action(hamiltonian, psi, t_final - t_prev, tol=tol, backend=backend)
    if collapse_norm == "l2":
        psi = _check_drift(psi)
    return psi


def transition_probability(
    hamiltonian: SparseHermitian,
    source: int,
    destination: int,
    t: float,
    tol: float = 1e-10,
    backend: str = "auto",
) -> float:
    """Probability of finding at ``source`` a walker started at ``destination``.

    This is ``|<source| expm(-i H t) |destination>|**2``, clipped to
    [0, 1] against rounding.
    """
    n = hamiltonian.n
    unit = np.zeros(n, dtype=np.complex128)
    unit[destination] = 1.0
    u = expm_action(hamiltonian, unit, t, tol=tol, backend=backend)
    p = float(np.abs(u[source]) ** 2)
    return min(max(p, 0.0), 1.0)


def transition_rate(
    hamiltonian: SparseHermitian,
    source: int,
    destination: int,
    t: float,
    tol: float = 1e-10,
    backend: str = "auto",
) -> float:
    """Time derivative of :func:`transition_probability` at ``t``.

    With ``m = <source| expm(-i H t) |destination>`` the rate is
    ``2 Re(conj(m) * m')`` where ``m' = <source| -i H expm(-i H t)
    |destination>``.
    """
    n = hamiltonian.n
    unit = np.zeros(n, dtype=np.complex128)
    unit[destination] = 1.0
    u = expm_action(hamiltonian, unit, t, tol=tol, backend=backend)
    m = u[source]
    m_dot = -1j * (hamiltonian.matrix @ u)[source]
    return float(2.0 * np.real(np.conj(m) * m_dot))


def measure(psi) -> np.ndarray:
    """Measurement distribution ``|psi_i|**2`` of a unit state."""
    psi = np.asarray(psi, dtype=np.complex128).reshape(-1)
    prob = np.abs(psi) ** 2
    total = float(prob.sum())
    if abs(total - 1.0) > 1e-8:
        raise ValueError(
            f"state is not normalized: probabilities sum to {total:.12f}"
        )
    out = prob / total
    out.setflags(write=False)
    return out


def rank_by_probability(p, labels=None, exclude=()) -> RankedList:
    """Nodes ranked by probability, ties broken by ascending index.

    ``exclude`` removes nodes (indices, or labels when ``labels`` is
    given) from the ranking entirely, which is how seed genes are kept
    out of a prioritized list.
    """
    p = np.asarray(p, dtype=np.float64).reshape(-1)
    n = p.shape[0]
    if labels is not None and len(labels) != n:
        raise ValueError("one label per probability is required")
    excluded = set()
    for e in exclude:
        if isinstance(e, str):
            if labels is None:
                raise ValueError("label exclusions require labels")
            excluded.add(list(labels).index(e))
        else:
            excluded.add(int(e))
    order = [i for i in np.argsort(-p, kind="stable") if i not in excluded]
    items = tuple(labels[i] if labels is not None else int(i) for i in order)
    return RankedList(items, p[order])
