"""Schur complements of graphs, contractions and Schur-cut conductances.

``Schur(G, X)`` is computed by star-mesh elimination: removing vertex ``v``
adds ``c_uv * c_vw / c_v`` between every pair of its neighbours. Self-loop
contributions are discarded, which leaves the Laplacian unchanged.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import EmptyRetainedSet, GraphError, LastVertex, OverlappingSets
from .graph import Graph, as_vertex_set
from .spectral import DENSE_THRESHOLD, laplacian_solver

__all__ = [
    "SchurGraph",
    "ConductanceReport",
    "eliminate_vertex",
    "schur_complement",
    "contract",
    "effective_resistance",
    "schur_cut_weight",
    "conductance_pair",
]


@dataclass(frozen=True)
class SchurGraph:
    """A Schur complement together with the ids it was taken onto.

    ``graph`` uses compact ids ``0..k-1``; compact id ``i`` corresponds to
    vertex ``retained[i]`` of the source graph (``id_map`` is the inverse).
    """

    graph: Graph
    retained: np.ndarray
    id_map: dict

    def to_source(self, compact) -> np.ndarray:
        return self.retained[np.asarray(compact, dtype=np.int64)]

    def to_compact(self, original) -> np.ndarray:
        return np.array([self.id_map[int(v)] for v in original], dtype=np.int64)


@dataclass(frozen=True)
class ConductanceReport:
    """Schur-cut quantities for a pair ``(A, B)`` with ``I = Schur(G, A ∪ B)``."""

    rho: float
    sigma: float
    schur_cut: float
    vol_I_A: float
    vol_I_B: float
    vol_G_A: float
    vol_G_B: float

    def as_dict(self) -> dict:
        return dict(self.__dict__)


class _Eliminator:
    """Mutable adjacency used while eliminating vertices."""

    def __init__(self, G: Graph):
        self.adj: list[dict[int, float]] = [dict() for _ in range(G.n)]
        for a, b, w in zip(G.u.tolist(), G.v.tolist(), G.w.tolist()):
            self.adj[a][b] = w
            self.adj[b][a] = w
        self.alive = np.ones(G.n, dtype=bool)

    def eliminate(self, v: int):
        nbrs = self.adj[v]
        cv = sum(nbrs.values())
        items = list(nbrs.items())
        for x, _ in items:
            del self.adj[x][v]
        for i, (x, cx) in enumerate(items):
            ax = self.adj[x]
            for y, cy in items[i + 1:]:
                add = cx * cy / cv
                ax[y] = ax.get(y, 0.0) + add
                self.adj[y][x] = ax[y]
        self.adj[v] = {}
        self.alive[v] = False

    def to_graph(self, keep: np.ndarray, labels: Sequence) -> Graph:
        index = {int(v): i for i, v in enumerate(keep)}
        u, w_, c = [], [], []
        for v in keep.tolist():
            for x, wt in self.adj[v].items():
                if v < x:
                    u.append(index[v])
                    w_.append(index[x])
                    c.append(wt)
        return Graph(len(keep), u, w_, c, labels=[labels[v] for v in keep.tolist()])


def eliminate_vertex(G: Graph, v: int) -> Graph:
    """Star-mesh transform: the graph on ``V∖{v}`` with ``v`` eliminated.

    Vertex ids above ``v`` shift down by one; labels follow their vertices.
    """
    if G.n <= 1:
        raise LastVertex("cannot eliminate the only vertex")
    if not 0 <= v < G.n:
        raise GraphError(f"vertex {v} out of range")
    el = _Eliminator(G)
    el.eliminate(int(v))
    keep = np.flatnonzero(el.alive)
    return el.to_graph(keep, G.labels)


def _min_degree_order(el: _Eliminator, targets: np.ndarray):
    heap = [(len(el.adj[v]), v) for v in targets.tolist()]
    heapq.heapify(heap)
    pending = set(targets.tolist())
    while heap:
        deg, v = heapq.heappop(heap)
        if v not in pending or deg != len(el.adj[v]):
            continue
        pending.discard(v)
        nbrs = list(el.adj[v])
        yield v
        for x in nbrs:
            if x in pending:
                heapq.heappush(heap, (len(el.adj[x]), x))


def schur_complement(G: Graph, X, *, order=None) -> SchurGraph:
    """Schur complement of ``G`` onto the vertex set ``X``.

    Vertices outside ``X`` are eliminated in minimum-degree order (current
    neighbour count, ties to the smaller id) unless ``order`` gives an
    explicit elimination sequence. The result does not depend on the order
    up to rounding.
    """
    X = as_vertex_set(G, X)
    if X.size == 0:
        raise EmptyRetainedSet("retained set must be nonempty")
    G.require_connected()
    out = np.setdiff1d(np.arange(G.n), X)
    el = _Eliminator(G)
    if order is None:
        for v in _min_degree_order(el, out):
            el.eliminate(v)
    else:
        order = [int(v) for v in order]
        if sorted(order) != out.tolist():
            raise GraphError("order must list every eliminated vertex exactly once")
        for v in order:
            el.eliminate(v)
    graph = el.to_graph(X, G.labels)
    return SchurGraph(graph, X, {int(v): i for i, v in enumerate(X.tolist())})


def contract(G: Graph, A, B=()) -> Graph:
    """Identify ``A`` to a vertex ``a`` and ``B`` to a vertex ``b``.

    ``a`` gets compact id 0 and ``b`` (when ``B`` is nonempty) id 1; the
    untouched vertices follow in their original order with their labels.
    Edges inside ``A`` or inside ``B`` disappear; parallel edges merge.
    """
    A = as_vertex_set(G, A)
    B = as_vertex_set(G, B)
    if np.intersect1d(A, B).size:
        raise OverlappingSets("A and B must be disjoint")
    f = np.full(G.n, -1, dtype=np.int64)
    labels = []
    nxt = 0
    if A.size:
        f[A] = nxt
        labels.append("a")
        nxt += 1
    if B.size:
        f[B] = nxt
        labels.append("b")
        nxt += 1
    rest = np.flatnonzero(f < 0)
    f[rest] = np.arange(nxt, nxt + rest.size)
    labels.extend(G.labels[v] for v in rest.tolist())
    fu, fv = f[G.u], f[G.v]
    keep = fu != fv
    return Graph(nxt + rest.size, fu[keep], fv[keep], G.w[keep], labels=labels)


def effective_resistance(G: Graph, S1, S2, *,
                         dense_threshold: int = DENSE_THRESHOLD) -> float:
    """Effective resistance between the contracted sets ``S1`` and ``S2``.

    Edge weights act as conductances. Computed with one Laplacian solve on
    ``G / (S1, S2)``.
    """
    S1 = as_vertex_set(G, S1)
    S2 = as_vertex_set(G, S2)
    if S1.size == 0 or S2.size == 0:
        raise GraphError("both sets must be nonempty")
    if np.intersect1d(S1, S2).size:
        raise OverlappingSets("S1 and S2 must be disjoint")
    G.require_connected()
    H = contract(G, S1, S2)
    chi = np.zeros(H.n)
    chi[0], chi[1] = 1.0, -1.0
    x = laplacian_solver(H, dense_threshold=dense_threshold)(chi)
    return float(x[0] - x[1])


def schur_cut_weight(G: Graph, A, B, **kw) -> float:
    """Weight between ``A`` and ``B`` in ``Schur(G, A ∪ B)``, as ``1 / Reff``."""
    return 1.0 / effective_resistance(G, A, B, **kw)


def conductance_pair(G: Graph, A, B) -> ConductanceReport:
    """Materialize ``I = Schur(G, A ∪ B)`` and report ``ρ`` and ``σ`` for ``(A, B)``."""
    A = as_vertex_set(G, A)
    B = as_vertex_set(G, B)
    if A.size == 0 or B.size == 0:
        raise GraphError("both sets must be nonempty")
    if np.intersect1d(A, B).size:
        raise OverlappingSets("A and B must be disjoint")
    S = schur_complement(G, np.union1d(A, B))
    I = S.graph
    in_a = np.zeros(I.n, dtype=bool)
    in_a[S.to_compact(A)] = True
    cut = float(I.w[in_a[I.u] != in_a[I.v]].sum())
    vol_I_A = float(I.degree[in_a].sum())
    vol_I_B = float(I.degree[~in_a].sum())
    vol_G_A = float(G.degree[A].sum())
    vol_G_B = float(G.degree[B].sum())
    return ConductanceReport(
        rho=cut / min(vol_I_A, vol_I_B),
        sigma=cut / min(vol_G_A, vol_G_B),
        schur_cut=cut,
        vol_I_A=vol_I_A,
        vol_I_B=vol_I_B,
        vol_G_A=vol_G_A,
        vol_G_B=vol_G_B,
    )
