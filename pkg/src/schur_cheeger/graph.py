"""Weighted undirected graphs and their cut quantities.

A :class:`Graph` stores each undirected edge once as ``(u, v, w)`` with
``u < v``, sorted lexicographically. Vertices are the compact ids
``0..n-1``; the original ids seen at ingestion are kept in ``labels``.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from functools import cached_property
from os import PathLike
from typing import Hashable, Iterable

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components

from .errors import (
    Disconnected,
    EmptyOrFullSet,
    GraphError,
    NonPositiveWeight,
    OverlappingSets,
    SelfLoop,
)

__all__ = [
    "Graph",
    "CutPair",
    "build_graph",
    "as_vertex_set",
    "volume",
    "cut_weight",
    "boundary_weight",
    "phi_set",
    "read_edgelist",
    "write_edgelist",
    "parse_edgelist",
]


class Graph:
    """Immutable weighted undirected graph without self-loops.

    Use :func:`build_graph` for raw input; the constructor expects compact
    integer endpoints and merges parallel edges by adding their weights.
    """

    def __init__(self, n, u, v, w, labels=None):
        u = np.asarray(u, dtype=np.int64).ravel()
        v = np.asarray(v, dtype=np.int64).ravel()
        w = np.asarray(w, dtype=float).ravel()
        if not (len(u) == len(v) == len(w)):
            raise GraphError("edge arrays must have equal length")
        if np.any(u == v):
            k = int(np.flatnonzero(u == v)[0])
            raise SelfLoop(f"self-loop at vertex {u[k]}")
        if np.any(~(w > 0)) or not np.all(np.isfinite(w)):
            raise NonPositiveWeight("edge weights must be positive and finite")
        n = int(n)
        if len(u) and (min(u.min(), v.min()) < 0 or max(u.max(), v.max()) >= n):
            raise GraphError("edge endpoint out of range")

        lo, hi = np.minimum(u, v), np.maximum(u, v)
        key = lo * n + hi
        uniq, inv = np.unique(key, return_inverse=True)
        merged = np.zeros(len(uniq))
        np.add.at(merged, inv, w)

        self.n = n
        self.u = uniq // n if n else uniq
        self.v = uniq % n if n else uniq
        self.w = merged
        deg = np.zeros(n)
        np.add.at(deg, self.u, merged)
        np.add.at(deg, self.v, merged)
        self.degree = deg
        for arr in (self.u, self.v, self.w, self.degree):
            arr.setflags(write=False)
        self.labels = tuple(range(n)) if labels is None else tuple(labels)
        if len(self.labels) != n:
            raise GraphError("labels must have one entry per vertex")

    @property
    def m(self) -> int:
        return len(self.w)

    @property
    def edges(self) -> list[tuple[int, int, float]]:
        return list(zip(self.u.tolist(), self.v.tolist(), self.w.tolist()))

    @cached_property
    def adjacency_matrix(self) -> sp.csr_matrix:
        n = self.n
        rows = np.concatenate([self.u, self.v])
        cols = np.concatenate([self.v, self.u])
        data = np.concatenate([self.w, self.w])
        return sp.csr_matrix((data, (rows, cols)), shape=(n, n))

    @cached_property
    def adjacency(self) -> list[list[tuple[int, float]]]:
        """Per-vertex list of ``(neighbor, weight)`` pairs."""
        A = self.adjacency_matrix
        return [
            list(zip(A.indices[A.indptr[i]:A.indptr[i + 1]].tolist(),
                     A.data[A.indptr[i]:A.indptr[i + 1]].tolist()))
            for i in range(self.n)
        ]

    @cached_property
    def laplacian(self) -> sp.csr_matrix:
        return (sp.diags(self.degree) - self.adjacency_matrix).tocsr()

    def dense_laplacian(self) -> np.ndarray:
        return self.laplacian.toarray()

    @cached_property
    def total_volume(self) -> float:
        return float(self.degree.sum())

    @cached_property
    def is_connected(self) -> bool:
        if self.n == 0:
            return False
        ncomp, _ = connected_components(self.adjacency_matrix, directed=False)
        return ncomp == 1

    def require_connected(self):
        if not self.is_connected:
            raise Disconnected("graph is not connected")

    @cached_property
    def index_of(self) -> dict:
        return {lab: i for i, lab in enumerate(self.labels)}

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m}, volume={self.total_volume:g})"


@dataclass(frozen=True)
class CutPair:
    """Two disjoint, nonempty vertex sets."""

    A: np.ndarray
    B: np.ndarray

    def __post_init__(self):
        if len(self.A) == 0 or len(self.B) == 0:
            raise EmptyOrFullSet("both sides of a cut pair must be nonempty")
        if np.intersect1d(self.A, self.B).size:
            raise OverlappingSets("cut pair sides overlap")


def _sort_ids(ids):
    if all(isinstance(x, (int, np.integer)) for x in ids):
        return sorted(ids)
    return ids


def build_graph(edge_triples: Iterable[tuple[Hashable, Hashable, float]]) -> Graph:
    """Build a graph from ``(u, v, w)`` triples.

    Vertex ids may be any hashable. Integer ids are compacted in sorted
    order; otherwise ids keep their order of first appearance. Parallel
    edges are merged by adding weights.

    Raises
    ------
    SelfLoop
        If some triple has ``u == v``.
    NonPositiveWeight
        If some weight is ``<= 0`` (or not finite).
    """
    triples = list(edge_triples)
    seen = {}
    for a, b, w in triples:
        if a == b:
            raise SelfLoop(f"self-loop at vertex {a!r}")
        if not float(w) > 0 or not np.isfinite(float(w)):
            raise NonPositiveWeight(f"weight {w!r} on edge ({a!r}, {b!r}) is not positive")
        seen.setdefault(a, None)
        seen.setdefault(b, None)
    labels = _sort_ids(list(seen))
    index = {lab: i for i, lab in enumerate(labels)}
    u = [index[a] for a, _, _ in triples]
    v = [index[b] for _, b, _ in triples]
    w = [float(c) for _, _, c in triples]
    return Graph(len(labels), u, v, w, labels=labels)


def as_vertex_set(G: Graph, S) -> np.ndarray:
    """Sorted, duplicate-free int array of vertex ids, bounds-checked."""
    arr = np.unique(np.asarray(list(S) if not isinstance(S, np.ndarray) else S,
                               dtype=np.int64))
    if arr.size and (arr[0] < 0 or arr[-1] >= G.n):
        raise GraphError(f"vertex id out of range for graph with n={G.n}")
    return arr


def _mask(G: Graph, S) -> np.ndarray:
    mask = np.zeros(G.n, dtype=bool)
    mask[as_vertex_set(G, S)] = True
    return mask


def volume(G: Graph, S) -> float:
    """Sum of weighted degrees over ``S``."""
    return float(G.degree[as_vertex_set(G, S)].sum())


def cut_weight(G: Graph, A, B) -> float:
    """Total weight of edges with one endpoint in ``A`` and the other in ``B``."""
    ma, mb = _mask(G, A), _mask(G, B)
    if np.any(ma & mb):
        raise OverlappingSets("A and B must be disjoint")
    crossing = (ma[G.u] & mb[G.v]) | (mb[G.u] & ma[G.v])
    return float(G.w[crossing].sum())


def boundary_weight(G: Graph, A) -> float:
    """Weight of the edge boundary of ``A``."""
    ma = _mask(G, A)
    return float(G.w[ma[G.u] != ma[G.v]].sum())


def phi_set(G: Graph, A) -> float:
    """Fractional conductance ``c(∂A) / min(vol(A), vol(V∖A))``."""
    ma = _mask(G, A)
    k = int(ma.sum())
    if k == 0 or k == G.n:
        raise EmptyOrFullSet("A must be a nonempty proper subset of V")
    vol_a = float(G.degree[ma].sum())
    denom = min(vol_a, G.total_volume - vol_a)
    return float(G.w[ma[G.u] != ma[G.v]].sum()) / denom


def _parse_id(tok: str):
    try:
        return int(tok)
    except ValueError:
        return tok


def parse_edgelist(text: str) -> Graph:
    """Parse the ``u v w`` edge-list text format.

    Blank lines and lines starting with ``#`` are ignored. If every vertex
    token is an integer the ids are kept as ints, otherwise as strings.
    """
    rows = []
    for lineno, line in enumerate(io.StringIO(text), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 3:
            raise GraphError(f"line {lineno}: expected 'u v w', got {line!r}")
        try:
            w = float(parts[2])
        except ValueError:
            raise GraphError(f"line {lineno}: bad weight {parts[2]!r}") from None
        rows.append((parts[0], parts[1], w))
    ids = {t for a, b, _ in rows for t in (a, b)}
    if all(_parse_id(t).__class__ is int for t in ids):
        rows = [(int(a), int(b), w) for a, b, w in rows]
    return build_graph(rows)


def read_edgelist(path: str | PathLike) -> Graph:
    with open(path) as fh:
        return parse_edgelist(fh.read())


def _fmt_weight(w: float) -> str:
    return str(int(w)) if float(w).is_integer() and abs(w) < 2**53 else repr(float(w))


def format_edgelist(G: Graph) -> str:
    lines = [f"{G.labels[a]} {G.labels[b]} {_fmt_weight(w)}" for a, b, w in G.edges]
    return "\n".join(lines) + ("\n" if lines else "")


def write_edgelist(G: Graph, path: str | PathLike):
    with open(path, "w") as fh:
        fh.write(format_edgelist(G))
