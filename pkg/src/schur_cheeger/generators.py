"""Graph families used by the tests, the demos and ``schur-cheeger gen``."""

from __future__ import annotations

import numpy as np

from .errors import BadParams
from .graph import Graph, build_graph

__all__ = ["cycle", "path", "grid", "dumbbell", "star", "random_graph",
           "random_suite", "SUITE_SEED", "FAMILIES", "generate"]

SUITE_SEED = 20190514


def _need(cond, msg):
    if not cond:
        raise BadParams(msg)


def cycle(n: int, weight: float = 1.0) -> Graph:
    _need(n >= 3, "cycle needs n >= 3")
    return build_graph((i, (i + 1) % n, weight) for i in range(n))


def path(n: int, weight: float = 1.0) -> Graph:
    _need(n >= 2, "path needs n >= 2")
    return build_graph((i, i + 1, weight) for i in range(n - 1))


def grid(rows: int, cols: int) -> Graph:
    _need(rows >= 1 and cols >= 1 and rows * cols >= 2, "grid needs at least 2 vertices")
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1, 1.0))
            if r + 1 < rows:
                edges.append((v, v + cols, 1.0))
    return build_graph(edges)


def dumbbell(k: int) -> Graph:
    """Two ``k``-cliques joined by a single edge between vertices 0 and ``k``."""
    _need(k >= 2, "dumbbell needs k >= 2")
    edges = []
    for off in (0, k):
        edges += [(off + i, off + j, 1.0) for i in range(k) for j in range(i + 1, k)]
    edges.append((0, k, 1.0))
    return build_graph(edges)


def star(leaves: int) -> Graph:
    """Centre ``leaves`` joined to leaves ``0..leaves-1``."""
    _need(leaves >= 1, "star needs at least one leaf")
    return build_graph((leaves, i, 1.0) for i in range(leaves))


def random_graph(n: int, p: float, w_max: int, seed: int, *, max_tries: int = 10_000) -> Graph:
    """Connected G(n, p) graph with integer weights in ``1..w_max``.

    Connectivity is enforced by rejection sampling, so the output depends
    only on the arguments.
    """
    _need(n >= 2, "random graph needs n >= 2")
    _need(0 < p <= 1, "p must lie in (0, 1]")
    _need(w_max >= 1, "w_max must be >= 1")
    rng = np.random.default_rng(seed)
    iu, ju = np.triu_indices(n, k=1)
    for _ in range(max_tries):
        keep = rng.random(iu.size) < p
        w = rng.integers(1, w_max + 1, size=iu.size)
        if not keep.any():
            continue
        g = Graph(n, iu[keep], ju[keep], w[keep].astype(float))
        if g.is_connected:
            return g
    raise BadParams(f"no connected sample after {max_tries} tries (n={n}, p={p})")


def random_suite(count: int = 50, n_min: int = 3, n_max: int = 8, w_max: int = 4,
                 seed: int = SUITE_SEED) -> list[Graph]:
    """Reproducible list of small connected weighted graphs.

    Sizes are uniform in ``[n_min, n_max]`` and edge densities uniform in
    ``[0.3, 0.9]``.
    """
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        n = int(rng.integers(n_min, n_max + 1))
        p = float(rng.uniform(0.3, 0.9))
        out.append(random_graph(n, p, w_max, int(rng.integers(2**31))))
    return out


FAMILIES = {
    "cycle": (cycle, (int,)),
    "path": (path, (int,)),
    "grid": (grid, (int, int)),
    "dumbbell": (dumbbell, (int,)),
    "star": (star, (int,)),
    "random": (random_graph, (int, float, int)),
}


def generate(family: str, params, seed: int = 0) -> Graph:
    """Build a family member from string parameters (CLI helper)."""
    if family not in FAMILIES:
        raise BadParams(f"unknown family {family!r}; choose from {sorted(FAMILIES)}")
    fn, types = FAMILIES[family]
    if len(params) != len(types):
        raise BadParams(f"{family} takes {len(types)} parameter(s), got {len(params)}")
    try:
        args = [t(p) for t, p in zip(types, params)]
    except ValueError as exc:
        raise BadParams(f"bad parameter for {family}: {exc}") from None
    if family == "random":
        return fn(*args, seed=seed)
    return fn(*args)
