"""Brute-force reference computations for small graphs.

Everything here works from the dense Laplacian and exhaustive enumeration
and shares no code path with the elimination, resistance and sweep
routines it is used to check.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import partial

import numpy as np
from scipy.integrate import quad

from .errors import SingularBlock, TooLarge
from .graph import Graph, as_vertex_set

__all__ = [
    "MAX_PHI_N",
    "MAX_PAIR_N",
    "MAX_DENSE_SCHUR_N",
    "UPPER_CONSTANT",
    "dense_gap",
    "dense_pinv",
    "dense_schur_matrix",
    "dense_schur",
    "phi_exact",
    "pair_blocks",
    "ExactConductance",
    "rho_sigma_exact",
    "VerificationReport",
    "verify_graph",
    "kappa_integral_numeric",
]

MAX_PHI_N = 20
MAX_PAIR_N = 9
MAX_DENSE_SCHUR_N = 200
UPPER_CONSTANT = 25600.0


def dense_gap(G: Graph) -> float:
    """Second-smallest eigenvalue of the dense normalized Laplacian."""
    s = np.sqrt(G.degree)
    vals = np.linalg.eigvalsh(G.dense_laplacian() / np.outer(s, s))
    return float(vals[1])


def dense_pinv(G: Graph) -> np.ndarray:
    return np.linalg.pinv(G.dense_laplacian(), hermitian=True)


def dense_schur_matrix(L: np.ndarray, keep: np.ndarray) -> np.ndarray:
    """``L[X,X] - L[X,Z] L[Z,Z]^{-1} L[Z,X]`` with ``Z`` the complement of ``X``."""
    n = L.shape[0]
    mask = np.zeros(n, dtype=bool)
    mask[keep] = True
    if mask.all():
        return L.copy()
    LXX = L[np.ix_(mask, mask)]
    LXZ = L[np.ix_(mask, ~mask)]
    LZZ = L[np.ix_(~mask, ~mask)]
    try:
        return LXX - LXZ @ np.linalg.solve(LZZ, LXZ.T)
    except np.linalg.LinAlgError:
        raise SingularBlock("eliminated block is singular (disconnected input?)") from None


def dense_schur(G: Graph, X, *, drop_rtol: float = 1e-13) -> Graph:
    """Schur complement by block elimination of the dense Laplacian.

    Off-diagonal entries of magnitude below ``drop_rtol * max diag`` are
    treated as rounding noise and produce no edge.
    """
    if G.n > MAX_DENSE_SCHUR_N:
        raise TooLarge(f"dense_schur is capped at n={MAX_DENSE_SCHUR_N}")
    X = as_vertex_set(G, X)
    S = dense_schur_matrix(G.dense_laplacian(), X)
    iu, ju = np.triu_indices(len(X), k=1)
    w = -S[iu, ju]
    keep = w > drop_rtol * max(float(np.abs(np.diag(S)).max(initial=0.0)), 1e-300)
    return Graph(len(X), iu[keep], ju[keep], w[keep], labels=[G.labels[v] for v in X.tolist()])


def phi_exact(G: Graph) -> tuple[float, np.ndarray]:
    """Minimum fractional conductance over all nonempty proper subsets.

    Each complementary pair is visited once (the last vertex is always
    outside the enumerated set).
    """
    n = G.n
    if n > MAX_PHI_N:
        raise TooLarge(f"phi_exact is capped at n={MAX_PHI_N}")
    if n < 2:
        raise TooLarge("need at least two vertices")
    total = G.total_volume
    best, best_mask = math.inf, 0
    count = 1 << (n - 1)
    chunk = 1 << 14
    bits = np.arange(n, dtype=np.int64)
    for start in range(1, count, chunk):
        masks = np.arange(start, min(start + chunk, count), dtype=np.int64)
        member = ((masks[:, None] >> bits) & 1).astype(bool)
        vol = member @ G.degree
        cut = (member[:, G.u] != member[:, G.v]) @ G.w
        phi = cut / np.minimum(vol, total - vol)
        k = int(np.argmin(phi))
        if phi[k] < best:
            best, best_mask = float(phi[k]), int(masks[k])
    return best, np.array([v for v in range(n) if best_mask >> v & 1], dtype=np.int64)


def _pair_block(L, deg, n, ymask):
    Y = np.array([v for v in range(n) if ymask >> v & 1], dtype=np.int64)
    k = len(Y)
    S = dense_schur_matrix(L, Y)
    # bit i of rest puts Y[i + 1] into A; the all-ones mask would empty B
    rest = np.arange((1 << (k - 1)) - 1, dtype=np.int64)
    member = np.empty((rest.size, k), dtype=bool)
    member[:, 0] = True
    member[:, 1:] = (rest[:, None] >> np.arange(k - 1)) & 1
    M = member.astype(float)
    cut = np.einsum("ij,jk,ik->i", M, S, M)
    dI = np.diag(S)
    vIA = M @ dI
    vIB = dI.sum() - vIA
    vGA = M @ deg[Y]
    vGB = deg[Y].sum() - vGA
    return Y, member, cut, vIA, vIB, vGA, vGB


def pair_blocks(G: Graph, *, workers: int = 1):
    """Yield every admissible ``(A, B)`` pair, grouped by ``Y = A ∪ B``.

    For each ``Y`` (in increasing bitmask order) yields ``(Y, member, cut,
    vol_I_A, vol_I_B, vol_G_A, vol_G_B)`` where row ``r`` of the boolean
    matrix ``member`` marks ``A`` inside ``Y``; ``A`` always holds ``min(Y)``
    so each unordered pair appears once. With ``workers > 1`` the blocks are
    computed on a thread pool but still yielded in bitmask order.
    """
    n = G.n
    if n > MAX_PAIR_N:
        raise TooLarge(f"pair enumeration is capped at n={MAX_PAIR_N}")
    G.require_connected()
    L = G.dense_laplacian()
    masks = [m for m in range(1, 1 << n) if bin(m).count("1") >= 2]
    job = partial(_pair_block, L, G.degree, n)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            yield from pool.map(job, masks)
    else:
        yield from map(job, masks)


@dataclass
class ExactConductance:
    rho: float
    sigma: float
    rho_pair: tuple
    sigma_pair: tuple
    pairs: int
    min_pair_slack: float = math.nan  # min over pairs of 2σ_{A,B} - λ, when λ given
    pair_violations: int = 0


def rho_sigma_exact(G: Graph, *, lam: float | None = None, tol: float = 1e-9,
                    workers: int = 1) -> ExactConductance:
    """Exact ``ρ_G`` and ``σ_G`` over all ``3^n`` assignments.

    When ``lam`` is given, also counts pairs with ``λ > 2σ_{A,B} + tol``.
    Ties keep the first pair in enumeration order, independent of ``workers``.
    """
    best_rho = (math.inf, None)
    best_sigma = (math.inf, None)
    pairs = 0
    violations = 0
    min_slack = math.inf
    for Y, member, cut, vIA, vIB, vGA, vGB in pair_blocks(G, workers=workers):
        rho = cut / np.minimum(vIA, vIB)
        sigma = cut / np.minimum(vGA, vGB)
        pairs += len(cut)
        i, j = int(np.argmin(rho)), int(np.argmin(sigma))
        if rho[i] < best_rho[0]:
            best_rho = (float(rho[i]), (Y[member[i]], Y[~member[i]]))
        if sigma[j] < best_sigma[0]:
            best_sigma = (float(sigma[j]), (Y[member[j]], Y[~member[j]]))
        if lam is not None:
            slack = 2 * sigma - lam
            min_slack = min(min_slack, float(slack.min()))
            violations += int(np.count_nonzero(slack < -tol))
    return ExactConductance(
        rho=best_rho[0], sigma=best_sigma[0], rho_pair=best_rho[1],
        sigma_pair=best_sigma[1], pairs=pairs,
        min_pair_slack=min_slack if lam is not None else math.nan,
        pair_violations=violations,
    )


@dataclass
class VerificationReport:
    """Exact quantities of a small graph and the slack of each inequality.

    Every entry of ``slack`` is ``rhs - lhs`` of an inequality ``lhs <= rhs``;
    a negative value beyond the tolerance is a violation.
    """

    lam: float
    phi_G: float
    rho_G: float
    sigma_G: float
    phi_set: np.ndarray
    rho_pair: tuple
    sigma_pair: tuple
    slack: dict
    pairs_checked: int
    pair_violations: int
    resistance_max_rel_err: float
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_graph(G: Graph, *, tol: float = 1e-9, identity_rtol: float = 1e-7,
                 identity_samples: int = 20, seed: int = 0,
                 workers: int = 1) -> VerificationReport:
    """Check every inequality of the λ / φ / ρ / σ sandwich on a small graph.

    The effective-resistance identity ``Reff(S1, S2) * min vol = 1 / σ`` is
    checked on the σ-minimizing pair plus ``identity_samples`` random pairs,
    with ``Reff`` taken from :func:`schur_cheeger.schur.effective_resistance`.
    """
    from .schur import effective_resistance

    if G.n > MAX_PAIR_N:
        raise TooLarge(f"verify_graph is capped at n={MAX_PAIR_N} (got n={G.n})")
    G.require_connected()
    lam = dense_gap(G)
    phi, phi_set = phi_exact(G)
    ex = rho_sigma_exact(G, lam=lam, tol=tol, workers=workers)

    # resistance identity on sampled pairs
    rng = np.random.default_rng(seed)
    checks = [ex.sigma_pair]
    for _ in range(identity_samples):
        labels = rng.integers(0, 3, size=G.n)
        if not (labels == 1).any() or not (labels == 2).any():
            continue
        checks.append((np.flatnonzero(labels == 1), np.flatnonzero(labels == 2)))
    L = G.dense_laplacian()
    worst = 0.0
    for A, B in checks:
        S = dense_schur_matrix(L, np.union1d(A, B))
        a = np.isin(np.union1d(A, B), A).astype(float)
        sigma = float(a @ S @ a) / min(G.degree[A].sum(), G.degree[B].sum())
        reff = effective_resistance(G, A, B)
        lhs = reff * min(G.degree[A].sum(), G.degree[B].sum())
        worst = max(worst, abs(lhs - 1 / sigma) / (1 / sigma))

    A, B = ex.sigma_pair
    minvol = min(G.degree[A].sum(), G.degree[B].sum())
    reff = effective_resistance(G, A, B)
    slack = {
        "lambda/2 <= rho_G": ex.rho - lam / 2,
        "rho_G <= 25600*lambda": UPPER_CONSTANT * lam - ex.rho,
        "lambda <= 2*sigma_G": 2 * ex.sigma - lam,
        "sigma_G <= rho_G": ex.rho - ex.sigma,
        "lambda/2 <= phi_G": phi - lam / 2,
        "phi_G <= sqrt(2*lambda)": math.sqrt(2 * lam) - phi,
        "Reff >= 1/(25600*lambda*minvol)": reff - 1 / (UPPER_CONSTANT * lam * minvol),
        "Reff <= 2/(lambda*minvol)": 2 / (lam * minvol) - reff,
        "lambda <= 2*sigma_AB (all pairs)": ex.min_pair_slack,
    }
    violations = [name for name, s in slack.items() if s < -tol * max(1.0, abs(lam))]
    if worst > identity_rtol:
        violations.append("Reff*minvol = 1/sigma")
    return VerificationReport(
        lam=lam, phi_G=phi, rho_G=ex.rho, sigma_G=ex.sigma, phi_set=phi_set,
        rho_pair=ex.rho_pair, sigma_pair=ex.sigma_pair, slack=slack,
        pairs_checked=ex.pairs, pair_violations=ex.pair_violations,
        resistance_max_rel_err=worst, violations=violations,
    )


def _kappa_pos(q, y):
    return min(q, max(q / 2, y))


def kappa_integral_numeric(a: float, b: float) -> float:
    """``∫_0^∞ (κ_q(a) - κ_q(b))^2 / q dq`` by adaptive quadrature.

    Both clamps equal ``q/2`` once ``q > 2 max(a, b)``, so the integral runs
    over ``[0, 2 max(a, b, 0)]`` split at the kinks ``a, 2a, b, 2b``.
    """
    top = 2.0 * max(a, b, 0.0)
    if top == 0.0 or a == b:
        return 0.0

    def f(q):
        d = _kappa_pos(q, a) - _kappa_pos(q, b)
        return d * d / q

    kinks = sorted({p for p in (a, 2 * a, b, 2 * b) if 0 < p < top})
    scale = 1.0 + (a - b) ** 2
    val, _ = quad(f, 0.0, top, points=kinks or None, epsabs=1e-11 * scale,
                  epsrel=1e-12, limit=200)
    return float(val)
