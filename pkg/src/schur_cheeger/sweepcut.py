"""Threshold sweeps over an approximate Fiedler embedding.

:func:`sweep_cut` looks for a pair ``(A, B)`` whose Schur-cut mixed
conductance is at most ``640 λ`` while both sides keep a large interior.
For each threshold ``q`` the pair is ``(S_{<=q/2}, S_{>=q})`` when ``q > 0``
and ``(S_{<=q}, S_{>=q/2})`` when ``q < 0``. The Schur cut weight of that
pair is bounded by the clamped-embedding energy :func:`proxy_value`, which
is piecewise a quadratic in ``1/q`` and is scanned interval by interval.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import NoQualifyingThreshold, ZeroThreshold
from .graph import Graph, as_vertex_set, phi_set
from .schur import ConductanceReport, conductance_pair
from .spectral import DENSE_THRESHOLD, SpectralResult, apx_fiedler

__all__ = [
    "SIGMA_FACTOR",
    "INTERIOR_FRACTION",
    "SweepVector",
    "PiecewiseProxy",
    "SweepResult",
    "kappa",
    "proxy_value",
    "shift_alpha",
    "make_sweep_vector",
    "sweep_breakpoints",
    "piecewise_proxy",
    "threshold_pair",
    "sweep_cut",
    "cheeger_sweep",
]

SIGMA_FACTOR = 640.0
INTERIOR_FRACTION = 0.25
_DEDUP_ATOL = 1e-12
_NUDGE = 1e-12


def kappa(q, y):
    """Clamp ``y`` into ``[q/2, q]`` (``q > 0``) or ``[q, q/2]`` (``q <= 0``)."""
    y = np.asarray(y, dtype=float)
    if q > 0:
        out = np.minimum(q, np.maximum(q / 2, y))
    else:
        out = np.minimum(q / 2, np.maximum(q, y))
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class SweepVector:
    """Embedding ``y = x - alpha`` with ``x = D^{-1/2} z``."""

    y: np.ndarray
    alpha: float
    x: np.ndarray


def shift_alpha(G: Graph, x) -> float:
    """Lower degree-weighted median of ``x``.

    After shifting by it, both ``{y <= 0}`` and ``{y >= 0}`` carry at least
    half of the total volume.
    """
    x = np.asarray(x, dtype=float)
    order = np.argsort(x, kind="stable")
    cum = np.cumsum(G.degree[order])
    idx = int(np.searchsorted(2 * cum, cum[-1], side="left"))
    return float(x[order[min(idx, len(x) - 1)]])


def make_sweep_vector(G: Graph, z) -> SweepVector:
    x = np.asarray(z, dtype=float) / np.sqrt(G.degree)
    alpha = shift_alpha(G, x)
    return SweepVector(y=x - alpha, alpha=alpha, x=x)


def _y_of(sv):
    return sv.y if isinstance(sv, SweepVector) else np.asarray(sv, dtype=float)


def proxy_value(G: Graph, sv, q: float) -> float:
    """``(4/q^2) sum_e c_e (κ_q(y_u) - κ_q(y_v))^2``.

    An upper bound on the Schur cut weight of the threshold pair at ``q``.
    """
    if q == 0:
        raise ZeroThreshold("threshold q must be nonzero")
    k = kappa(q, _y_of(sv))
    d = k[G.u] - k[G.v]
    return 4.0 / (q * q) * float(np.dot(G.w, d * d))


def _dedup(vals):
    vals = np.sort(vals)
    if vals.size == 0:
        return vals
    keep = np.concatenate([[True], np.diff(vals) > _DEDUP_ATOL])
    return vals[keep]


def sweep_breakpoints(sv) -> tuple[np.ndarray, np.ndarray]:
    """Sorted breakpoints ``{y_u} ∪ {2 y_u}`` split by sign.

    Returns ``(positive, negative)``; zero entries produce no breakpoint.
    """
    y = _y_of(sv)
    pos = y[y > 0]
    neg = y[y < 0]
    return _dedup(np.concatenate([pos, 2 * pos])), _dedup(np.concatenate([neg, 2 * neg]))


@dataclass(frozen=True)
class PiecewiseProxy:
    """One side of the proxy as piecewise coefficients.

    Knots and coefficients are stored for ``|q|``. On the ``j``-th interval
    between consecutive ``knots`` (interval 0 is ``(0, knots[0])``, the last
    one is ``(knots[-1], inf)``) the clamped energy is
    ``a[j] |q|^2 + b[j] |q| + c[j]`` and ``h(q) = 4 * energy / q^2``.
    ``side=-1`` objects are evaluated at negative ``q``.
    """

    knots: np.ndarray
    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    side: int = 1

    def interval(self, q):
        return np.searchsorted(self.knots, self.side * np.asarray(q, dtype=float), side="right")

    def energy(self, q):
        q = self.side * np.asarray(q, dtype=float)
        j = np.searchsorted(self.knots, q, side="right")
        return self.a[j] * q * q + self.b[j] * q + self.c[j]

    def h(self, q):
        q = self.side * np.asarray(q, dtype=float)
        j = np.searchsorted(self.knots, q, side="right")
        inv = 1.0 / q
        return 4.0 * (self.a[j] + self.b[j] * inv + self.c[j] * inv * inv)

    def stationary_points(self) -> np.ndarray:
        """Interior zeros of ``h'`` (as ``|q|``), one closed-form root per interval."""
        lo = np.concatenate([[0.0], self.knots])
        hi = np.concatenate([self.knots, [np.inf]])
        with np.errstate(divide="ignore", invalid="ignore"):
            root = -2.0 * self.c / self.b
        ok = np.isfinite(root) & (root > lo) & (root < hi)
        return root[ok]


def _clamp_pieces(y, K, after):
    """Slope/offset of ``κ_q(y)`` just after (or before) each knot ``K``."""
    pos = y > 0
    if after:
        top = K < y
        mid = (y <= K) & (K < 2 * y)
    else:
        top = K <= y
        mid = (y < K) & (K <= 2 * y)
    s = np.where(pos & top, 1.0, np.where(pos & mid, 0.0, 0.5))
    t = np.where(pos & mid, y, 0.0)
    return s, t


def piecewise_proxy(G: Graph, sv, *, side: int = 1) -> PiecewiseProxy:
    """Piecewise-quadratic coefficients of the clamped energy.

    ``side=-1`` describes thresholds ``q < 0``; it is built from the mirrored
    vector ``-y``, whose positive side has the same clamped energies.
    Built with per-edge jump deltas accumulated over the global knots, so the
    cost is ``O(m log m)``.
    """
    y = _y_of(sv) * (1.0 if side > 0 else -1.0)
    knots = np.unique(np.concatenate([y[y > 0], 2 * y[y > 0]]))
    ya, yb, w = y[G.u], y[G.v], G.w

    # q -> 0+: positive endpoints sit at slope 1, the rest at slope 1/2
    s0 = np.where(ya > 0, 1.0, 0.5) - np.where(yb > 0, 1.0, 0.5)
    a = np.zeros(knots.size + 1)
    b = np.zeros(knots.size + 1)
    c = np.zeros(knots.size + 1)
    a[0] = float(np.dot(w, s0 * s0))

    K = np.sort(np.stack([ya, 2 * ya, yb, 2 * yb], axis=1), axis=1)
    valid = K > 0
    valid[:, 1:] &= K[:, 1:] != K[:, :-1]
    rows, cols = np.nonzero(valid)
    Kv = K[rows, cols]
    ua, ub, wv = ya[rows], yb[rows], w[rows]
    sa1, ta1 = _clamp_pieces(ua, Kv, True)
    sb1, tb1 = _clamp_pieces(ub, Kv, True)
    sa0, ta0 = _clamp_pieces(ua, Kv, False)
    sb0, tb0 = _clamp_pieces(ub, Kv, False)
    P1, Q1 = sa1 - sb1, ta1 - tb1
    P0, Q0 = sa0 - sb0, ta0 - tb0
    idx = np.searchsorted(knots, Kv) + 1
    np.add.at(a, idx, wv * (P1 * P1 - P0 * P0))
    np.add.at(b, idx, 2 * wv * (P1 * Q1 - P0 * Q0))
    np.add.at(c, idx, wv * (Q1 * Q1 - Q0 * Q0))
    return PiecewiseProxy(knots, np.cumsum(a), np.cumsum(b), np.cumsum(c),
                          side=1 if side > 0 else -1)


def threshold_pair(sv, q: float) -> tuple[np.ndarray, np.ndarray]:
    """The pair examined at threshold ``q``, low side first.

    ``(S_{<=q/2}, S_{>=q})`` for ``q > 0`` and ``(S_{<=q}, S_{>=q/2})`` for
    ``q < 0``.
    """
    y = _y_of(sv)
    if q > 0:
        return np.flatnonzero(y <= q / 2), np.flatnonzero(y >= q)
    if q < 0:
        return np.flatnonzero(y <= q), np.flatnonzero(y >= q / 2)
    raise ZeroThreshold("threshold q must be nonzero")


class _LevelSets:
    """Prefix sums for volumes and boundary weights of level sets of ``y``."""

    def __init__(self, G: Graph, y):
        order = np.argsort(y, kind="stable")
        self.ys = y[order]
        self.cvol = np.concatenate([[0.0], np.cumsum(G.degree[order])])
        self.total = self.cvol[-1]
        lo = np.minimum(y[G.u], y[G.v])
        hi = np.maximum(y[G.u], y[G.v])
        olo, ohi = np.argsort(lo, kind="stable"), np.argsort(hi, kind="stable")
        self.lo, self.hi = lo[olo], hi[ohi]
        self.clo = np.concatenate([[0.0], np.cumsum(G.w[olo])])
        self.chi = np.concatenate([[0.0], np.cumsum(G.w[ohi])])

    def vol_ge(self, t):
        return self.total - self.cvol[np.searchsorted(self.ys, t, side="left")]

    def vol_le(self, t):
        return self.cvol[np.searchsorted(self.ys, t, side="right")]

    def _suffix(self, arr, cum, t, side):
        return cum[-1] - cum[np.searchsorted(arr, t, side=side)]

    def cut_ge(self, t):
        """Boundary weight of ``{y >= t}``: edges with ``lo < t <= hi``."""
        return self._suffix(self.hi, self.chi, t, "left") - self._suffix(self.lo, self.clo, t, "left")

    def cut_le(self, t):
        """Boundary weight of ``{y <= t}``: edges with ``lo <= t < hi``."""
        return self._suffix(self.hi, self.chi, t, "right") - self._suffix(self.lo, self.clo, t, "right")


@dataclass
class SweepResult:
    """Outcome of :func:`sweep_cut`.

    ``A`` is the low side of the embedding, ``B`` the high side (vertex ids
    of the input graph). ``satisfied`` holds the three threshold conditions
    re-evaluated on the returned sets.
    """

    A: np.ndarray
    B: np.ndarray
    q: float
    proxy: float
    report: ConductanceReport
    phi_A: float
    phi_B: float
    satisfied: tuple
    lam_hat: float
    spectral: SpectralResult = field(repr=False, default=None)
    sweep_vector: SweepVector = field(repr=False, default=None)
    candidates: int = 0

    @property
    def ok(self) -> bool:
        return all(self.satisfied)


def _side_candidates(pw: PiecewiseProxy, ymax: float) -> np.ndarray:
    knots = pw.knots
    mids = (knots[:-1] + knots[1:]) / 2 if knots.size > 1 else np.empty(0)
    cand = np.concatenate([
        knots, knots * (1 - _NUDGE), knots * (1 + _NUDGE),
        pw.stationary_points(), mids,
        [knots[0] / 2] if knots.size else [],
    ])
    cand = cand[(cand > 0) & (cand <= ymax)]
    return np.unique(cand)


def _scan_side(G: Graph, y, lam_hat, factor):
    """Vectorized check of the three conditions on one side (``q > 0`` on ``y``)."""
    if not np.any(y > 0):
        return np.empty(0), np.empty(0), np.empty(0, dtype=bool)
    pw = piecewise_proxy(G, y)
    q = _side_candidates(pw, float(y.max()))
    lv = _LevelSets(G, y)
    vol_t = lv.vol_ge(q)            # S_{>=q}
    vol_f = lv.vol_le(q / 2)        # S_{<=q/2}
    h = pw.h(q)
    small = np.minimum(vol_t, vol_f)
    c1 = h <= factor * lam_hat * small
    c2 = (lv.cut_ge(q / 2) <= INTERIOR_FRACTION * vol_t) & \
         (lv.cut_le(q / 2) <= INTERIOR_FRACTION * vol_t)
    with np.errstate(divide="ignore", invalid="ignore"):
        phi_t = lv.cut_ge(q) / np.minimum(vol_t, lv.total - vol_t)
        phi_f = lv.cut_le(q / 2) / np.minimum(vol_f, lv.total - vol_f)
    c3 = (phi_t <= INTERIOR_FRACTION) & (phi_f <= INTERIOR_FRACTION)
    ok = c1 & c2 & c3 & (vol_t > 0) & (vol_f > 0)
    with np.errstate(divide="ignore", invalid="ignore"):
        score = np.where(small > 0, h / small, np.inf)
    return q, score, ok


def _conditions(G: Graph, sv, q, A, B, proxy, lam_hat, factor):
    y = sv.y
    far = B if q > 0 else A  # the S_{>=q} side (mirrored for q < 0)
    lv = _LevelSets(G, y if q > 0 else -y)
    qq = abs(q)
    vol_far = float(G.degree[far].sum())
    small = min(float(G.degree[A].sum()), float(G.degree[B].sum()))
    c1 = proxy <= factor * lam_hat * small
    c2 = bool(lv.cut_ge(qq / 2) <= INTERIOR_FRACTION * vol_far and
              lv.cut_le(qq / 2) <= INTERIOR_FRACTION * vol_far)
    c3 = phi_set(G, A) <= INTERIOR_FRACTION and phi_set(G, B) <= INTERIOR_FRACTION
    return (bool(c1), bool(c2), bool(c3))


def sweep_cut(G: Graph, *, spectral: SpectralResult | None = None,
              dense_threshold: int = DENSE_THRESHOLD, seed: int = 0,
              factor: float = SIGMA_FACTOR, max_verify: int = 64) -> SweepResult:
    """Find a low Schur-conductance pair with large interiors.

    Parameters
    ----------
    G : Graph
        Connected input graph. The guarantee needs ``λ_G <= 1/25600``.
    spectral : SpectralResult, optional
        Precomputed approximate Fiedler vector; computed with
        :func:`apx_fiedler` if omitted.
    factor : float
        Multiplier in condition (1); 640 by default.

    Returns
    -------
    SweepResult
        The qualifying pair with the smallest ``proxy / min(vol_G(A), vol_G(B))``.
        Condition (1) uses ``λ̂ = rayleigh / 2 <= λ_G`` in place of ``λ_G``.

    Raises
    ------
    NoQualifyingThreshold
        If no threshold satisfies all three conditions.
    """
    G.require_connected()
    if spectral is None:
        spectral = apx_fiedler(G, dense_threshold=dense_threshold, seed=seed)
    lam_hat = spectral.rayleigh / 2
    sv = make_sweep_vector(G, spectral.vector)

    entries = []
    for sign in (1.0, -1.0):
        q, score, ok = _scan_side(G, sign * sv.y, lam_hat, factor)
        for qi, si in zip(q[ok].tolist(), score[ok].tolist()):
            entries.append((si, len(entries), sign * qi))
    entries.sort()
    if not entries:
        raise NoQualifyingThreshold(
            f"no threshold qualifies (lambda_hat={lam_hat:.6g})", lam_hat=lam_hat)

    for score, _, q in entries[:max_verify]:
        A, B = threshold_pair(sv, q)
        if A.size == 0 or B.size == 0:
            continue
        proxy = proxy_value(G, sv, q)
        sat = _conditions(G, sv, q, A, B, proxy, lam_hat, factor)
        if not all(sat):
            continue
        return SweepResult(
            A=A, B=B, q=q, proxy=proxy, report=conductance_pair(G, A, B),
            phi_A=phi_set(G, A), phi_B=phi_set(G, B), satisfied=sat,
            lam_hat=lam_hat, spectral=spectral, sweep_vector=sv,
            candidates=len(entries),
        )
    raise NoQualifyingThreshold(
        f"no candidate survived direct re-evaluation (lambda_hat={lam_hat:.6g})",
        lam_hat=lam_hat)


def cheeger_sweep(G: Graph, x) -> tuple[float, np.ndarray]:
    """Classic sweep: the smallest ``φ`` among prefix sets of ``x``'s order.

    Returns ``(phi, S)``; ``S`` is the prefix attaining it.
    """
    x = np.asarray(x, dtype=float)
    order = np.argsort(x, kind="stable")
    rank = np.empty(G.n, dtype=np.int64)
    rank[order] = np.arange(G.n)
    ru, rv = rank[G.u], rank[G.v]
    lo, hi = np.minimum(ru, rv), np.maximum(ru, rv)
    # edge crosses prefix {0..k} iff lo <= k < hi
    delta = np.zeros(G.n + 1)
    np.add.at(delta, lo, G.w)
    np.add.at(delta, hi, -G.w)
    cut = np.cumsum(delta)[:-1][:-1]
    vol = np.cumsum(G.degree[order])[:-1]
    phi = cut / np.minimum(vol, G.total_volume - vol)
    k = int(np.argmin(phi))
    return float(phi[k]), as_vertex_set(G, order[:k + 1])
