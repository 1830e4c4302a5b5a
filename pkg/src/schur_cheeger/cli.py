"""Command-line interface: ``schur-cheeger <command> ...``.

Exit codes: 0 success, 1 error or failed check, 2 input outside the
SweepCut precondition (``λ > 1/25600``). JSON output carries ``"schema": 1``.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import generators, oracle
from .errors import GraphError, NoConvergence, NoQualifyingThreshold, TooLarge
from .graph import Graph, format_edgelist, read_edgelist, volume
from .schur import effective_resistance
from .spectral import DENSE_THRESHOLD, apx_fiedler, lambda_gap
from .sweepcut import (
    cheeger_sweep,
    make_sweep_vector,
    piecewise_proxy,
    proxy_value,
    sweep_cut,
    threshold_pair,
)

SCHEMA = 1
TRIVIAL_REGIME = 1.0 / oracle.UPPER_CONSTANT
CURVE_SAMPLES = 256


class CommandFailed(Exception):
    """Carries a finished payload whose check failed (exit code 1)."""

    def __init__(self, payload):
        super().__init__(payload.get("message", "check failed"))
        self.payload = payload


class OutOfRegime(CommandFailed):
    """SweepCut found nothing and the input may be outside its precondition."""


def _threads() -> int:
    raw = os.environ.get("SCHUR_CHEEGER_THREADS", "1")
    try:
        k = int(raw)
    except ValueError:
        return 1
    return (os.cpu_count() or 1) if k == 0 else max(1, k)


def _labels(G: Graph, ids) -> list:
    return [G.labels[int(i)] for i in ids]


def _parse_ids(G: Graph, spec: str) -> list[int]:
    out = []
    for tok in spec.split(","):
        tok = tok.strip()
        if not tok:
            continue
        key = int(tok) if tok.lstrip("-").isdigit() and isinstance(G.labels[0], int) else tok
        if key not in G.index_of:
            raise GraphError(f"unknown vertex id {tok!r}")
        out.append(G.index_of[key])
    return out


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        return v if math.isfinite(v) else repr(v)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def _emit(payload: dict, fmt: str, out):
    payload = _jsonable({"schema": SCHEMA, **payload})
    if fmt == "json":
        out.write(json.dumps(payload, indent=2) + "\n")
        return
    for key, val in payload.items():
        if isinstance(val, (dict, list)):
            val = json.dumps(val)
        out.write(f"{key}: {val}\n")


def _lambda_payload(G: Graph, args) -> dict:
    res = lambda_gap(G, dense_threshold=args.dense_threshold, seed=args.seed)
    return {"lambda": res.lam, "method": res.method, "residual": res.residual}


def cmd_gen(args, out):
    G = generators.generate(args.family, args.params, seed=args.seed)
    text = format_edgelist(G)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        out.write(text)
    return None


def cmd_lambda(args, out):
    G = read_edgelist(args.graph)
    return {"command": "lambda", "n": G.n, "m": G.m, **_lambda_payload(G, args)}


def cmd_phi(args, out):
    G = read_edgelist(args.graph)
    G.require_connected()
    if G.n <= oracle.MAX_PHI_N:
        phi, S = oracle.phi_exact(G)
        method = "exact"
    else:
        fied = lambda_gap(G, dense_threshold=args.dense_threshold, seed=args.seed)
        phi, S = cheeger_sweep(G, fied.vector / np.sqrt(G.degree))
        method = "sweep"
    return {"command": "phi", "n": G.n, "phi": phi, "method": method, "set": _labels(G, S)}


def _curve(G, sv, side):
    pw = piecewise_proxy(G, sv, side=side)
    knots = pw.knots
    if knots.size > CURVE_SAMPLES:
        knots = knots[np.linspace(0, knots.size - 1, CURVE_SAMPLES).astype(int)]
    qs = side * knots
    return [[float(q), float(h)] for q, h in zip(qs, pw.h(qs))]


def cmd_sweepcut(args, out):
    G = read_edgelist(args.graph)
    G.require_connected()
    spec = apx_fiedler(G, dense_threshold=args.dense_threshold, seed=args.seed)
    lam_hat = spec.rayleigh / 2
    base = {"command": "sweepcut", "n": G.n, "lambda_hat": lam_hat,
            "lambda_method": spec.method, "rayleigh": spec.rayleigh}
    try:
        res = sweep_cut(G, spectral=spec, dense_threshold=args.dense_threshold)
    except NoQualifyingThreshold as exc:
        payload = {**base, "satisfied": False, "message": str(exc)}
        if lam_hat > TRIVIAL_REGIME or spec.rayleigh > TRIVIAL_REGIME:
            payload["regime"] = "trivial (lambda > 1/25600)"
        raise OutOfRegime(payload) from None
    sv = res.sweep_vector
    rep = res.report
    return {
        **base,
        "satisfied": res.ok,
        "conditions": {"proxy": res.satisfied[0], "interior_boundary": res.satisfied[1],
                       "phi": res.satisfied[2]},
        "A": _labels(G, res.A),
        "B": _labels(G, res.B),
        "q": res.q,
        "proxy": res.proxy,
        "sigma": rep.sigma,
        "rho": rep.rho,
        "schur_cut": rep.schur_cut,
        "phi_A": res.phi_A,
        "phi_B": res.phi_B,
        "vol_G": [rep.vol_G_A, rep.vol_G_B],
        "vol_I": [rep.vol_I_A, rep.vol_I_B],
        "sigma_over_lambda_hat": rep.sigma / lam_hat,
        "curve": {"positive": _curve(G, sv, 1), "negative": _curve(G, sv, -1)},
    }


def _pair(G, pair):
    return {"A": _labels(G, pair[0]), "B": _labels(G, pair[1])}


def cmd_rho_exact(args, out):
    G = read_edgelist(args.graph)
    lam = oracle.dense_gap(G) if G.is_connected else math.nan
    ex = oracle.rho_sigma_exact(G, workers=_threads())
    return {"command": "rho-exact", "n": G.n, "rho_G": ex.rho, "sigma_G": ex.sigma,
            "rho_pair": _pair(G, ex.rho_pair), "sigma_pair": _pair(G, ex.sigma_pair),
            "pairs": ex.pairs, "lambda": lam, "method": "dense"}


def cmd_reff(args, out):
    G = read_edgelist(args.graph)
    S1, S2 = _parse_ids(G, args.s1), _parse_ids(G, args.s2)
    reff = effective_resistance(G, S1, S2, dense_threshold=args.dense_threshold)
    minvol = min(volume(G, S1), volume(G, S2))
    return {"command": "reff", "S1": _labels(G, sorted(S1)), "S2": _labels(G, sorted(S2)),
            "reff": reff, "min_volume": minvol, "sigma": 1.0 / (reff * minvol)}


def cmd_verify(args, out):
    G = read_edgelist(args.graph)
    rep = oracle.verify_graph(G, tol=args.tol, seed=args.seed, workers=_threads())
    payload = {
        "command": "verify", "n": G.n, "ok": rep.ok,
        "lambda": rep.lam, "method": "dense",
        "phi_G": rep.phi_G, "rho_G": rep.rho_G, "sigma_G": rep.sigma_G,
        "phi_set": _labels(G, rep.phi_set),
        "rho_pair": _pair(G, rep.rho_pair), "sigma_pair": _pair(G, rep.sigma_pair),
        "slack": rep.slack, "pairs_checked": rep.pairs_checked,
        "pair_violations": rep.pair_violations,
        "resistance_max_rel_err": rep.resistance_max_rel_err,
        "violations": rep.violations,
    }
    if not rep.ok:
        payload["message"] = "violated: " + "; ".join(rep.violations)
        raise CommandFailed(payload)
    return payload


def cmd_proxy_check(args, out):
    G = read_edgelist(args.graph)
    G.require_connected()
    spec = apx_fiedler(G, dense_threshold=args.dense_threshold, seed=args.seed)
    sv = make_sweep_vector(G, spec.vector)
    rng = np.random.default_rng(args.seed)
    lo, hi = float(sv.y.min()), float(sv.y.max())
    rows, violations = [], 0
    for _ in range(args.samples):
        q = float(rng.uniform(lo, hi))
        if q == 0:
            continue
        A, B = threshold_pair(sv, q)
        if A.size == 0 or B.size == 0:
            continue
        cut = 1.0 / effective_resistance(G, A, B, dense_threshold=args.dense_threshold)
        proxy = proxy_value(G, sv, q)
        bad = cut > proxy + 1e-7 * (1 + proxy)
        violations += bad
        rows.append({"q": q, "schur_cut": cut, "proxy": proxy, "ok": not bad})
    payload = {"command": "proxy-check", "n": G.n, "samples": rows,
               "violations": int(violations)}
    if violations:
        payload["message"] = f"{violations} threshold(s) with Schur cut above the proxy"
        raise CommandFailed(payload)
    return payload


COMMANDS = {
    "gen": cmd_gen,
    "lambda": cmd_lambda,
    "phi": cmd_phi,
    "sweepcut": cmd_sweepcut,
    "rho-exact": cmd_rho_exact,
    "reff": cmd_reff,
    "verify": cmd_verify,
    "proxy-check": cmd_proxy_check,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--tol", type=float, default=1e-9,
                        help="slack tolerance for inequality checks")
    common.add_argument("--dense-threshold", type=int, default=DENSE_THRESHOLD)

    parser = argparse.ArgumentParser(
        prog="schur-cheeger",
        description="Schur-complement cuts and spectral-gap certificates.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[common], help="write a graph family as an edge list")
    p.add_argument("family", choices=sorted(generators.FAMILIES))
    p.add_argument("params", nargs="*")
    p.add_argument("-o", "--output")

    for name, helptext in [
        ("lambda", "spectral gap of the normalized Laplacian"),
        ("phi", "minimum fractional conductance (exact for n <= 20)"),
        ("sweepcut", "run SweepCut and report the certificate"),
        ("rho-exact", "exact rho_G and sigma_G by enumeration (n <= 9)"),
        ("verify", "check every inequality exactly (n <= 9)"),
        ("proxy-check", "compare Schur cuts with the sweep proxy"),
    ]:
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("graph")
        if name == "proxy-check":
            p.add_argument("--samples", type=int, default=20)

    p = sub.add_parser("reff", parents=[common], help="effective resistance between vertex sets")
    p.add_argument("graph")
    p.add_argument("s1", help="comma-separated vertex ids")
    p.add_argument("s2", help="comma-separated vertex ids")
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        payload = COMMANDS[args.command](args, out)
    except OutOfRegime as exc:
        _emit(exc.payload, args.format, out)
        return 2
    except CommandFailed as exc:
        _emit(exc.payload, args.format, out)
        return 1
    except (GraphError, NoConvergence, TooLarge, OSError) as exc:
        _emit({"command": args.command, "error": type(exc).__name__, "message": str(exc)},
              args.format, out)
        print(f"schur-cheeger: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    if payload is not None:
        _emit(payload, args.format, out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
