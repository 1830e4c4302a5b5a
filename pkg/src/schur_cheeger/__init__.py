"""Schur-complement cuts that certify the spectral gap of a weighted graph.

The normalized spectral gap ``λ_G`` sits between ``ρ_G / 25600`` and
``2 ρ_G``, where ``ρ_G`` is the smallest fractional conductance of a cut
between two vertex sets in the Schur complement onto their union.
"""

from .errors import *  # noqa: F401,F403
from .graph import (
    CutPair,
    Graph,
    as_vertex_set,
    boundary_weight,
    build_graph,
    cut_weight,
    parse_edgelist,
    phi_set,
    read_edgelist,
    volume,
    write_edgelist,
)
from .spectral import (
    SpectralResult,
    apx_fiedler,
    lambda_gap,
    laplacian_quadratic,
    solve_laplacian,
)
from .schur import (
    ConductanceReport,
    SchurGraph,
    conductance_pair,
    contract,
    effective_resistance,
    eliminate_vertex,
    schur_complement,
    schur_cut_weight,
)
from .sweepcut import (
    SweepResult,
    SweepVector,
    cheeger_sweep,
    kappa,
    make_sweep_vector,
    piecewise_proxy,
    proxy_value,
    shift_alpha,
    sweep_breakpoints,
    sweep_cut,
    threshold_pair,
)
from . import generators, oracle

__version__ = "0.1.0"
