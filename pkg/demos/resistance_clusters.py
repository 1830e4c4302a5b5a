"""Effective resistance between sets, and what 1/λ says about it.

Any pair of sets satisfies Reff(S1, S2) <= 2 / (λ min vol). Some pair comes
within a constant of that bound. Single vertices rarely do. On a grid,
pairwise resistances stay around log n while 1/λ grows like n. Opposite
strips of the grid close the gap.
"""

import numpy as np

from schur_cheeger import effective_resistance, generators, lambda_gap, volume

for side in (8, 16, 32):
    G = generators.grid(side, side)
    lam = lambda_gap(G).lam

    corner = effective_resistance(G, [0], [G.n - 1])
    cv = min(volume(G, [0]), volume(G, [G.n - 1]))

    k = side // 4
    left = np.array([r * side + c for r in range(side) for c in range(k)])
    right = np.array([r * side + c for r in range(side) for c in range(side - k, side)])
    strips = effective_resistance(G, left, right)
    sv = min(volume(G, left), volume(G, right))

    bound = lambda mv: 2 / (lam * mv)
    print(f"{side}x{side}: 1/lambda = {1 / lam:8.2f}")
    print(f"   corners  Reff = {corner:7.3f}  bound = {bound(cv):9.2f}  ratio = {corner / bound(cv):.4f}")
    print(f"   strips   Reff = {strips:7.4f}  bound = {bound(sv):9.4f}  ratio = {strips / bound(sv):.4f}")
