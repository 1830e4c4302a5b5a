"""Why Schur-complement conductance tracks 1/λ when plain conductance cannot.

On an n-cycle the spectral gap is about 2π²/n², yet every cut has
conductance at least 2/n. So Cheeger's inequality is loose by a factor of n
here. Take two opposite quarters A and B instead. Eliminating the other
vertices leaves two long series paths between them, and the Schur cut
conductance comes out at about 16/n², which matches λ up to a constant.
"""

import math

import numpy as np

from schur_cheeger import cheeger_sweep, conductance_pair, generators, lambda_gap

print(f"{'n':>6} {'lambda':>12} {'phi_G':>10} {'rho(A,B)':>12} {'rho/lambda':>11} {'phi/lambda':>11}")
for n in (16, 64, 256, 1024):
    G = generators.cycle(n)
    spec = lambda_gap(G)
    phi, _ = cheeger_sweep(G, spec.vector / np.sqrt(G.degree))

    A = np.arange(0, n // 4)
    B = np.arange(n // 2, 3 * n // 4)
    rep = conductance_pair(G, A, B)
    print(f"{n:>6} {spec.lam:12.4e} {phi:10.4e} {rep.rho:12.4e} "
          f"{rep.rho / spec.lam:11.3f} {phi / spec.lam:11.1f}")

# The Schur cut between the quarters is two series paths of n/4 unit
# resistors in parallel: weight 8/n. The retained quarters keep almost all
# of their volume, so rho is close to (8/n) / (n/2).
n = 1024
print()
print("predicted rho for n=1024:", 16 / n**2, " lambda:", 1 - math.cos(2 * math.pi / n))
