"""Tour of the closed-form constants.

Prints the Hardy threshold, critical exponents, best constants and energy
levels over a small parameter sweep, and checks the two stated
specializations plus the s -> 2 limit numerically.
"""

import numpy as np

from hsvar import (ProblemParams, best_constant, critical_exponent,
                   critical_level, hardy_constant, separability_check,
                   sobolev_constant)

print("Hardy thresholds (N-2)^2/4:")
for N in (3, 4, 5, 6):
    print(f"  N={N}: L={hardy_constant(N):.4f}, "
          f"crit exp s=0: {critical_exponent(N, 0.0):.4f}, "
          f"s=1: {critical_exponent(N, 1.0):.4f}")

print("\nBest constant against the classical Sobolev value (s=0, lambda=0):")
for N in (3, 4, 5, 6):
    S = best_constant(N, 0.0, 0.0)
    print(f"  N={N}: {S:.12f}  (Sobolev formula {sobolev_constant(N):.12f})")

print("\nShifted best constant at s=0 follows (1 - lambda/L)^((N-1)/N):")
N = 4
for frac in (0.1, 0.5, 0.9):
    lam = frac * hardy_constant(N)
    ratio = best_constant(N, lam, 0.0) / best_constant(N, 0.0, 0.0)
    print(f"  lambda={lam:.2f}: ratio {ratio:.12f} "
          f"vs {(1 - frac) ** ((N - 1) / N):.12f}")

print("\nThe constant decreases in both lambda and s; s -> 2 limit is L:")
for s in (1.0, 1.5, 1.9, 1.99, 1.999):
    print(f"  S(0, {s:5.3f}) = {best_constant(4, 0.0, s):.6f}")

print("\nLevel-separation window (orientation i) in the (lambda1, lambda2) plane:")
print("  lambda1\\lambda2", "  ".join(f"{l2:.2f}" for l2 in np.arange(0.1, 0.95, 0.2)))
for l1 in np.arange(0.1, 0.95, 0.2):
    row = []
    for l2 in np.arange(0.1, 0.95, 0.2):
        pr = ProblemParams(4, 1.0, l1, l2, 1.4, 1.4, 0.1)
        row.append(" i " if separability_check(pr)["cond_i"] else " . ")
    print(f"  {l1:.2f}           ", "  ".join(row))

print("\nEnergy levels quantizing the compactness thresholds:")
for lam in (0.1, 0.3, 0.5, 0.7, 0.9):
    print(f"  E({lam:.1f}, s=1) = {critical_level(4, lam, 1.0):.6f}")
