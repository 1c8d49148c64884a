"""Extremal profiles on the reference grid.

Samples the explicit minimizers, confirms the identity between their
shifted norm, their critical integral and the best constant, and shows the
scale invariance of the one-component energy level.
"""

import numpy as np

from hsvar import (ProblemParams, RadialFunction, StatePair, best_constant,
                   critical_exponent, critical_level, energy, exact_solution,
                   gradient_dual_norm, lambda_norm_sq, nehari_residual,
                   reference_grid, weighted_lp)

grid = reference_grid(4)
params = ProblemParams(4, 1.0, 0.3, 0.5, 1.4, 1.4, 0.0)
lam, s = 0.3, 1.0
p = critical_exponent(4, s)
K = best_constant(4, lam, s) ** ((4 - s) / (2 - s))

z = RadialFunction(grid, exact_solution(4, lam, s, 1.0, grid.r))
print(f"profile values: z(1e-3)={np.interp(1e-3, grid.r, z.values):.4f}, "
      f"z(1)={np.interp(1.0, grid.r, z.values):.4f}, "
      f"z(1e3)={np.interp(1e3, grid.r, z.values):.3e}")

print(f"\nshifted norm    : {lambda_norm_sq(z, lam):.8f}")
print(f"critical integral: {weighted_lp(grid, z, p, s):.8f}")
print(f"S^((N-s)/(2-s))  : {K:.8f}")

pair = StatePair(z, RadialFunction.zero(grid))
print(f"\nconstraint residual at the profile: {nehari_residual(pair, params):.3e}")
print(f"gradient dual norm (relative): {gradient_dual_norm(pair, params)[1]:.3e}")

print("\none-component energy level is scale invariant:")
for mu in (0.1, 1.0, 10.0):
    zmu = RadialFunction(grid, exact_solution(4, lam, s, mu, grid.r))
    e = energy(StatePair(zmu, RadialFunction.zero(grid)), params).total
    print(f"  mu={mu:5.1f}: J = {e:.8f}   (closed form {critical_level(4, lam, s):.8f})")

print("\nenergy along the scaling ray t*z (max at t=1 on the ray):")
for t in (0.6, 0.8, 1.0, 1.2, 1.4):
    e = energy(pair.scaled(t), params).total
    print(f"  t={t:.1f}: J = {e:.6f}")
