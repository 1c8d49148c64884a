"""The coupled energy functional, its truncated variant, and gradients.

For a pair ``(u, v)`` the functional is

    J(u, v) = 1/2 ||u||_{lam1}^2 + 1/2 ||v||_{lam2}^2
              - 1/p (int |u|^p/r^s + int |v|^p/r^s)
              - nu int h |u|^alpha |v|^beta / r^s,

with ``||u||_lam^2 = int |grad u|^2 - lam int u^2/r^2`` and ``p`` the
critical exponent.  The truncated variant replaces every nonlinear
occurrence of ``u, v`` by the positive parts, which penalizes negative
excursions purely quadratically and drives descent iterates nonnegative.

The constraint functional is the radial derivative of ``J`` along the
scaling direction:

    Psi(u, v) = ||(u,v)||^2 - int |u|^p/r^s - int |v|^p/r^s
                - nu (alpha+beta) int h |u|^alpha |v|^beta / r^s,

whose zero set (minus the origin) is the natural constraint: constrained
critical points are free critical points.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import GridMismatchError, InvalidParameterError, PreconditionError
from .grid import RadialFunction, RadialGrid, gradient_seminorm, weighted_lp
from .operators import PairMetric, kinetic_gradient
from .params import ProblemParams


@dataclass(frozen=True)
class StatePair:
    """A couple (u, v) of radial profiles on a shared grid."""

    u: RadialFunction
    v: RadialFunction

    def __post_init__(self):
        if not self.u.grid.compatible(self.v.grid):
            raise GridMismatchError("components of a StatePair must share a grid")

    @property
    def grid(self) -> RadialGrid:
        return self.u.grid

    @classmethod
    def zero(cls, grid: RadialGrid) -> "StatePair":
        return cls(RadialFunction.zero(grid), RadialFunction.zero(grid))

    def scaled(self, factor: float) -> "StatePair":
        return StatePair(self.u.scaled(factor), self.v.scaled(factor))

    def is_zero(self) -> bool:
        return not (np.any(self.u.values) or np.any(self.v.values))


@dataclass(frozen=True)
class EnergyBreakdown:
    """Every integral term of the functional plus the total."""

    kinetic_u: float
    kinetic_v: float
    hardy_u: float
    hardy_v: float
    hs_u: float
    hs_v: float
    coupling: float
    total: float

    def to_dict(self) -> dict:
        return {k: getattr(self, k) for k in
                ("kinetic_u", "kinetic_v", "hardy_u", "hardy_v",
                 "hs_u", "hs_v", "coupling", "total")}


def lambda_norm_sq(u: RadialFunction, lam: float) -> float:
    """Squared shifted norm  int |grad u|^2 - lam int u^2/r^2."""
    grid = u.grid
    if not (0.0 <= lam < (grid.N - 2) ** 2 / 4.0):
        raise InvalidParameterError(f"lambda outside [0, Hardy threshold): {lam}")
    return gradient_seminorm(grid, u) - lam * weighted_lp(grid, u, 2.0, 2.0)


def pair_norm_sq(pair: StatePair, params: ProblemParams) -> float:
    """Squared product-space norm ||u||_{lam1}^2 + ||v||_{lam2}^2."""
    return (lambda_norm_sq(pair.u, params.lambda1)
            + lambda_norm_sq(pair.v, params.lambda2))


def _terms(pair: StatePair, params: ProblemParams, positive: bool):
    """All integral terms; `positive` selects truncated (u+, v+) powers."""
    grid = pair.grid
    u, v = pair.u.values, pair.v.values
    if positive:
        au, av = np.maximum(u, 0.0), np.maximum(v, 0.0)
    else:
        au, av = np.abs(u), np.abs(v)
    p, s = params.crit_exp, params.s
    rs = grid.r ** s
    hs_u = float(np.dot(grid.w, au ** p / rs))
    hs_v = float(np.dot(grid.w, av ** p / rs))
    hvals = params.h_profile(grid.r)
    coupling = float(np.dot(grid.w, hvals * au ** params.alpha * av ** params.beta / rs))
    return hs_u, hs_v, coupling


def energy(pair: StatePair, params: ProblemParams) -> EnergyBreakdown:
    """Evaluate the functional term by term."""
    grid = pair.grid
    kin_u = gradient_seminorm(grid, pair.u)
    kin_v = gradient_seminorm(grid, pair.v)
    har_u = weighted_lp(grid, pair.u, 2.0, 2.0)
    har_v = weighted_lp(grid, pair.v, 2.0, 2.0)
    hs_u, hs_v, coupling = _terms(pair, params, positive=False)
    p = params.crit_exp
    total = (0.5 * (kin_u - params.lambda1 * har_u)
             + 0.5 * (kin_v - params.lambda2 * har_v)
             - (hs_u + hs_v) / p - params.nu * coupling)
    return EnergyBreakdown(kin_u, kin_v, har_u, har_v, hs_u, hs_v, coupling, total)


def energy_positive(pair: StatePair, params: ProblemParams) -> float:
    """Truncated functional: positive parts in all nonlinear terms.

    Coincides with ``energy(...).total`` on nonnegative pairs; for states
    with negative excursions only the quadratic norm sees them.
    """
    hs_u, hs_v, coupling = _terms(pair, params, positive=True)
    return (0.5 * pair_norm_sq(pair, params)
            - (hs_u + hs_v) / params.crit_exp - params.nu * coupling)


def nehari_residual(pair: StatePair, params: ProblemParams, positive: bool = False) -> float:
    """Constraint functional Psi; zero on the natural constraint set."""
    hs_u, hs_v, coupling = _terms(pair, params, positive)
    return (pair_norm_sq(pair, params) - hs_u - hs_v
            - params.nu * (params.alpha + params.beta) * coupling)


def _signed_power(x: np.ndarray, q: float) -> np.ndarray:
    # |x|^(q-1) sign(x); continuous at 0 for q > 1 and exactly 0 there.
    return np.sign(x) * np.abs(x) ** (q - 1)


def gradient_coefficients(pair: StatePair, params: ProblemParams,
                          positive: bool = False):
    """Coefficient-space first variation (dJ/du_i, dJ/dv_i).

    Boundary slots are zeroed: the truncation radii are Dirichlet collars,
    so admissible variations vanish at the first and last node.  The dot
    product of the returned arrays with (phi, psi) node values equals the
    directional derivative of the energy along (phi, psi).
    """
    grid = pair.grid
    u, v = pair.u.values, pair.v.values
    p, s, alpha, beta, nu = (params.crit_exp, params.s,
                             params.alpha, params.beta, params.nu)
    rs = grid.r ** s
    hvals = params.h_profile(grid.r)
    if positive:
        au, av = np.maximum(u, 0.0), np.maximum(v, 0.0)
        fu, fv = au ** (p - 1), av ** (p - 1)
        cu = au ** (alpha - 1) * av ** beta
        cv = au ** alpha * av ** (beta - 1)
    else:
        fu, fv = _signed_power(u, p), _signed_power(v, p)
        cu = _signed_power(u, alpha) * np.abs(v) ** beta
        cv = np.abs(u) ** alpha * _signed_power(v, beta)
    gu = (kinetic_gradient(grid, u) - params.lambda1 * grid.w * u / grid.r ** 2
          - grid.w * fu / rs - nu * alpha * grid.w * hvals * cu / rs)
    gv = (kinetic_gradient(grid, v) - params.lambda2 * grid.w * v / grid.r ** 2
          - grid.w * fv / rs - nu * beta * grid.w * hvals * cv / rs)
    gu[0] = gu[-1] = 0.0
    gv[0] = gv[-1] = 0.0
    return gu, gv


def gradient(pair: StatePair, params: ProblemParams) -> StatePair:
    """Weak-form gradient as a pair of node functions.

    The quadrature pairing ``sum w * g * phi`` of the result against any
    variation (phi, psi) vanishing at the boundary nodes reproduces the
    directional derivative of :func:`energy` exactly.
    """
    gu, gv = gradient_coefficients(pair, params)
    grid = pair.grid
    vals_u = np.zeros(grid.n)
    vals_v = np.zeros(grid.n)
    vals_u[1:-1] = gu[1:-1] / grid.w[1:-1]
    vals_v[1:-1] = gv[1:-1] / grid.w[1:-1]
    return StatePair(RadialFunction(grid, vals_u), RadialFunction(grid, vals_v))


def gradient_dual_norm(pair: StatePair, params: ProblemParams,
                       metric: PairMetric | None = None,
                       positive: bool = False) -> tuple[float, float]:
    """Gradient norm in the dual of the energy space.

    Returns ``(absolute, relative)`` where the relative value divides by the
    pair norm.  This is the natural residual measure: the volume-L2 norm of
    the strong residual diverges near the origin for singular profiles.
    """
    if metric is None:
        metric = PairMetric(pair.grid, params.lambda1, params.lambda2)
    gu, gv = gradient_coefficients(pair, params, positive=positive)
    dual = metric.dual_norm(gu, gv)
    denom = np.sqrt(max(pair_norm_sq(pair, params), 1e-300))
    return dual, dual / denom


def second_variation_diag(pair: StatePair, params: ProblemParams,
                          tol: float = 1e-6) -> float:
    """Second variation along the state's own direction, on the constraint.

    Equals ``(2 - a - b) ||(u,v)||^2 + (a + b - p) (critical integrals)``
    with ``a + b`` the coupling exponent; strictly negative on the
    constraint set, which makes it a natural constraint.
    """
    nsq = pair_norm_sq(pair, params)
    res = nehari_residual(pair, params)
    if abs(res) > tol * max(nsq, 1e-300):
        raise PreconditionError(
            f"pair is off the constraint set: |Psi|/||.||^2 = {abs(res) / nsq:.3e}")
    hs_u, hs_v, _ = _terms(pair, params, positive=False)
    q = params.alpha + params.beta
    return (2.0 - q) * nsq + (q - params.crit_exp) * (hs_u + hs_v)
