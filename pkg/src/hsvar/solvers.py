"""Constrained solvers: ground-state descent, min-max path, semitrivial probes.

Ground states are computed by projected descent on the constraint set of the
truncated functional: the gradient is preconditioned by the factorized
interior operator of each component's quadratic form (a Sobolev-gradient
step), the step is backtracked until an Armijo decrease of the projected
energy holds, and every accepted iterate is reprojected.  Negative parts
carry only quadratic energy under the truncated functional, so they decay
along the flow and the computed profiles come out nonnegative.

Bound states between the two one-component solutions are bracketed by a
discrete min-max path: nodes of the explicit interpolating path are
rescaled onto the truncated constraint set, and deformation sweeps
redistribute the chain, relax the neighbors of the maximum node
transversally, and let the maximum node climb toward the barrier.  Every
sweep's chain is an admissible discrete path, so the smallest chain maximum
seen is a non-increasing estimate of the min-max level.

The variational character of the one-component couples is probed
numerically: directed two-parameter rescalings and random perturbations are
projected back to the constraint set and their energies compared with the
closed-form level, reading the sign of the difference at the smallest
amplitude that rises above the noise floor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .closed_forms import critical_level, exact_solution, separability_check
from .energy import (StatePair, _terms, energy, energy_positive,
                     gradient_coefficients, lambda_norm_sq, nehari_residual,
                     pair_norm_sq)
from .errors import (DegenerateInputError, DegeneratePathError, HsvarError,
                     InvalidParameterError, PreconditionError)
from .grid import RadialFunction, RadialGrid, reference_grid
from .nehari import project, project_decoupled
from .operators import PairMetric
from .params import ProblemParams

RADIAL_NOTE = "radial ansatz: all states are radial profiles on a truncated window"


# ---------------------------------------------------------------------------
# options and report types
# ---------------------------------------------------------------------------

@dataclass
class DescentOptions:
    tol_grad: float = 1e-5          # relative dual-norm gradient target
    tol_nehari: float = 1e-12       # scale-free projection residual
    max_iter: int = 8000
    step0: float = 1.0
    step_max: float = 2.0
    armijo: float = 1e-4
    max_backtracks: int = 60
    stall_window: int = 80          # iterations without decrease before stopping


@dataclass
class PathOptions:
    n_path_nodes: int = 32          # number of segments; K+1 states
    max_sweeps: int = 40
    descent: DescentOptions = field(default_factory=DescentOptions)
    crest_grad_tol: float = 1e-5    # stop once the max node is near-critical


@dataclass
class ProbeOptions:
    amplitudes: tuple = tuple(10.0 ** e for e in
                              (-1.0, -1.5, -2.0, -2.5, -3.0, -3.5, -4.0))
    extend_to: float = 1e-7         # adaptive ladder floor when unresolved
    n_directions: int = 4
    direction_scale: float = 0.1    # probe norm as fraction of the host norm
    noise_floor: float = 1e-12      # relative to the base level
    seed: int = 0


@dataclass
class SolverReport:
    kind: str
    params: dict
    energy: float
    gradient_norm: float
    nehari_residual: float
    iterations: int
    converged: bool
    level_diagnostics: dict
    profiles: StatePair
    classification: str | None = None
    trace: list = field(default_factory=list)
    extra: dict = field(default_factory=dict)
    note: str = RADIAL_NOTE

    def to_dict(self) -> dict:
        d = {
            "kind": self.kind,
            "params": self.params,
            "energy": self.energy,
            "gradient_norm": self.gradient_norm,
            "nehari_residual": self.nehari_residual,
            "iterations": self.iterations,
            "converged": self.converged,
            "level_diagnostics": self.level_diagnostics,
            "classification": self.classification,
            "trace": list(self.trace),
            "extra": self.extra,
            "note": self.note,
        }
        return d


# ---------------------------------------------------------------------------
# shared helpers
# ---------------------------------------------------------------------------

def compact_bump(t: np.ndarray, center: float, halfwidth: float,
                 amplitude: float) -> np.ndarray:
    """Smooth bump exp(1 - 1/(1 - xi^2)) supported on |xi| < 1, xi=(t-c)/hw."""
    xi = (t - center) / halfwidth
    out = np.zeros_like(t)
    inside = np.abs(xi) < 1.0
    out[inside] = amplitude * np.exp(1.0 - 1.0 / (1.0 - xi[inside] ** 2))
    return out


def random_bump(grid: RadialGrid, rng: np.random.Generator,
                signed: bool = False) -> RadialFunction:
    """Random compactly supported bump, kept away from both truncation radii."""
    lo = max(grid.t[0] + 0.05 * (grid.t[-1] - grid.t[0]), math.log(0.02))
    hi = min(grid.t[-1] - 0.05 * (grid.t[-1] - grid.t[0]), math.log(50.0))
    center = rng.uniform(lo, hi)
    halfwidth = rng.uniform(1.0, 2.5)
    halfwidth = min(halfwidth, center - grid.t[0] - 0.5, grid.t[-1] - center - 0.5)
    amp = rng.choice([-1.0, 1.0]) if signed else 1.0
    return RadialFunction(grid, compact_bump(grid.t, center, halfwidth, amp))


def extremal_pair(params: ProblemParams, grid: RadialGrid,
                  which: str, mu: float = 1.0) -> StatePair:
    """Discrete one-component solution couple, rescaled onto the constraint.

    ``which="first"`` gives (z1, 0); ``which="second"`` gives (0, z2).  The
    sampled closed form is projected onto the discrete decoupled constraint
    so downstream identities hold at quadrature accuracy.
    """
    if which not in ("first", "second"):
        raise InvalidParameterError(f"which must be 'first' or 'second', got {which!r}")
    lam = params.lambda1 if which == "first" else params.lambda2
    z = RadialFunction(grid, exact_solution(params.N, lam, params.s, mu, grid.r))
    z = project_decoupled(z, lam, params.s).projected
    zero = RadialFunction.zero(grid)
    return StatePair(z, zero) if which == "first" else StatePair(zero, z)


def _levels(params: ProblemParams) -> dict:
    E1 = critical_level(params.N, params.lambda1, params.s)
    E2 = critical_level(params.N, params.lambda2, params.s)
    return {"level_1": E1, "level_2": E2,
            "min_level": min(E1, E2), "sum_levels": E1 + E2}


# ---------------------------------------------------------------------------
# ground state
# ---------------------------------------------------------------------------

def _descend(params: ProblemParams, pair: StatePair, metric: PairMetric,
             opts: DescentOptions, frozen_mask=None):
    """Projected preconditioned descent on the truncated constraint set.

    Returns (pair, energy, iterations, rel_grad, trace, converged).
    ``frozen_mask`` optionally pins one component (used by path deformation
    to keep endpoint structure; None updates both).
    """
    proj = project(pair, params, tol=opts.tol_nehari, positive=True)
    pair = proj.projected
    E = energy_positive(pair, params)
    trace = [E]
    step = opts.step0
    grid = pair.grid
    rel_g = math.inf
    last_drop = 0
    for it in range(opts.max_iter):
        gu, gv = gradient_coefficients(pair, params, positive=True)
        du, dv, slope = metric.direction(gu, gv)
        nsq = pair_norm_sq(pair, params)
        rel_g = math.sqrt(slope) / math.sqrt(max(nsq, 1e-300))
        if rel_g <= opts.tol_grad:
            return pair, E, it, rel_g, trace, True
        if it - last_drop > opts.stall_window:
            return pair, E, it, rel_g, trace, False
        accepted = False
        st = step
        for _ in range(opts.max_backtracks):
            cand = StatePair(
                RadialFunction(grid, pair.u.values - st * du),
                RadialFunction(grid, pair.v.values - st * dv))
            try:
                cand = project(cand, params, tol=opts.tol_nehari,
                               positive=True).projected
            except HsvarError:
                st *= 0.5
                continue
            E_cand = energy_positive(cand, params)
            if E_cand <= E - opts.armijo * st * slope:
                accepted = True
                break
            st *= 0.5
        if not accepted:
            return pair, E, it, rel_g, trace, False
        if E - E_cand > 1e-15 * (abs(E) + 1.0):
            last_drop = it
        pair, E = cand, E_cand
        trace.append(E)
        step = min(st * 1.5, opts.step_max)
    return pair, E, opts.max_iter, rel_g, trace, rel_g <= opts.tol_grad


def ground_state(params: ProblemParams, init: StatePair,
                 opts: DescentOptions | None = None) -> SolverReport:
    """Minimize the truncated functional on its constraint set.

    Reports whether the final level lies below the smaller one-component
    level (the compactness threshold of the decoupled regime) and whether
    both components carry critical mass.
    """
    opts = opts or DescentOptions()
    if init.is_zero():
        raise DegenerateInputError("ground_state requires a nonzero initial pair")
    metric = PairMetric(init.grid, params.lambda1, params.lambda2)
    pair, E, iters, rel_g, trace, converged = _descend(params, init, metric, opts)

    res = nehari_residual(pair, params, positive=True)
    nsq = pair_norm_sq(pair, params)
    hs_u, hs_v, _ = _terms(pair, params, positive=True)
    levels = _levels(params)
    levels["below_min_semitrivial"] = bool(E < levels["min_level"])
    levels["crit_integral_u"] = hs_u
    levels["crit_integral_v"] = hs_v
    coupled = hs_u > 1e-6 and hs_v > 1e-6
    classification = "coupled" if coupled else "semitrivial_like"
    return SolverReport(
        kind="ground_state", params=params.to_dict(), energy=E,
        gradient_norm=rel_g, nehari_residual=abs(res) / max(nsq, 1e-300),
        iterations=iters, converged=converged, level_diagnostics=levels,
        profiles=pair, classification=classification,
        trace=trace[-200:],
        extra={"monotone": bool(all(b <= a + 1e-12 * (abs(a) + 1.0)
                                    for a, b in zip(trace, trace[1:])))})


def escalate_nu(params: ProblemParams, grid: RadialGrid,
                nu_start: float = 1.0, max_doublings: int = 60) -> float:
    """Double nu until the coupling term dominates half the pair norm.

    The size threshold for coupling dominance is evaluated on the projected
    couple of the two one-component profiles.
    """
    z1 = extremal_pair(params, grid, "first").u
    z2 = extremal_pair(params, grid, "second").v
    couple = StatePair(z1, z2)
    nu = nu_start
    for _ in range(max_doublings):
        trial = ProblemParams(params.N, params.s, params.lambda1, params.lambda2,
                              params.alpha, params.beta, nu, params.h_profile)
        proj = project(couple, trial, positive=True).projected
        nsq = pair_norm_sq(proj, trial)
        _, _, coupling = _terms(proj, trial, positive=True)
        if trial.nu * (trial.alpha + trial.beta) * coupling > 0.5 * nsq:
            return nu
        nu *= 2.0
    return nu


# ---------------------------------------------------------------------------
# min-max path
# ---------------------------------------------------------------------------

@dataclass
class PathState:
    """Discrete path on the truncated constraint set with pinned endpoints."""

    nodes: list            # list[StatePair]
    energies: np.ndarray

    @property
    def argmax(self) -> int:
        return int(np.argmax(self.energies))

    @property
    def max_energy(self) -> float:
        return float(self.energies.max())


def _initial_path(params: ProblemParams, grid: RadialGrid, K: int) -> PathState:
    """Explicit interpolating path ((1-t)^(1/2) z1, t^(1/2) z2), rescaled."""
    z1 = extremal_pair(params, grid, "first").u
    z2 = extremal_pair(params, grid, "second").v
    zero = RadialFunction.zero(grid)
    nodes, energies = [], []
    for k in range(K + 1):
        tk = k / K
        u = z1.scaled(math.sqrt(1.0 - tk)) if tk < 1 else zero
        v = z2.scaled(math.sqrt(tk)) if tk > 0 else zero
        pair = StatePair(u, v)
        if 0 < k < K:
            pair = project(pair, params, positive=True).projected
        nodes.append(pair)
        energies.append(energy_positive(pair, params))
    return PathState(nodes=nodes, energies=np.asarray(energies))


def interpolation_bound(params: ProblemParams, grid: RadialGrid,
                        samples: int = 401) -> tuple[float, np.ndarray]:
    """Upper envelope g(t) of the interpolating path and its maximum g(1/2).

    g(t) = (2-s)/(2(N-s)) * [((1-t) S1 + t S2) / ((1-t)^(p/2) S1 + t^(p/2) S2)]^(2/(p-2))
           * ((1-t) S1 + t S2),

    where S1, S2 are the critical integrals of the two rescaled profiles.
    Its maximum sits at t = 1/2 and equals the sum of the two levels.
    """
    from .grid import weighted_lp
    p, s, N = params.crit_exp, params.s, params.N
    z1 = extremal_pair(params, grid, "first").u
    z2 = extremal_pair(params, grid, "second").v
    S1 = weighted_lp(grid, z1, p, s)
    S2 = weighted_lp(grid, z2, p, s)
    ts = np.linspace(0.0, 1.0, samples)[1:-1]
    lin = (1 - ts) * S1 + ts * S2
    curv = (1 - ts) ** (p / 2) * S1 + ts ** (p / 2) * S2
    g = (2 - s) / (2 * (N - s)) * (lin / curv) ** (2 / (p - 2)) * lin
    return float(g.max()), g


def _pair_grad_norm(pair: StatePair, params, metric) -> float:
    """Relative dual-norm gradient of the truncated functional at a pair."""
    gu, gv = gradient_coefficients(pair, params, positive=True)
    nsq = pair_norm_sq(pair, params)
    _, _, slope = metric.direction(gu, gv)
    return math.sqrt(max(slope, 0.0)) / math.sqrt(max(nsq, 1e-300))


def _redistribute(nodes, energies, params, grid):
    """Equal-arclength resampling of a sub-chain; endpoints kept exact."""
    m = len(nodes) - 1
    if m < 2:
        return list(nodes), list(energies)
    us = np.stack([n.u.values for n in nodes])
    vs = np.stack([n.v.values for n in nodes])
    seg = np.sqrt(((np.diff(us, axis=0) ** 2 + np.diff(vs, axis=0) ** 2)
                   * grid.w).sum(axis=1))
    arc = np.concatenate([[0.0], np.cumsum(seg)])
    if arc[-1] <= 0:
        return list(nodes), list(energies)
    out_nodes, out_energies = [nodes[0]], [energies[0]]
    for s_t in np.linspace(0.0, arc[-1], m + 1)[1:-1]:
        j = min(int(np.searchsorted(arc, s_t, side="right")) - 1, m - 1)
        theta = (s_t - arc[j]) / max(arc[j + 1] - arc[j], 1e-300)
        u = (1 - theta) * us[j] + theta * us[j + 1]
        v = (1 - theta) * vs[j] + theta * vs[j + 1]
        cand = StatePair(RadialFunction(grid, u), RadialFunction(grid, v))
        cand = project(cand, params, positive=True).projected
        out_nodes.append(cand)
        out_energies.append(energy_positive(cand, params))
    out_nodes.append(nodes[-1])
    out_energies.append(energies[-1])
    return out_nodes, out_energies


def _reparametrize(path: PathState, params, grid, anchor: int) -> PathState:
    """Equal-arclength resampling on each side of the anchored crest node.

    Keeps the chain sampled near the barrier without discarding the climbing
    node's progress; without redistribution, downhill moves let neighbor
    spacing grow and the discrete maximum dodge the barrier.
    """
    ln, le = _redistribute(path.nodes[:anchor + 1], path.energies[:anchor + 1],
                           params, grid)
    rn, re_ = _redistribute(path.nodes[anchor:], path.energies[anchor:],
                            params, grid)
    return PathState(nodes=ln + rn[1:], energies=np.asarray(le + re_[1:]))


def mountain_pass(params: ProblemParams, grid: RadialGrid | None = None,
                  opts: PathOptions | None = None) -> SolverReport:
    """Estimate the min-max level between the two one-component couples.

    Requires the level-separation window in one orientation together with
    the matching exponent bound (``alpha >= 2`` for orientation (i),
    ``beta >= 2`` for orientation (ii)).  Each sweep redistributes the chain
    to equal arclength, then applies descent steps with reprojection to the
    current maximum node and its two neighbors; the along-path component of
    each move is removed so nodes relax transversally instead of sliding off
    the barrier.  Every sweep's chain is an admissible discrete path, so the
    reported estimate is the best (smallest) chain maximum seen, which is
    non-increasing across sweeps by construction.
    """
    opts = opts or PathOptions()
    grid = grid or reference_grid(params.N)
    sep = separability_check(params)
    orient_i = sep["cond_i"] and params.alpha >= 2.0
    orient_ii = sep["cond_ii"] and params.beta >= 2.0
    if not (orient_i or orient_ii):
        raise PreconditionError(
            "min-max geometry requires the separation window plus the "
            "matching exponent >= 2 in the same orientation")

    K = opts.n_path_nodes
    path = _initial_path(params, grid, K)
    initial_max = path.max_energy
    g_max, _ = interpolation_bound(params, grid)

    metric = PairMetric(grid, params.lambda1, params.lambda2)
    dop = opts.descent
    best_max = path.max_energy
    best_crest = path.nodes[path.argmax]
    c_trace = [best_max]
    gnorm_trace = []
    sweeps_done = 0
    for sweep in range(opts.max_sweeps):
        if sweep > 0:
            path = _reparametrize(path, params, grid, path.argmax)
        k_max = path.argmax
        if k_max in (0, K):
            raise DegeneratePathError("path maximum collapsed onto an endpoint")
        gnorm_trace.append(_pair_grad_norm(path.nodes[k_max], params, metric))
        if gnorm_trace[-1] <= opts.crest_grad_tol:
            break

        improved = False
        for k in (k_max - 1, k_max, k_max + 1):
            if k in (0, K):
                continue
            node = path.nodes[k]
            E_node = path.energies[k]
            gu, gv = gradient_coefficients(node, params, positive=True)
            du, dv, slope = metric.direction(gu, gv)
            tau_u = path.nodes[k + 1].u.values - path.nodes[k - 1].u.values
            tau_v = path.nodes[k + 1].v.values - path.nodes[k - 1].v.values
            tmt = (float(tau_u[1:-1] @ metric.op1.apply(tau_u[1:-1]))
                   + float(tau_v[1:-1] @ metric.op2.apply(tau_v[1:-1])))
            coef = 0.0
            if tmt > 0:
                coef = (float(gu[1:-1] @ tau_u[1:-1])
                        + float(gv[1:-1] @ tau_v[1:-1])) / tmt
            du = du.copy()
            dv = dv.copy()
            climbing = k == k_max
            # the maximum node climbs: the along-path gradient component is
            # reversed so the node ascends the path direction while relaxing
            # transversally; neighbors relax transversally only
            factor = 2.0 if climbing else 1.0
            du[1:-1] -= factor * coef * tau_u[1:-1]
            dv[1:-1] -= factor * coef * tau_v[1:-1]
            if not climbing:
                slope = max(float(gu[1:-1] @ du[1:-1])
                            + float(gv[1:-1] @ dv[1:-1]), 0.0)
            st = dop.step0
            for _ in range(dop.max_backtracks):
                cand = StatePair(
                    RadialFunction(grid, node.u.values - st * du),
                    RadialFunction(grid, node.v.values - st * dv))
                try:
                    cand = project(cand, params, tol=dop.tol_nehari,
                                   positive=True).projected
                except HsvarError:
                    st *= 0.5
                    continue
                if climbing:
                    # acceptance for the climbing node: its gradient shrinks
                    if _pair_grad_norm(cand, params, metric) < gnorm_trace[-1]:
                        path.nodes[k] = cand
                        path.energies[k] = energy_positive(cand, params)
                        improved = True
                        break
                else:
                    E_cand = energy_positive(cand, params)
                    if E_cand <= E_node - dop.armijo * st * slope:
                        path.nodes[k] = cand
                        path.energies[k] = E_cand
                        improved = True
                        break
                st *= 0.5
        sweeps_done = sweep + 1
        if path.max_energy < best_max:
            best_max = path.max_energy
            best_crest = path.nodes[path.argmax]
        c_trace.append(best_max)
        if not improved:
            break

    crest = best_crest
    res = nehari_residual(crest, params, positive=True)
    nsq = pair_norm_sq(crest, params)
    levels = _levels(params)
    levels["endpoint_energies"] = [float(path.energies[0]), float(path.energies[-1])]
    levels["initial_path_max"] = initial_max
    levels["interpolation_bound_max"] = g_max
    return SolverReport(
        kind="mountain_pass", params=params.to_dict(),
        energy=best_max,
        gradient_norm=gnorm_trace[-1] if gnorm_trace else math.inf,
        nehari_residual=abs(res) / max(nsq, 1e-300),
        iterations=sweeps_done,
        converged=bool(gnorm_trace and gnorm_trace[-1] <= gnorm_trace[0]),
        level_diagnostics=levels, profiles=crest,
        trace=c_trace,
        extra={"gradient_norm_trace": gnorm_trace,
               "crest_index": path.argmax,
               "orientation": "i" if orient_i else "ii"})


# ---------------------------------------------------------------------------
# semitrivial probes
# ---------------------------------------------------------------------------

def _resolved_sign(amplitudes, deltas, floor):
    """Sign of delta at the smallest amplitude above the noise floor."""
    for t, d in sorted(zip(amplitudes, deltas)):
        if abs(d) > floor:
            return 1 if d > 0 else -1
    return 0


def semitrivial_probe(params: ProblemParams, which: str,
                      grid: RadialGrid | None = None,
                      opts: ProbeOptions | None = None) -> SolverReport:
    """Classify a one-component couple as local minimum or saddle.

    Two probe families run around the couple on the constraint set:

    (a) random perturbed couples (t phi, z + t psi), reprojected;
    (b) directed rescaled paths: for each direction phi, the pair
        (t phi, z) is projected, which realizes the two-parameter family
        whose scale factor solves the constraint equation.

    The energy difference against the one-component level is read at the
    smallest amplitude that clears the noise floor.  If the default
    amplitude ladder leaves every direction unresolved it is extended
    adaptively; if still unresolved the classification is `inconclusive`
    rather than a guessed label.
    """
    opts = opts or ProbeOptions()
    grid = grid or reference_grid(params.N)
    if which not in ("first", "second"):
        raise InvalidParameterError(f"which must be 'first' or 'second', got {which!r}")

    # orient so the host component is v and the foreign component is u
    swapped = which == "first"
    work = params.swapped() if swapped else params

    host_lam = work.lambda2
    z = RadialFunction(grid, exact_solution(work.N, host_lam, work.s, 1.0, grid.r))
    z = project_decoupled(z, host_lam, work.s).projected
    zero = RadialFunction.zero(grid)
    base_pair = StatePair(zero, z)
    base = energy(base_pair, work).total
    floor = opts.noise_floor * (1.0 + abs(base))
    host_nsq = pair_norm_sq(base_pair, work)

    rng = np.random.default_rng(opts.seed)

    def scaled_direction():
        phi = random_bump(grid, rng)
        nphi = math.sqrt(lambda_norm_sq(phi, work.lambda1))
        return phi.scaled(opts.direction_scale * math.sqrt(host_nsq) / nphi)

    evidence = []     # (family, direction index, sign)
    deltas_log = {}
    ladder = list(opts.amplitudes)

    def run_directed(phi, amps):
        ds = []
        for t in amps:
            cand = StatePair(phi.scaled(t), z)
            proj = project(cand, work, positive=False).projected
            ds.append(energy(proj, work).total - base)
        return ds

    for k in range(opts.n_directions):
        phi = scaled_direction()
        amps = list(ladder)
        ds = run_directed(phi, amps)
        sign = _resolved_sign(amps, ds, floor)
        # extend the ladder adaptively when the leading order is unresolved
        t_next = amps[-1] / math.sqrt(10.0)
        while sign == 0 and t_next >= opts.extend_to:
            amps.append(t_next)
            ds.extend(run_directed(phi, [t_next]))
            sign = _resolved_sign(amps, ds, floor)
            t_next /= math.sqrt(10.0)
        evidence.append(("directed", k, sign))
        deltas_log[f"directed_{k}"] = ds

    for k in range(opts.n_directions):
        phi = scaled_direction()
        psi = scaled_direction()
        ds = []
        for t in ladder:
            cand = StatePair(phi.scaled(t),
                             RadialFunction(grid, z.values + t * psi.values))
            proj = project(cand, work, positive=False).projected
            ds.append(energy(proj, work).total - base)
        sign = _resolved_sign(ladder, ds, floor)
        evidence.append(("perturbed", k, sign))
        deltas_log[f"perturbed_{k}"] = ds

    signs = [sgn for _, _, sgn in evidence]
    if any(sgn < 0 for sgn in signs):
        classification = "saddle"
    elif all(sgn > 0 for sgn in signs):
        classification = "local_min"
    else:
        classification = "inconclusive"

    levels = _levels(params)
    levels["base_level"] = base
    return SolverReport(
        kind="semitrivial_probe", params=params.to_dict(), energy=base,
        gradient_norm=0.0, nehari_residual=0.0,
        iterations=len(evidence), converged=classification != "inconclusive",
        level_diagnostics=levels,
        profiles=StatePair(z, zero) if swapped else StatePair(zero, z),
        classification=classification,
        extra={"which": which,
               "evidence": [{"family": f, "direction": i, "sign": sgn}
                            for f, i, sgn in evidence],
               "deltas": {k: [float(x) for x in v] for k, v in deltas_log.items()}})


def classification_flip(params_at, nu_lo: float, nu_hi: float, which: str,
                        grid: RadialGrid | None = None,
                        opts: ProbeOptions | None = None,
                        bisections: int = 12) -> dict:
    """Bisect over nu for a change of probe classification.

    ``params_at(nu)`` builds the parameter tuple; the endpoints must
    classify as local_min (low) and saddle (high).  Returns the bracketing
    interval and the label at each tested nu.
    """
    labels = {}

    def label(nu):
        rep = semitrivial_probe(params_at(nu), which, grid=grid, opts=opts)
        labels[nu] = rep.classification
        return rep.classification

    lab_lo, lab_hi = label(nu_lo), label(nu_hi)
    if lab_lo != "local_min" or lab_hi != "saddle":
        return {"bracket": (nu_lo, nu_hi), "labels": labels, "flip_found": False}
    for _ in range(bisections):
        mid = math.sqrt(nu_lo * nu_hi)
        if label(mid) == "local_min":
            nu_lo = mid
        else:
            nu_hi = mid
    return {"bracket": (nu_lo, nu_hi), "labels": labels, "flip_found": True}
