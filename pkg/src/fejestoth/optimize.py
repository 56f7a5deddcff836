"""Projected gradient ascent of discrete energies over (S^d)^N.

arccos|t| has a kink at t = 0, exactly where the orthonormal-basis
configurations sit. Two devices deal with it: the subgradient uses
sign(0) = 0, and the ascent can run on the smooth surrogate

    F_eps(t) = arccos(sqrt((t^2 + eps^2) / (1 + eps^2)))  <=  arccos|t|

with eps halved a few times before a last pass on the exact energy.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from .core import (
    ACUTE,
    FejesTothError,
    PointConfiguration,
    Potential,
    RngSpec,
    ZeroVector,
    gram,
    random_points,
)
from .energy import discrete_energy

DERIV_CLAMP = 1 - 1e-12


class InvalidParams(FejesTothError):
    kind = "invalid_params"


@dataclass(frozen=True)
class AscentParams:
    max_iters: int = 100_000
    initial_step: float = 0.1
    backtracking_factor: float = 0.5
    max_backtracks: int = 30
    rel_tol: float = 1e-10
    armijo: float = 1e-4
    window: int = 5
    smoothing_eps: float = 1e-3
    halvings: int = 3
    exact_finish: bool = True
    restarts: int = 8
    rng: RngSpec = field(default_factory=RngSpec)

    def validate(self):
        if self.max_iters < 0 or self.max_backtracks < 0 or self.window < 1:
            raise InvalidParams("iteration counts must be non-negative, window >= 1")
        if not self.initial_step > 0:
            raise InvalidParams("initial_step must be positive")
        if not 0 < self.backtracking_factor < 1:
            raise InvalidParams("backtracking_factor must lie in (0, 1)")
        if not 0 < self.rel_tol < 1:
            raise InvalidParams("rel_tol must lie in (0, 1)")
        if not 0 <= self.armijo < 1:
            raise InvalidParams("armijo must lie in [0, 1)")
        if self.smoothing_eps < 0 or self.halvings < 0:
            raise InvalidParams("smoothing_eps and halvings must be non-negative")
        if self.restarts < 1:
            raise InvalidParams("restarts must be at least 1")
        return self

    def to_dict(self):
        d = asdict(self)
        d["rng"] = self.rng.to_dict()
        return d


@dataclass
class RestartSummary:
    index: int
    final_energy: float
    iterations: int
    converged: bool
    # one list of accepted objective values per phase, keyed by that phase's eps
    trace: list = field(default_factory=list, repr=False)

    def to_dict(self):
        return {
            "index": self.index,
            "final_energy": self.final_energy,
            "iterations": self.iterations,
            "converged": self.converged,
        }


@dataclass
class OptimizationResult:
    best_config: PointConfiguration
    best_energy: float
    best_index: int
    per_restart: list
    params: AscentParams
    potential: Potential

    def to_dict(self):
        return {
            "dim": self.best_config.dim,
            "n": self.best_config.n,
            "potential": str(self.potential),
            "best_energy": self.best_energy,
            "best_index": self.best_index,
            "best_config": {
                "dim": self.best_config.dim,
                "points": self.best_config.points.tolist(),
            },
            "per_restart": [r.to_dict() for r in self.per_restart],
            "params": self.params.to_dict(),
            "seed": self.params.rng.seed,
        }


def smoothed_acute(t, eps):
    t = np.clip(t, -1.0, 1.0)
    return np.arccos(np.sqrt((t * t + eps * eps) / (1 + eps * eps)))


def objective_kernel(potential: Potential, eps: float):
    if potential.kind == "acute" and eps > 0:
        return lambda t: smoothed_acute(t, eps)
    return potential


def kernel_derivative(potential: Potential, t, eps: float = 0.0):
    """F'(t), with |t| clamped below 1 and sign(0) = 0 for the kinked kernels."""
    t = np.clip(t, -DERIV_CLAMP, DERIV_CLAMP)
    k = potential.kind
    if k == "acute":
        if eps > 0:
            return -t / (np.sqrt(t * t + eps * eps) * np.sqrt(1 - t * t))
        return -np.sign(t) / np.sqrt(1 - t * t)
    if k == "frame":
        return 2 * t
    if k == "pframe":
        p = potential.param
        return p * np.sign(t) * np.abs(t) ** (p - 1) if p != 1 else np.sign(t)
    if k == "geodesic":
        return -1 / np.sqrt(1 - t * t)
    if k == "quadmaj":
        return -2 * potential.param * t
    return np.zeros_like(t)


def project_to_sphere(points) -> np.ndarray:
    p = np.asarray(points, dtype=np.float64)
    p = np.atleast_2d(p)
    norms = np.linalg.norm(p, axis=1)
    if np.any(norms == 0):
        raise ZeroVector("cannot project the zero vector onto the sphere")
    return p / norms[:, None]


def _tangent_gradient(points, potential, eps):
    n = points.shape[0]
    deriv = kernel_derivative(potential, gram(points), eps)
    np.fill_diagonal(deriv, 0.0)
    g = (2.0 / (n * n)) * (deriv @ points)
    return g - np.sum(g * points, axis=1)[:, None] * points


def energy_gradient(config: PointConfiguration, potential: Potential, smoothing_eps: float = 0.0):
    """Tangent-space gradient of the (smoothed) discrete energy, one row per point."""
    return _tangent_gradient(config.points, potential, smoothing_eps)


def _objective(points, kernel):
    n = points.shape[0]
    return kernel(gram(points)).sum() / (n * n)


def _run_phase(points, potential, eps, params, budget):
    kernel = objective_kernel(potential, eps)
    value = _objective(points, kernel)
    trace = [value]
    it = 0
    converged = False
    while it < budget:
        g = _tangent_gradient(points, potential, eps)
        if not np.any(g):
            converged = True
            break
        step = params.initial_step
        slope = params.armijo * float(np.sum(g * g))
        accepted = None
        for _ in range(params.max_backtracks + 1):
            trial = project_to_sphere(points + step * g)
            v = _objective(trial, kernel)
            # strict increase, and by at least a fraction of the predicted gain
            if v > value and v - value >= step * slope:
                accepted = trial, v
                break
            step *= params.backtracking_factor
        if accepted is None:
            # no increase at the smallest step: stationary to working precision
            converged = True
            break
        points, value = accepted
        trace.append(value)
        it += 1
        w = params.window
        if len(trace) > w and abs(trace[-1] - trace[-1 - w]) <= params.rel_tol * max(abs(value), 1e-300):
            converged = True
            break
    return points, it, converged, trace


def _phases(potential, params):
    if potential.kind != "acute" or params.smoothing_eps == 0:
        return [0.0]
    eps = [params.smoothing_eps / 2**h for h in range(params.halvings + 1)]
    return eps + ([0.0] if params.exact_finish else [])


def _ascent_run(points, potential, params, index):
    total = 0
    converged = True
    traces = []
    for eps in _phases(potential, params):
        points, it, ok, trace = _run_phase(points, potential, eps, params, params.max_iters - total)
        total += it
        traces.append((eps, trace))
        converged = ok
    config = PointConfiguration(points.shape[1] - 1, project_to_sphere(points))
    summary = RestartSummary(index, discrete_energy(config, potential), total, converged, traces)
    return config, summary


def _restart(dim, n, potential, params, index):
    start = random_points(dim, n, params.rng.child(index).generator())
    return _ascent_run(start, potential, params, index)


def ascend(
    dim: int,
    n: int,
    potential: Potential = ACUTE,
    params: AscentParams | None = None,
    threads: int = 1,
) -> OptimizationResult:
    """Multi-restart ascent from random starts; restart i uses stream i of the seed.

    Restarts may run on ``threads`` workers; the reduction is serial and ties
    go to the lowest restart index, so the result does not depend on it.
    """
    params = (params or AscentParams()).validate()
    if dim < 1 or n < 1:
        raise InvalidParams("need dim >= 1 and n >= 1")
    idx = range(params.restarts)
    with ThreadPoolExecutor(max_workers=max(1, threads)) as ex:
        runs = list(ex.map(lambda i: _restart(dim, n, potential, params, i), idx))
    best = 0
    for i, (_, s) in enumerate(runs):
        if s.final_energy > runs[best][1].final_energy:
            best = i
    return OptimizationResult(
        runs[best][0], runs[best][1].final_energy, best, [s for _, s in runs], params, potential
    )


def polish(config: PointConfiguration, potential: Potential = ACUTE, params: AscentParams | None = None) -> OptimizationResult:
    """Single ascent run from ``config``; never returns a lower energy than the input."""
    params = (params or AscentParams()).validate()
    out, summary = _ascent_run(np.array(config.points), potential, params, 0)
    start = discrete_energy(config, potential)
    if summary.final_energy < start:
        out, summary.final_energy = config, start
    return OptimizationResult(out, summary.final_energy, 0, [summary], params, potential)
