"""L2 discrepancy for antipodal quadrants on the circle.

Q(x) = {y : |x . y| > sqrt(2)/2} is the union of two opposite quarter arcs
centred at x and -x. The discrepancy is computed from the pairwise kernel,
by an exact sweep over the arcs where the inside-count is constant, and by
Monte Carlo.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .core import (
    ACUTE,
    DiscreteMeasure,
    PointConfiguration,
    RngSpec,
    WrongDimension,
    FejesTothError,
    points_to_angles,
)
from .energy import measure_energy

TWO_PI = 2 * math.pi
QUARTER = math.pi / 4
DEDUP_TOL = 1e-14
MC_BATCH = 65536


def _need_circle(obj):
    if obj.dim != 1:
        raise WrongDimension(f"quadrant discrepancy is defined on S^1, got S^{obj.dim}")


def quadrant_intersection(y, z) -> float:
    """Uniform measure of Q(y) intersected with Q(z): 1/2 - arccos|y.z|/pi."""
    y = np.asarray(y, dtype=np.float64)
    z = np.asarray(z, dtype=np.float64)
    if y.shape != (2,) or z.shape != (2,):
        raise WrongDimension("quadrant_intersection needs two points of S^1")
    t = min(1.0, abs(float(y @ z)))
    return 0.5 - math.acos(t) / math.pi


def discrepancy_closed_form(mu: DiscreteMeasure) -> float:
    _need_circle(mu)
    return 0.25 - measure_energy(mu, ACUTE) / math.pi


@dataclass(frozen=True)
class SweepBreakpoints:
    """Sorted breakpoint angles in [0, 2pi) and the count on each arc.

    ``counts[i]`` is the number of points inside Q(x) for x on the arc from
    ``angles[i]`` to ``angles[i+1]`` (the last arc wraps around to angles[0]).
    """

    angles: np.ndarray
    counts: np.ndarray

    def arc_lengths(self) -> np.ndarray:
        a = self.angles
        return np.diff(np.append(a, a[0] + TWO_PI))


def _inside_counts(x_angles, phi):
    # |cos(x - phi)| > cos(pi/4)  <=>  distance between the lines < pi/4
    diff = np.mod(x_angles[:, None] - phi[None, :], math.pi)
    dist = np.minimum(diff, math.pi - diff)
    return np.count_nonzero(dist < QUARTER, axis=1)


def sweep_breakpoints(config: PointConfiguration) -> SweepBreakpoints:
    _need_circle(config)
    phi = points_to_angles(config.points)
    # entering Q(x) at phi - pi/4 and phi + 3pi/4, leaving at phi + pi/4 and phi + 5pi/4
    offsets = np.array([-1, 1, 3, 5]) * QUARTER
    steps = np.array([1, -1, 1, -1])
    raw = np.mod(phi[:, None] + offsets[None, :], TWO_PI).ravel()
    delta = np.tile(steps, phi.size)
    order = np.argsort(raw, kind="stable")
    raw, delta = raw[order], delta[order]

    angles, jumps = [raw[0]], [delta[0]]
    for a, s in zip(raw[1:], delta[1:]):
        if a - angles[-1] <= DEDUP_TOL:
            jumps[-1] += s
        else:
            angles.append(a)
            jumps.append(s)
    if len(angles) > 1 and angles[0] + TWO_PI - angles[-1] <= DEDUP_TOL:
        jumps[0] += jumps.pop()
        angles.pop()
    angles = np.array(angles)
    jumps = np.array(jumps)

    if angles.size == 1:
        mid = np.array([angles[0] + math.pi])
    else:
        mid = np.array([(angles[0] + angles[1]) / 2])
    first = int(_inside_counts(mid, phi)[0])
    counts = first + np.cumsum(jumps) - jumps[0]
    return SweepBreakpoints(angles, counts.astype(np.int64))


def discrepancy_exact_sweep(config: PointConfiguration) -> float:
    """Integral of (count(x)/N - 1/2)^2 over the circle, summed arc by arc."""
    bp = sweep_breakpoints(config)
    dev = bp.counts / config.n - 0.5
    return math.fsum(bp.arc_lengths() * dev * dev) / TWO_PI


def _mc_batch(phi, n, gen_spec, size):
    x = gen_spec.generator().uniform(0.0, TWO_PI, size)
    dev = _inside_counts(x, phi) / n - 0.5
    v = dev * dev
    return v.sum(), (v * v).sum()


def discrepancy_monte_carlo(
    config: PointConfiguration, samples: int, rng: RngSpec, threads: int = 1
) -> tuple[float, float]:
    """Monte Carlo estimate and standard error of the quadrant discrepancy.

    Samples come in fixed batches with their own streams and are reduced in
    batch order, so the result does not depend on ``threads``.
    """
    _need_circle(config)
    if samples < 100:
        raise FejesTothError("need at least 100 samples")
    phi = points_to_angles(config.points)
    sizes = [MC_BATCH] * (samples // MC_BATCH)
    if samples % MC_BATCH:
        sizes.append(samples % MC_BATCH)
    specs = [RngSpec(rng.seed, (rng.stream << 20) + b) for b in range(len(sizes))]
    with ThreadPoolExecutor(max_workers=max(1, threads)) as ex:
        parts = list(ex.map(lambda a: _mc_batch(phi, config.n, *a), zip(specs, sizes)))
    s1 = math.fsum(p[0] for p in parts)
    s2 = math.fsum(p[1] for p in parts)
    mean = s1 / samples
    var = max(0.0, (s2 - samples * mean * mean) / (samples - 1))
    return mean, math.sqrt(var / samples)


def max_energy_bound_s1(n: int) -> float:
    """Upper bound for the acute-angle energy of n points on S^1."""
    if n < 1:
        raise FejesTothError("n must be at least 1")
    if n % 2 == 0:
        return math.pi / 4
    return math.pi / 4 * (n * n - 1) / (n * n)
