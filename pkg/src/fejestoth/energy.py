"""Discrete and measure energies, frame-potential machinery, uniform baselines."""
from __future__ import annotations

import math

import numpy as np
from scipy.special import betaln, roots_jacobi, roots_legendre

from .core import (
    FRAME,
    DiscreteMeasure,
    FejesTothError,
    PointConfiguration,
    Potential,
    gram,
)

BLOCK = 512
TIGHT_FRAME_TOL = 1e-8


class QuadratureUnstable(FejesTothError):
    kind = "quadrature_unstable"


def _pair_sum(points, potential, weights=None):
    # Fixed row blocks, serial reduction: same bits regardless of worker count.
    n = points.shape[0]
    partial = []
    for lo in range(0, n, BLOCK):
        blk = potential(gram(points[lo:lo + BLOCK], points, offset=lo))
        if weights is None:
            partial.append(blk.sum())
        else:
            partial.append(weights[lo:lo + BLOCK] @ blk @ weights)
    return math.fsum(partial)


def discrete_energy(config: PointConfiguration, potential: Potential) -> float:
    """(1/N^2) sum over all ordered pairs (i, j), diagonal included, of F(z_i . z_j)."""
    return _pair_sum(config.points, potential) / config.n**2


def measure_energy(mu: DiscreteMeasure, potential: Potential) -> float:
    """Energy integral sum_ij w_i w_j F(z_i . z_j) of a discrete measure."""
    return _pair_sum(mu.points, potential, mu.weights)


def second_moment(mu: DiscreteMeasure) -> np.ndarray:
    """Matrix of integrals of x_i x_j against ``mu``; symmetric PSD, trace one."""
    p, w = mu.points, mu.weights
    m = np.einsum("k,ki,kj->ij", w, p, p)
    return (m + m.T) / 2


def frame_defect(mu: DiscreteMeasure) -> float:
    """Frame energy minus its lower bound 1/(d+1); never negative."""
    m = second_moment(mu)
    return float(np.sum(m * m)) - 1.0 / (mu.dim + 1)


def is_tight_frame(mu: DiscreteMeasure, tol: float = TIGHT_FRAME_TOL) -> bool:
    """Certificate: second-moment matrix equals I/(d+1) in max-norm within ``tol``."""
    m = second_moment(mu)
    target = np.eye(mu.dim + 1) / (mu.dim + 1)
    return bool(np.max(np.abs(m - target)) <= tol)


def frame_energy(mu: DiscreteMeasure) -> float:
    return measure_energy(mu, FRAME)


def sphere_weight_exponent(dim: int) -> float:
    """Exponent a of the projected surface weight (1 - t^2)^a on S^dim."""
    return (dim - 2) / 2


def sphere_rule(dim: int, nodes: int, rule: str = "auto"):
    """Nodes and weights for integrating f(t) against the normalized S^dim weight.

    The returned weights sum to one. Rules other than Chebyshev are split at
    t = 0 so that kernels like arccos|t| are integrated piecewise-smoothly.
    """
    if dim < 1:
        raise FejesTothError("uniform measure needs dim >= 1")
    if nodes < 16:
        raise FejesTothError("need at least 16 quadrature nodes")
    if rule == "auto":
        rule = {1: "chebyshev", 2: "legendre"}.get(dim, "jacobi")
    if dim == 1 and rule != "chebyshev":
        raise QuadratureUnstable(
            "the S^1 weight (1-t^2)^(-1/2) is endpoint-singular; use the Chebyshev rule"
        )
    if rule == "chebyshev":
        # Gauss-Chebyshev: midpoints in theta, equal weights
        theta = (2 * np.arange(1, nodes + 1) - 1) * np.pi / (2 * nodes)
        t = np.cos(theta)
        w = np.full(nodes, 1.0 / nodes)
        if dim != 1:
            w = w * (1 - t * t) ** (sphere_weight_exponent(dim) + 0.5)
            w /= w.sum()
        return t, w
    if rule not in ("legendre", "jacobi"):
        raise FejesTothError(f"unknown quadrature rule {rule!r}")
    a = sphere_weight_exponent(dim)
    half = nodes // 2
    if rule == "legendre":
        x, wx = roots_legendre(half)
        s = (1 + x) / 2
        ws = wx / 2 * (1 - s * s) ** a
    else:
        # weight (1-s)^a absorbed by the rule, the smooth (1+s)^a factor evaluated
        x, wx = roots_jacobi(half, a, 0.0)
        s = (1 + x) / 2
        ws = wx * 2.0 ** (-a - 1) * (1 + s) ** a
    t = np.concatenate([-s[::-1], s])
    w = np.concatenate([ws[::-1], ws])
    total = math.exp(betaln(0.5, a + 1))
    return t, w / total


def uniform_energy(dim: int, potential: Potential, nodes: int = 2048, rule: str = "auto") -> float:
    """Energy of the normalized surface measure on S^dim via a one-dimensional rule."""
    t, w = sphere_rule(dim, nodes, rule)
    return float(np.dot(w, potential(t)))
