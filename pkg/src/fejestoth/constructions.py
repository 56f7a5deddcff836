"""Builders for the orthonormal-basis configurations and related measures."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import DiscreteMeasure, FejesTothError, PointConfiguration, angles_to_points


@dataclass(frozen=True)
class OnbSplit:
    """N = m(d+1) + k with 0 <= k <= d."""

    d: int
    n: int
    m: int
    k: int

    @classmethod
    def of(cls, d: int, n: int) -> "OnbSplit":
        m, k = divmod(n, d + 1)
        return cls(d, n, m, k)


def _check(d, n=1):
    if d < 1:
        raise FejesTothError("dimension must be at least 1")
    if n < 1:
        raise FejesTothError("need at least one point")


def onb_configuration(d: int, n: int) -> PointConfiguration:
    """Standard basis of R^(d+1) repeated cyclically: z_{p(d+1)+i} = e_i."""
    _check(d, n)
    eye = np.eye(d + 1)
    return PointConfiguration(d, eye[np.arange(n) % (d + 1)])


def conjectured_value(d: int, n: int) -> float:
    """Acute-angle energy of :func:`onb_configuration`, in closed form."""
    _check(d, n)
    s = OnbSplit.of(d, n)
    m, k = s.m, s.k
    count = (
        k * (k - 1) * (m + 1) ** 2
        + 2 * k * m * (d + 1 - k) * (m + 1)
        + (d - k) * (d + 1 - k) * m * m
    )
    return math.pi / (2 * n * n) * count


def onb_measure(d: int) -> DiscreteMeasure:
    _check(d)
    return DiscreteMeasure(d, np.eye(d + 1), np.full(d + 1, 1.0 / (d + 1)))


def equispaced_configuration(n: int) -> PointConfiguration:
    _check(1, n)
    return PointConfiguration(1, angles_to_points(2 * np.pi * np.arange(n) / n))


def equispaced_measure(n: int) -> DiscreteMeasure:
    """Equal masses at the angles 2*pi*k/n on the circle."""
    return equispaced_configuration(n).to_measure()


def compose_measures(nu: DiscreteMeasure, lam: DiscreteMeasure, alpha: float) -> DiscreteMeasure:
    """Put ``nu`` and ``lam`` on orthogonal subspheres with masses alpha and 1-alpha.

    ``nu`` occupies the leading k+1 coordinates of R^(k+l+2), ``lam`` the
    trailing l+1.
    """
    if not 0.0 <= alpha <= 1.0:
        raise FejesTothError("alpha must lie in [0, 1]")
    k1, l1 = nu.dim + 1, lam.dim + 1
    pts = np.zeros((nu.n + lam.n, k1 + l1))
    pts[: nu.n, :k1] = nu.points
    pts[nu.n :, k1:] = lam.points
    w = np.concatenate([alpha * nu.weights, (1 - alpha) * lam.weights])
    return DiscreteMeasure(nu.dim + lam.dim + 1, pts, w)
