"""Chebyshev, Fourier-cosine and Gegenbauer coefficients of a kernel by quadrature.

Chebyshev and Fourier-cosine coefficients use the (1/pi) integral for every
index, n = 0 included:

    c_n = (1/pi) * int_{-1}^{1} F(t) T_n(t) (1 - t^2)^(-1/2) dt
        = (1/pi) * int_0^pi F(cos th) cos(n th) dth.

With that convention F(cos th) = c_0 + 2 * sum_{n>=1} c_n cos(n th), so any
reconstruction (see :func:`energy_via_fourier`) doubles the n >= 1 terms.

All integrals are taken in theta with Gauss-Legendre panels split at
theta = pi/2, the kink of the even potentials. The plain Gauss-Chebyshev
rule is a midpoint rule in theta and converges only like h^2 across that
kink.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.special import eval_gegenbauer, gammaln, polygamma, roots_legendre

from .core import DiscreteMeasure, FejesTothError, Potential, WrongDimension, points_to_angles

DEFAULT_NMAX = 64
DEFAULT_NODES = 4096
SIGN_TOL = 1e-9


class InsufficientNodes(FejesTothError):
    kind = "insufficient_nodes"


class WrongBasis(FejesTothError):
    kind = "wrong_basis"


@dataclass(frozen=True)
class ExpansionCoefficients:
    """``values[n]`` for n = 0..nmax in the named basis."""

    basis: str
    values: np.ndarray
    nodes: int
    dim: int | None = None
    potential: str = field(default="", compare=False)

    @property
    def nmax(self) -> int:
        return self.values.size - 1

    @property
    def label(self) -> str:
        return f"gegenbauer:{self.dim}" if self.basis == "gegenbauer" else self.basis


def _check_nodes(nmax, nodes):
    if nmax < 0:
        raise FejesTothError("nmax must be non-negative")
    if nodes < 64 or nodes & (nodes - 1):
        raise InsufficientNodes("nodes must be a power of two >= 64")
    if nodes < 4 * nmax:
        raise InsufficientNodes(f"{nodes} nodes cannot resolve degree {nmax}; need >= {4 * nmax}")


@lru_cache(maxsize=16)
def theta_rule(nodes: int):
    """Gauss-Legendre on [0, pi/2] and [pi/2, pi], nodes/2 points each."""
    x, w = roots_legendre(nodes // 2)
    left = (x + 1) * (math.pi / 4)
    th = np.concatenate([left, left + math.pi / 2])
    wt = np.concatenate([w, w]) * (math.pi / 4)
    th.setflags(write=False)
    wt.setflags(write=False)
    return th, wt


def _cosine_coefficients(potential, nmax, nodes):
    th, w = theta_rule(nodes)
    g = potential(np.cos(th)) * w
    n = np.arange(nmax + 1)
    return np.cos(np.outer(n, th)) @ g / math.pi


def chebyshev_coefficients(
    potential: Potential, nmax: int = DEFAULT_NMAX, nodes: int = DEFAULT_NODES
) -> ExpansionCoefficients:
    _check_nodes(nmax, nodes)
    vals = _cosine_coefficients(potential, nmax, nodes)
    return ExpansionCoefficients("chebyshev", vals, nodes, 1, str(potential))


def fourier_cosine_coefficients(
    potential: Potential, nmax: int = DEFAULT_NMAX, nodes: int = DEFAULT_NODES
) -> ExpansionCoefficients:
    """Cosine coefficients of G(th) = F(cos th), same normalization as Chebyshev."""
    _check_nodes(nmax, nodes)
    vals = _cosine_coefficients(potential, nmax, nodes)
    return ExpansionCoefficients("fourier", vals, nodes, 1, str(potential))


def gegenbauer_norm(n, lam):
    """Squared norm of C_n^lam against (1 - t^2)^(lam - 1/2) on [-1, 1]."""
    n = np.asarray(n, dtype=np.float64)
    return np.exp(
        math.log(math.pi) + (1 - 2 * lam) * math.log(2) + gammaln(n + 2 * lam)
        - gammaln(n + 1) - 2 * gammaln(lam)
    ) / (n + lam)


def gegenbauer_coefficients(
    potential: Potential, d: int, nmax: int = DEFAULT_NMAX, nodes: int = DEFAULT_NODES
) -> ExpansionCoefficients:
    """Coefficients a_n with F(t) ~ sum a_n C_n^{(d-1)/2}(t) on S^d.

    For d = 2 this is the Legendre expansion, a_n = (2n+1)/2 int F P_n.
    For d = 1 the Chebyshev list is returned (same weight, same signs).
    """
    if d < 1:
        raise WrongDimension("Gegenbauer expansion needs d >= 1")
    if d == 1:
        c = chebyshev_coefficients(potential, nmax, nodes)
        return ExpansionCoefficients("gegenbauer", c.values, nodes, 1, str(potential))
    _check_nodes(nmax, nodes)
    lam = (d - 1) / 2
    th, w = theta_rule(nodes)
    t = np.cos(th)
    # dt (1-t^2)^(lam-1/2) = sin(th)^(2 lam) dth
    g = potential(t) * np.sin(th) ** (2 * lam) * w
    n = np.arange(nmax + 1)
    basis = eval_gegenbauer(n[:, None], lam, t[None, :])
    vals = basis @ g / gegenbauer_norm(n, lam)
    return ExpansionCoefficients("gegenbauer", vals, nodes, d, str(potential))


def chebyshev_series(coeffs: ExpansionCoefficients, t):
    """Partial sum c_0 + 2 sum c_n T_n(t) of a Chebyshev/Fourier list."""
    if coeffs.basis not in ("chebyshev", "fourier"):
        raise WrongBasis("partial sums need a Chebyshev or Fourier list")
    th = np.arccos(np.clip(np.asarray(t, dtype=np.float64), -1, 1))
    n = np.arange(coeffs.values.size)
    scale = np.where(n == 0, 1.0, 2.0) * coeffs.values
    return np.cos(np.multiply.outer(th, n)) @ scale


def is_negative_definite_s1(coeffs: ExpansionCoefficients, tol: float = SIGN_TOL) -> bool:
    """True iff every non-constant coefficient is <= tol."""
    if coeffs.basis not in ("chebyshev", "fourier"):
        raise WrongBasis("negative definiteness on S^1 is read off Chebyshev/Fourier lists")
    return bool(np.all(coeffs.values[1:] <= tol))


def check_equispaced_maximizer(coeffs: ExpansionCoefficients, n: int, tol: float = SIGN_TOL) -> bool:
    """Sign pattern under which N equally spaced points maximize the energy.

    Coefficients at multiples of ``n`` must be >= -tol, all others <= tol.
    """
    if coeffs.basis != "fourier":
        raise WrongBasis("equispaced test needs Fourier-cosine coefficients")
    if n < 1:
        raise FejesTothError("N must be at least 1")
    v = coeffs.values
    idx = np.arange(1, v.size)
    mult = idx % n == 0
    return bool(np.all(v[idx[mult]] >= -tol) and np.all(v[idx[~mult]] <= tol))


def cosine_moments(mu: DiscreteMeasure, nmax: int):
    theta = points_to_angles(mu.points)
    arg = np.multiply.outer(np.arange(nmax + 1), theta)
    return np.cos(arg) @ mu.weights, np.sin(arg) @ mu.weights


def symmetrize(mu: DiscreteMeasure) -> DiscreteMeasure:
    """Average of mu and its reflection th -> -th."""
    refl = mu.points * np.array([1.0, -1.0])
    pts = np.vstack([mu.points, refl])
    return DiscreteMeasure(1, pts, np.concatenate([mu.weights, mu.weights]) / 2)


def energy_via_fourier(mu: DiscreteMeasure, coeffs: ExpansionCoefficients, symmetric: bool = False) -> float:
    """Energy of a circle measure from its cosine series.

    Evaluates c_0 + 2 sum_n c_n (C_n^2 + S_n^2), where C_n and S_n are the
    cosine and sine moments of ``mu``. This equals the energy of ``mu`` up to
    truncation. With ``symmetric=True`` the measure is first replaced by its
    even part (average with the reflection th -> -th), whose sine moments
    vanish; that agrees with the energy of ``mu`` only when ``mu`` is already
    even up to rotation.
    """
    if coeffs.basis != "fourier":
        raise WrongBasis("energy_via_fourier needs Fourier-cosine coefficients")
    if mu.dim != 1:
        raise WrongDimension("energy_via_fourier works on S^1 only")
    scale = np.where(np.arange(coeffs.values.size) == 0, 1.0, 2.0) * coeffs.values
    if symmetric:
        c, _ = cosine_moments(symmetrize(mu), coeffs.nmax)
        return float(scale @ (c * c))
    c, s = cosine_moments(mu, coeffs.nmax)
    return float(scale @ (c * c + s * s))


def acute_tail_bound(nmax: int) -> float:
    """sum_{n > nmax} 4/(pi n^2), a bound on the truncation error for arccos|t|."""
    return float(4 / math.pi * polygamma(1, nmax + 1))
