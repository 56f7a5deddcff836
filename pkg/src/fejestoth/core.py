"""Domain types, validation and seeded random generation.

Points always live in the ambient space R^(d+1) as dense float64 vectors;
a configuration on S^d is an ``(N, d+1)`` array of unit rows.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

SPHERE_TOL = 1e-9
UNIT_TOL = 1e-12
RNG_ALGORITHM = "numpy.PCG64 seeded by SeedSequence(seed, spawn_key=(stream,))"


class FejesTothError(ValueError):
    """Base class for domain errors; ``kind`` is the machine-readable tag."""

    kind = "domain"


class DimensionMismatch(FejesTothError):
    kind = "dimension_mismatch"


class NotOnSphere(FejesTothError):
    kind = "not_on_sphere"


class EmptyConfiguration(FejesTothError):
    kind = "empty"


class InvalidCount(FejesTothError):
    kind = "invalid_count"


class InvalidWeights(FejesTothError):
    kind = "invalid_weights"


class ZeroVector(FejesTothError):
    kind = "zero_vector"


class WrongDimension(FejesTothError):
    kind = "wrong_dimension"


def _frozen(a):
    a = np.array(a, dtype=np.float64)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class PointConfiguration:
    """N unit vectors in R^(dim+1), stored as a read-only ``(N, dim+1)`` array."""

    dim: int
    points: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "points", _frozen(self.points))
        if self.points.ndim != 2 or self.points.shape[0] < 1:
            raise EmptyConfiguration("configuration needs at least one point")
        if self.points.shape[1] != self.dim + 1:
            raise DimensionMismatch(
                f"points have {self.points.shape[1]} coordinates, expected {self.dim + 1}"
            )
        dev = np.abs(np.linalg.norm(self.points, axis=1) - 1.0)
        if np.any(dev > UNIT_TOL):
            raise NotOnSphere(f"point norm deviates from 1 by {dev.max():.3g}")

    @property
    def n(self) -> int:
        return self.points.shape[0]

    def to_measure(self) -> "DiscreteMeasure":
        return DiscreteMeasure(self.dim, self.points, np.full(self.n, 1.0 / self.n))

    def __len__(self):
        return self.n


@dataclass(frozen=True, eq=False)
class DiscreteMeasure:
    """Probability measure made of weighted point masses on S^dim."""

    dim: int
    points: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "points", _frozen(self.points))
        object.__setattr__(self, "weights", _frozen(self.weights))
        p, w = self.points, self.weights
        if p.ndim != 2 or p.shape[0] < 1:
            raise EmptyConfiguration("measure needs at least one atom")
        if p.shape[1] != self.dim + 1:
            raise DimensionMismatch(
                f"atoms have {p.shape[1]} coordinates, expected {self.dim + 1}"
            )
        if w.shape != (p.shape[0],):
            raise InvalidWeights(f"{w.size} weights for {p.shape[0]} atoms")
        if np.any(w < 0) or abs(w.sum() - 1.0) > UNIT_TOL:
            raise InvalidWeights("weights must be non-negative and sum to 1")
        dev = np.abs(np.linalg.norm(p, axis=1) - 1.0)
        if np.any(dev > UNIT_TOL):
            raise NotOnSphere(f"atom norm deviates from 1 by {dev.max():.3g}")

    @property
    def n(self) -> int:
        return self.points.shape[0]


@dataclass(frozen=True)
class Potential:
    """Kernel F on [-1, 1].

    ``kind`` is one of ``acute``, ``frame``, ``pframe``, ``geodesic``,
    ``quadmaj``; ``param`` carries p for ``pframe`` and b for ``quadmaj``.
    """

    kind: str
    param: float | None = None

    KINDS = ("acute", "frame", "pframe", "geodesic", "quadmaj", "constant")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise FejesTothError(f"unknown potential kind {self.kind!r}")
        if self.kind in ("pframe", "quadmaj", "constant") and self.param is None:
            raise FejesTothError(f"potential {self.kind!r} needs a parameter")
        if self.kind == "pframe" and not self.param > 0:
            raise FejesTothError("p-frame exponent must be positive")

    @classmethod
    def parse(cls, text: str) -> "Potential":
        """Parse ``acute|frame|pframe:p|geodesic|quadmaj:b``."""
        name, _, arg = text.partition(":")
        aliases = {"acuteangle": "acute", "acute_angle": "acute"}
        name = aliases.get(name.lower(), name.lower())
        if arg:
            try:
                return cls(name, float(arg))
            except ValueError as exc:
                if isinstance(exc, FejesTothError):
                    raise
                raise FejesTothError(f"bad potential parameter in {text!r}") from None
        return cls(name)

    def __str__(self):
        return self.kind if self.param is None else f"{self.kind}:{self.param:g}"

    @property
    def is_even(self) -> bool:
        return self.kind != "geodesic"

    def __call__(self, t):
        t = np.clip(np.asarray(t, dtype=np.float64), -1.0, 1.0)
        k = self.kind
        if k == "acute":
            return np.arccos(np.abs(t))
        if k == "frame":
            return t * t
        if k == "pframe":
            return np.abs(t) ** self.param
        if k == "geodesic":
            return np.arccos(t)
        if k == "quadmaj":
            return math.pi / 2 - self.param * t * t
        return np.full_like(t, self.param)


ACUTE = Potential("acute")
FRAME = Potential("frame")
GEODESIC = Potential("geodesic")


@dataclass(frozen=True)
class RngSpec:
    """Seed plus stream index; each (seed, stream) pair is an independent generator."""

    seed: int = 0
    stream: int = 0
    algorithm: str = field(default=RNG_ALGORITHM, init=False)

    def generator(self) -> np.random.Generator:
        ss = np.random.SeedSequence(self.seed & (2**64 - 1), spawn_key=(self.stream,))
        return np.random.Generator(np.random.PCG64(ss))

    def child(self, stream: int) -> "RngSpec":
        return RngSpec(self.seed, stream)

    def to_dict(self):
        return {"algorithm": self.algorithm, "seed": self.seed, "stream": self.stream}


def validate_configuration(raw: Sequence[Sequence[float]], dim: int) -> PointConfiguration:
    """Check shape and sphere membership, renormalizing tiny norm drift.

    Vectors whose norm is within 1e-9 of one are rescaled onto the sphere,
    anything further off raises :class:`NotOnSphere`.
    """
    if raw is None or len(raw) == 0:
        raise EmptyConfiguration("no points given")
    rows = []
    for i, v in enumerate(raw):
        v = np.asarray(v, dtype=np.float64).ravel()
        if v.size != dim + 1:
            raise DimensionMismatch(f"point {i} has {v.size} coordinates, expected {dim + 1}")
        rows.append(v)
    pts = np.vstack(rows)
    if not np.all(np.isfinite(pts)):
        raise NotOnSphere("non-finite coordinate")
    return PointConfiguration(dim, _renormalize(pts))


def validate_measure(raw, dim: int, weights=None) -> DiscreteMeasure:
    """Like :func:`validate_configuration`; ``weights=None`` means uniform."""
    cfg = validate_configuration(raw, dim)
    if weights is None:
        return cfg.to_measure()
    w = np.asarray(weights, dtype=np.float64)
    if w.shape != (cfg.n,):
        raise InvalidWeights(f"{w.size} weights for {cfg.n} points")
    if np.any(w < 0):
        raise InvalidWeights("negative weight")
    s = w.sum()
    if abs(s - 1.0) > SPHERE_TOL:
        raise InvalidWeights(f"weights sum to {s!r}")
    return DiscreteMeasure(dim, cfg.points, w / s)


def _renormalize(pts):
    norms = np.linalg.norm(pts, axis=1)
    bad = np.abs(norms - 1.0) > SPHERE_TOL
    if np.any(bad):
        i = int(np.argmax(bad))
        raise NotOnSphere(f"point {i} has norm {norms[i]!r}")
    return pts / norms[:, None]


def random_points(dim: int, n: int, rng: np.random.Generator) -> np.ndarray:
    g = rng.standard_normal((n, dim + 1))
    norms = np.linalg.norm(g, axis=1)
    # a zero draw has probability zero, but stay defined anyway
    while np.any(norms == 0):
        zero = norms == 0
        g[zero] = rng.standard_normal((int(zero.sum()), dim + 1))
        norms = np.linalg.norm(g, axis=1)
    return g / norms[:, None]


def random_configuration(dim: int, n: int, rng: RngSpec) -> PointConfiguration:
    """``n`` independent uniform points on S^dim (normalized Gaussians)."""
    if n < 1:
        raise InvalidCount("n must be at least 1")
    if dim < 0:
        raise DimensionMismatch("dim must be non-negative")
    return PointConfiguration(dim, random_points(dim, n, rng.generator()))


def clamp_dot(x, y) -> float:
    """Inner product clipped into [-1, 1] so arccos never sees round-off overflow."""
    return min(1.0, max(-1.0, float(np.dot(x, y))))


def gram(points: np.ndarray, other: np.ndarray | None = None, offset: int | None = None) -> np.ndarray:
    """Clamped Gram matrix; einsum keeps the summation order thread-independent.

    Self inner products are set to exactly 1: a unit vector's z.z may round
    to 1 - 1e-16, and arccos of that is already 1.5e-8. ``offset`` is the row
    of ``other`` matching ``points[0]`` when ``points`` is a block of it.
    """
    if other is None:
        other, offset = points, 0
    g = np.clip(np.einsum("ik,jk->ij", points, other), -1.0, 1.0)
    if offset is not None:
        i = np.arange(min(points.shape[0], other.shape[0] - offset))
        g[i, i + offset] = 1.0
    return g


def angles_to_points(angles) -> np.ndarray:
    a = np.asarray(angles, dtype=np.float64)
    return np.column_stack([np.cos(a), np.sin(a)])


def points_to_angles(points) -> np.ndarray:
    p = np.asarray(points, dtype=np.float64)
    return np.mod(np.arctan2(p[:, 1], p[:, 0]), 2 * np.pi)
