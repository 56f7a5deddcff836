import numpy as np
import pytest

from fejestoth.core import DiscreteMeasure, RngSpec, random_points


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_measure(rng, dim, n):
    pts = random_points(dim, n, rng)
    w = rng.random(n) + 0.05
    return DiscreteMeasure(dim, pts, w / w.sum())


def random_orthogonal(rng, k):
    q, r = np.linalg.qr(rng.standard_normal((k, k)))
    return q * np.sign(np.diag(r))


def seeded(seed, stream=0):
    return RngSpec(seed, stream)
