import math

import numpy as np
import pytest
from scipy import integrate
from scipy.special import eval_legendre

from conftest import random_measure
from fejestoth.constructions import equispaced_measure
from fejestoth.core import ACUTE, FRAME, GEODESIC, DiscreteMeasure, Potential, WrongDimension
from fejestoth.energy import measure_energy
from fejestoth.expansions import (
    InsufficientNodes,
    WrongBasis,
    acute_tail_bound,
    chebyshev_coefficients,
    chebyshev_series,
    check_equispaced_maximizer,
    energy_via_fourier,
    fourier_cosine_coefficients,
    gegenbauer_coefficients,
    is_negative_definite_s1,
)

ZERO = Potential("constant", 0.0)


def acute_closed_form(n):
    if n == 0:
        return math.pi / 4
    return -4 / (math.pi * n * n) if n % 4 == 2 else 0.0


def theta_oracle(f, n):
    # adaptive (1/pi) int_0^pi f(cos th) cos(n th) dth, split at the kink
    g = lambda th: f(math.cos(th)) * math.cos(n * th)
    return sum(integrate.quad(g, a, b, limit=400, epsabs=1e-13, epsrel=1e-13)[0]
               for a, b in ((0, math.pi / 2), (math.pi / 2, math.pi))) / math.pi


def test_acute_chebyshev_values():
    c = chebyshev_coefficients(ACUTE, 64, 4096)
    assert c.values[0] == pytest.approx(math.pi / 4, abs=1e-8)
    assert c.values[2] == pytest.approx(-1 / math.pi, abs=1e-8)
    assert abs(c.values[4]) <= 1e-8
    assert c.values[6] == pytest.approx(-1 / (9 * math.pi), abs=1e-8)
    for n in range(65):
        assert abs(c.values[n] - acute_closed_form(n)) <= 1e-8
    assert np.all(np.abs(c.values[1::2]) <= 1e-10)


def test_acute_against_adaptive_oracle():
    c = chebyshev_coefficients(ACUTE, 16, 4096)
    for n in range(17):
        assert c.values[n] == pytest.approx(theta_oracle(lambda t: math.acos(abs(t)), n), abs=1e-11)


def test_frame_chebyshev():
    # t^2 = (T_0 + T_2)/2; under the (1/pi) integral that reads 1/2 and 1/4
    c = chebyshev_coefficients(FRAME, 32, 4096)
    assert c.values[0] == pytest.approx(0.5, abs=1e-10)
    assert c.values[2] == pytest.approx(0.25, abs=1e-10)
    assert np.all(np.abs(c.values[[1, 3]]) <= 1e-10)
    assert np.all(np.abs(c.values[4:]) <= 1e-10)


def test_node_checks():
    with pytest.raises(InsufficientNodes):
        chebyshev_coefficients(ACUTE, 64, 128)
    with pytest.raises(InsufficientNodes):
        chebyshev_coefficients(ACUTE, 4, 100)
    with pytest.raises(InsufficientNodes):
        fourier_cosine_coefficients(ACUTE, 4, 32)


def test_fourier_matches_chebyshev():
    c = chebyshev_coefficients(ACUTE)
    f = fourier_cosine_coefficients(ACUTE)
    assert np.max(np.abs(c.values - f.values)) <= 1e-9
    assert f.values[0] == pytest.approx(math.pi / 4, abs=1e-8)
    assert f.values[2] == pytest.approx(-1 / math.pi, abs=1e-8)
    assert f.values[6] == pytest.approx(-1 / (9 * math.pi), abs=1e-8)


def test_fourier_triangle_wave_directly():
    # G(th) = min(|th|, pi - |th|) sampled directly, not through F(cos th)
    f = fourier_cosine_coefficients(ACUTE, 20, 1024)
    for n in range(21):
        g = lambda th: min(abs(th), math.pi - abs(th)) * math.cos(n * th)
        ref = integrate.quad(g, 0, math.pi, points=[math.pi / 2], epsabs=1e-13)[0] / math.pi
        assert f.values[n] == pytest.approx(ref, abs=1e-11)


def test_geodesic_sawtooth():
    # |th| = pi/2 - (4/pi) sum_{odd n} cos(n th)/n^2; the (1/pi) integral is half of that
    f = fourier_cosine_coefficients(GEODESIC, 64, 4096)
    assert f.values[0] == pytest.approx(math.pi / 2, abs=1e-10)
    for n in range(1, 65):
        expected = -2 / (math.pi * n * n) if n % 2 else 0.0
        assert f.values[n] == pytest.approx(expected, abs=1e-10)
    # reconstruction with the doubled n >= 1 terms gives the classical series back
    th = np.linspace(-3, 3, 7)
    partial = chebyshev_series(fourier_cosine_coefficients(GEODESIC, 512, 4096), np.cos(th))
    assert np.max(np.abs(partial - np.abs(th))) < 3e-3


def test_constant_potential():
    f = fourier_cosine_coefficients(Potential("constant", 2.5), 16, 256)
    assert f.values[0] == pytest.approx(2.5, abs=1e-13)
    assert np.all(np.abs(f.values[1:]) <= 1e-13)


def test_negative_definiteness():
    assert is_negative_definite_s1(chebyshev_coefficients(ACUTE))
    assert not is_negative_definite_s1(chebyshev_coefficients(FRAME))
    assert is_negative_definite_s1(fourier_cosine_coefficients(Potential("constant", 1.0)))
    with pytest.raises(WrongBasis):
        is_negative_definite_s1(gegenbauer_coefficients(ACUTE, 2))


def test_equispaced_maximizer():
    f = fourier_cosine_coefficients(ACUTE)
    assert check_equispaced_maximizer(f, 4)
    assert not check_equispaced_maximizer(f, 2)
    z = fourier_cosine_coefficients(ZERO)
    assert all(check_equispaced_maximizer(z, n) for n in range(1, 9))
    with pytest.raises(WrongBasis):
        check_equispaced_maximizer(chebyshev_coefficients(ACUTE), 4)


def test_equispaced_verdicts_acute():
    f = fourier_cosine_coefficients(ACUTE)
    # only multiples of 4 among N <= 8 avoid negative coefficients at n = 2 mod 4 multiples
    assert [check_equispaced_maximizer(f, n) for n in range(1, 9)] == [
        False, False, False, True, False, False, False, True]


def test_energy_via_fourier_sigma4():
    f = fourier_cosine_coefficients(ACUTE)
    assert energy_via_fourier(equispaced_measure(4), f) == pytest.approx(math.pi / 4, abs=1e-8)


def test_energy_via_fourier_point_mass():
    f = fourier_cosine_coefficients(ACUTE, 256, 4096)
    delta = DiscreteMeasure(1, [[1.0, 0.0]], [1.0])
    # sum over n = 2 mod 4 of 8/(pi n^2) is pi/4, which cancels the constant term
    n = np.arange(2, 200001, 4)
    assert np.sum(8 / (math.pi * n**2)) == pytest.approx(math.pi / 4, abs=1e-5)
    assert abs(energy_via_fourier(delta, f)) <= acute_tail_bound(256)


def test_energy_via_fourier_random(rng):
    f = fourier_cosine_coefficients(ACUTE, 512, 4096)
    for _ in range(5):
        mu = random_measure(rng, 1, 6)
        assert abs(energy_via_fourier(mu, f) - measure_energy(mu, ACUTE)) <= acute_tail_bound(512)


def test_symmetrized_energy_for_even_measure(rng):
    f = fourier_cosine_coefficients(ACUTE, 256, 4096)
    th = rng.uniform(0, math.pi, 3)
    pts = np.column_stack([np.cos(np.r_[th, -th]), np.sin(np.r_[th, -th])])
    mu = DiscreteMeasure(1, pts, np.full(6, 1 / 6))
    a = energy_via_fourier(mu, f, symmetric=True)
    b = energy_via_fourier(mu, f)
    assert a == pytest.approx(b, abs=1e-14)
    assert abs(a - measure_energy(mu, ACUTE)) <= acute_tail_bound(256)


def test_energy_via_fourier_checks():
    f = fourier_cosine_coefficients(ACUTE, 8, 64)
    with pytest.raises(WrongBasis):
        energy_via_fourier(equispaced_measure(4), chebyshev_coefficients(ACUTE, 8, 64))
    with pytest.raises(WrongDimension):
        energy_via_fourier(DiscreteMeasure(2, [[1.0, 0, 0]], [1.0]), f)


def test_gegenbauer_d1_is_chebyshev():
    g = gegenbauer_coefficients(ACUTE, 1)
    c = chebyshev_coefficients(ACUTE)
    assert np.max(np.abs(g.values - c.values)) <= 1e-9
    assert np.all(g.values[1:] <= 1e-9)


def test_gegenbauer_d2_legendre_index_two():
    # int_0^1 arccos(t)(3t^2 - 1) dt = 3 * 2/9 - 1 = -1/3, times (2n+1)/2 = 5/2
    g = gegenbauer_coefficients(ACUTE, 2)
    assert g.values[2] == pytest.approx(-5 / 6, abs=1e-8)


def test_gegenbauer_d2_against_adaptive_legendre():
    g = gegenbauer_coefficients(ACUTE, 2, 12, 4096)
    for n in range(13):
        ref = integrate.quad(lambda t: math.acos(abs(t)) * eval_legendre(n, t), -1, 1,
                             points=[0.0], limit=200, epsabs=1e-13)[0] * (2 * n + 1) / 2
        assert g.values[n] == pytest.approx(ref, abs=1e-8)


def test_gegenbauer_d2_not_negative_definite():
    g = gegenbauer_coefficients(ACUTE, 2, 64)
    assert np.any(g.values[1:] > 1e-6)
    assert g.values[4] > 1e-6


@pytest.mark.parametrize("d", [2, 3, 4, 6])
def test_gegenbauer_reconstructs_frame(d):
    # t^2 has only degrees 0 and 2; the constant term is its sphere average 1/(d+1)
    g = gegenbauer_coefficients(FRAME, d, 8, 256)
    assert g.values[0] == pytest.approx(1 / (d + 1), abs=1e-12)
    assert np.all(np.abs(np.delete(g.values, [0, 2])) <= 1e-12)
    assert g.values[2] > 0


@pytest.mark.parametrize("basis", ["chebyshev", "fourier", "gegenbauer2", "gegenbauer3"])
def test_parity_and_convergence(basis):
    def coeffs(nodes):
        if basis == "chebyshev":
            return chebyshev_coefficients(ACUTE, 64, nodes)
        if basis == "fourier":
            return fourier_cosine_coefficients(ACUTE, 64, nodes)
        return gegenbauer_coefficients(ACUTE, int(basis[-1]), 64, nodes)

    a, b = coeffs(4096), coeffs(8192)
    assert np.max(np.abs(a.values - b.values)) < 1e-10
    assert np.all(np.abs(a.values[1::2]) < 1e-10)


def test_chebyshev_reconstruction_converges():
    t = np.linspace(-1, 1, 101)
    errs = []
    for nmax in (16, 64, 256):
        c = chebyshev_coefficients(ACUTE, nmax, 4096)
        errs.append(np.max(np.abs(chebyshev_series(c, t) - ACUTE(t))))
    assert errs[0] > errs[1] > errs[2]
    assert errs[2] < 0.01
