"""Quadratic majorant of arccos|t|, the resulting energy bound, dimension reduction."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .constructions import conjectured_value
from .core import FejesTothError
from .discrepancy import max_energy_bound_s1

B_THEOREM = 69 / 50
CRITICAL_BRACKET = (1.38, 1.40)
GAP_TOL = 1e-6


class InvalidB(FejesTothError):
    kind = "invalid_b"


class BracketInvalid(FejesTothError):
    kind = "bracket_invalid"


class InvalidInput(FejesTothError):
    kind = "invalid_input"


class InconsistentBounds(FejesTothError):
    kind = "inconsistent_bounds"


def margin(t, b: float = B_THEOREM):
    """pi/2 - b t^2 - arccos|t|; non-negative on [-1, 1] iff the majorant holds."""
    t = np.asarray(t, dtype=np.float64)
    return math.pi / 2 - b * t * t - np.arccos(np.clip(np.abs(t), 0.0, 1.0))


def interior_critical_point(b: float) -> float:
    """Location of the interior local minimum of the margin on (0, 1), b >= 1."""
    root = b + math.sqrt(b * b - 1)
    return math.sqrt(root / (2 * b))


def condition(b: float) -> float:
    """Closed-form margin at its interior local minimum (defined for b >= 1)."""
    if b < 1:
        raise InvalidB("the critical-point condition needs b >= 1")
    root = b + math.sqrt(b * b - 1)
    return math.pi / 2 - root / 2 - math.acos(math.sqrt(root / (2 * b)))


@dataclass
class MajorantReport:
    b: float
    min_margin: float
    argmin_t: float
    grid_size: int
    condition_value: float | None

    def to_dict(self):
        return asdict(self)


def majorant_margin(b: float, grid: int = 10**6) -> MajorantReport:
    """Minimum of the margin over a uniform grid on [0, 1] plus the analytic critical point.

    ``condition_value`` is None when b < 1, where the margin has no interior
    critical point.
    """
    if not b > 0:
        raise InvalidB("b must be positive")
    if grid < 2:
        raise FejesTothError("grid needs at least two points")
    t = np.linspace(0.0, 1.0, grid)
    cond = None
    if b >= 1:
        t = np.append(t, interior_critical_point(b))
        cond = condition(b)
    m = margin(t, b)
    i = int(np.argmin(m))
    return MajorantReport(b, float(m[i]), float(t[i]), grid, cond)


def margin_curve(b: float = B_THEOREM, grid: int = 1001):
    t = np.linspace(0.0, 1.0, grid)
    return t, margin(t, b)


def critical_b(tolerance: float = 1e-10) -> float:
    """Largest b for which the quadratic majorant still holds, by bisection."""
    if not 0 < tolerance <= 1e-3:
        raise FejesTothError("tolerance must lie in (0, 1e-3]")
    lo, hi = CRITICAL_BRACKET
    if condition(lo) <= 0 or condition(hi) >= 0:
        raise BracketInvalid(f"condition does not change sign on [{lo}, {hi}]")
    while hi - lo > tolerance:
        mid = (lo + hi) / 2
        if condition(mid) > 0:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def theorem_applies(d: int) -> bool:
    return d >= 2


def theorem_bound(d: int, b: float = B_THEOREM) -> float:
    """pi/2 - b/(d+1). Proven only for d >= 2; see :func:`theorem_applies`."""
    if d < 1:
        raise InvalidInput("dimension must be at least 1")
    return math.pi / 2 - b / (d + 1)


def dimension_reduction_bound(m_d: float) -> float:
    """Upper bound pi - pi^2/(4 M_d) on the maximal energy one dimension down."""
    if not 0 < m_d < math.pi:
        raise InvalidInput("M_d must lie in (0, pi)")
    return math.pi - math.pi**2 / (4 * m_d)


def gap_report(d: int, n: int, best_found: float, tol: float = GAP_TOL) -> dict:
    """Place an optimizer result between the conjectured value and the proven bound."""
    conj = conjectured_value(d, n)
    if d >= 2:
        upper, source = theorem_bound(d), "theorem"
    else:
        upper, source = max_energy_bound_s1(n), "stolarsky_s1"
    if best_found > upper + tol:
        raise InconsistentBounds(
            f"energy {best_found!r} exceeds the proven bound {upper!r}"
        )
    return {
        "dim": d,
        "n": n,
        "conjectured_value": conj,
        "best_found": best_found,
        "upper_bound": upper,
        "upper_bound_source": source,
        "gap": conj - best_found,
        "sandwich_holds": bool(conj <= best_found + tol and best_found <= upper + tol),
    }
