"""Maximizing expected payoff over the stationary exit probability.

Candidates are always both endpoints of [0, 1] plus every real root of the
payoff polynomial's derivative strictly inside the interval; an interior
stationary point can just as well be a minimum.  Ties are broken toward the
smallest maximizer so results are deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .classical import PayoffPolynomial, stationary_payoff_polynomial
from .model import DriveProblem

# Seeding grid for the derivative-free search and for root isolation.
_GRID_SEGMENTS = 1000
_ROOT_SEGMENTS = 1001
_BISECT_WIDTH = 1e-15


@dataclass(frozen=True)
class OptimizationResult:
    """Maximizer, maximum, and which route produced them."""

    alpha_star: float
    payoff_star: float
    method: str  # "closed_form" or "numeric"


def _quadratic_roots(a: float, b: float, c: float) -> tuple[float, ...]:
    """Real roots of ``a x^2 + b x + c`` with ``a != 0``, numerically stable."""
    disc = b * b - 4.0 * a * c
    if disc < 0.0:
        return ()
    sq = math.sqrt(disc)
    q = -(b + math.copysign(sq, b)) / 2.0
    if q == 0.0:  # b == 0 and disc == 0: double root at the origin
        return (0.0,)
    return (q / a, c / q)


def _closed_form_roots(deriv: tuple[float, ...]) -> tuple[float, ...]:
    """Roots of a derivative of degree <= 2 (trailing zeros already trimmed)."""
    if len(deriv) == 1:
        return ()  # constant, possibly the zero polynomial
    if len(deriv) == 2:
        return (-deriv[0] / deriv[1],)
    return _quadratic_roots(deriv[2], deriv[1], deriv[0])


def _bisection_roots(deriv: tuple[float, ...]) -> tuple[float, ...]:
    """Roots in [0, 1] via sign changes over a fixed partition, then bisection."""
    xs = np.linspace(0.0, 1.0, _ROOT_SEGMENTS + 1)
    ys = np.polynomial.polynomial.polyval(xs, deriv)
    roots = [float(x) for x, y in zip(xs, ys) if y == 0.0]
    for x0, x1, y0, y1 in zip(xs[:-1], xs[1:], ys[:-1], ys[1:]):
        if y0 == 0.0 or y1 == 0.0 or (y0 > 0.0) == (y1 > 0.0):
            continue
        lo, hi, ylo = float(x0), float(x1), float(y0)
        while hi - lo > _BISECT_WIDTH:
            mid = (lo + hi) / 2.0
            ymid = float(np.polynomial.polynomial.polyval(mid, deriv))
            if ymid == 0.0:
                lo = hi = mid
                break
            if (ymid > 0.0) == (ylo > 0.0):
                lo, ylo = mid, ymid
            else:
                hi = mid
        roots.append((lo + hi) / 2.0)
    return tuple(roots)


def _best_candidate(values: Callable[[float], float], candidates) -> tuple[float, float]:
    """Smallest argument achieving the strictly greatest value."""
    best_x = None
    best_y = -math.inf
    for x in sorted(candidates):
        y = values(x)
        if y > best_y:
            best_x, best_y = x, y
    assert best_x is not None
    return best_x, best_y


def maximize_polynomial(poly: PayoffPolynomial) -> OptimizationResult:
    """Global maximum of the polynomial over [0, 1].

    Derivatives of degree <= 2 are solved in closed form; higher degrees fall
    back to sign-change bisection over a fixed partition of the interval.
    """
    deriv = poly.derivative().coeffs
    while len(deriv) > 1 and deriv[-1] == 0.0:
        deriv = deriv[:-1]
    if len(deriv) <= 3:
        interior = _closed_form_roots(deriv)
        method = "closed_form"
    else:
        interior = _bisection_roots(deriv)
        method = "numeric"
    candidates = {0.0, 1.0}
    candidates.update(r for r in interior if 0.0 < r < 1.0)
    alpha, payoff = _best_candidate(lambda x: float(poly(x)), candidates)
    return OptimizationResult(alpha, payoff, method)


def optimize_stationary(problem: DriveProblem) -> OptimizationResult:
    """Best stationary exit probability for a drive problem."""
    return maximize_polynomial(stationary_payoff_polynomial(problem))


def _checked(f: Callable[[float], float], x: float) -> float:
    y = float(f(x))
    if not math.isfinite(y):
        raise ValueError(f"objective error: f({x!r}) = {y!r}")
    return y


def numeric_maximize(f: Callable[[float], float], tolerance: float = 1e-10) -> OptimizationResult:
    """Derivative-free maximization of ``f`` over [0, 1].

    A 1001-point grid pass picks the starting basin (so multimodal objectives
    do not trap the search), then golden-section refinement shrinks the
    bracket to ``tolerance``.
    """
    if not tolerance > 0.0:
        raise ValueError(f"tolerance must be positive, got {tolerance!r}")
    xs = np.linspace(0.0, 1.0, _GRID_SEGMENTS + 1)
    ys = [_checked(f, float(x)) for x in xs]
    seed = int(np.argmax(ys))  # argmax takes the first, i.e. smallest alpha

    lo = float(xs[max(seed - 1, 0)])
    hi = float(xs[min(seed + 1, _GRID_SEGMENTS)])
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    c = hi - invphi * (hi - lo)
    d = lo + invphi * (hi - lo)
    yc = _checked(f, c)
    yd = _checked(f, d)
    evaluated = [(float(xs[seed]), ys[seed]), (c, yc), (d, yd)]
    while hi - lo > tolerance:
        if yc > yd:
            hi, d, yd = d, c, yc
            c = hi - invphi * (hi - lo)
            yc = _checked(f, c)
            evaluated.append((c, yc))
        else:
            lo, c, yc = c, d, yd
            d = lo + invphi * (hi - lo)
            yd = _checked(f, d)
            evaluated.append((d, yd))

    best_x = None
    best_y = -math.inf
    for x, y in sorted(evaluated):
        if y > best_y:
            best_x, best_y = x, y
    return OptimizationResult(best_x, best_y, "numeric")
