"""Exact evaluation of classical exit strategies.

Everything here is closed form.  With per-step exit probabilities
``p_1..p_m`` the destination distribution is the product form

    P(exit i)   = (1 - p_1) ... (1 - p_{i-1}) * p_i
    P(terminal) = (1 - p_1) ... (1 - p_m)

and for the stationary strategy (all ``p_j = alpha``) the expected payoff
expands into a polynomial in ``alpha``, which is what the optimizer works on.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as npoly

from .model import DriveProblem, Strategy, exit_probability

# Entries this close to 0 or 1 are treated as rounding and clamped; anything
# further out is a logic bug, not noise.
_CLAMP = 1e-15
_SUM_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class DestinationDistribution:
    """Probabilities over destinations ``1..k`` (exits in order, then terminal)."""

    probs: np.ndarray

    def __post_init__(self) -> None:
        probs = np.array(self.probs, dtype=float)
        if probs.ndim != 1 or probs.size == 0:
            raise ValueError("distribution must be a non-empty 1-d probability vector")
        probs[(probs >= -_CLAMP) & (probs < 0.0)] = 0.0
        probs[(probs > 1.0) & (probs <= 1.0 + _CLAMP)] = 1.0
        if ((probs < 0.0) | (probs > 1.0)).any():
            raise ValueError("internal error: probability outside [0, 1] beyond rounding")
        if abs(probs.sum() - 1.0) > _SUM_TOL:
            raise ValueError(f"internal error: distribution sums to {probs.sum()!r}, not 1")
        probs.setflags(write=False)
        object.__setattr__(self, "probs", probs)

    @property
    def num_destinations(self) -> int:
        return int(self.probs.size)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DestinationDistribution):
            return NotImplemented
        return np.array_equal(self.probs, other.probs)


@dataclass(frozen=True)
class PayoffPolynomial:
    """Expected payoff of the stationary strategy, as coefficients ``c0..cm``.

    ``coeffs[j]`` multiplies ``alpha**j``.  Trailing zero coefficients are
    kept as given (the degree-``m`` term of an ``m``-intersection problem can
    cancel exactly).
    """

    coeffs: tuple[float, ...]

    def __post_init__(self) -> None:
        coeffs = tuple(float(c) for c in self.coeffs)
        if not coeffs:
            raise ValueError("polynomial needs at least one coefficient")
        if not np.isfinite(coeffs).all():
            raise ValueError("polynomial coefficients must be finite")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, alpha):
        """Evaluate at a scalar or array of ``alpha`` values."""
        return npoly.polyval(alpha, self.coeffs)

    def derivative(self) -> "PayoffPolynomial":
        if len(self.coeffs) == 1:
            return PayoffPolynomial((0.0,))
        return PayoffPolynomial(tuple(j * c for j, c in enumerate(self.coeffs) if j > 0))

    def __add__(self, other: "PayoffPolynomial | float") -> "PayoffPolynomial":
        if isinstance(other, (int, float)):
            return PayoffPolynomial((self.coeffs[0] + other, *self.coeffs[1:]))
        if isinstance(other, PayoffPolynomial):
            n = max(len(self.coeffs), len(other.coeffs))
            a = np.zeros(n)
            a[: len(self.coeffs)] += self.coeffs
            a[: len(other.coeffs)] += other.coeffs
            return PayoffPolynomial(tuple(a))
        return NotImplemented

    __radd__ = __add__

    def __mul__(self, factor: float) -> "PayoffPolynomial":
        if not isinstance(factor, (int, float)):
            return NotImplemented
        return PayoffPolynomial(tuple(c * factor for c in self.coeffs))

    __rmul__ = __mul__


def step_exit_probabilities(problem: DriveProblem, strategy: Strategy) -> np.ndarray:
    """Per-intersection exit probabilities induced by a classical strategy.

    Raises the same errors as :func:`absentdriver.model.exit_probability`
    for quantum or mismatched strategies.
    """
    k = problem.num_destinations
    if k == 1:
        return np.zeros(0)
    return np.array([exit_probability(strategy, i, k) for i in range(1, k)])


def destination_distribution(problem: DriveProblem, strategy: Strategy) -> DestinationDistribution:
    """Exact distribution over destinations for a classical strategy."""
    steps = step_exit_probabilities(problem, strategy)
    # keep[i] = probability of still driving after the first i intersections
    keep = np.concatenate(([1.0], np.cumprod(1.0 - steps)))
    return DestinationDistribution(np.append(keep[:-1] * steps, keep[-1]))


def expected_payoff(problem: DriveProblem, strategy: Strategy) -> float:
    """Expected payoff of a classical strategy: distribution dotted with payoffs."""
    dist = destination_distribution(problem, strategy)
    return float(dist.probs @ np.asarray(problem.destination_payoffs))


def stationary_payoff_polynomial(problem: DriveProblem) -> PayoffPolynomial:
    """Expand ``sum_i v_i (1-a)^(i-1) a + v_terminal (1-a)^m`` in powers of ``a``.

    The expansion is an exact convolution of ``(1, -1)`` factors, so problems
    with small integer payoffs get exact integer coefficients.
    """
    m = problem.num_intersections
    coeffs = np.zeros(m + 1)
    survive = np.array([1.0])  # coefficients of (1 - a)**(i-1)
    for payoff in problem.exit_payoffs:
        term = np.convolve(survive, [0.0, 1.0])  # multiply by a
        coeffs[: term.size] += payoff * term
        survive = np.convolve(survive, [1.0, -1.0])
    coeffs[: survive.size] += problem.terminal_payoff * survive
    return PayoffPolynomial(tuple(coeffs))
