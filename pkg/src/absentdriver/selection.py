"""Two-round destination selection: pick one, strike it out, drive again.

Modeling note, stated up front because it is easy to miss: the FIRST pick is
always averaged uniformly, weight ``1/n`` per destination, no matter which
strategy is being scored.  Only the second round is driven with the strategy
under study (stationary ``alpha`` or counting).  The second round is an
ordinary drive problem over the ``n - 1`` survivors, whose last entry plays
the terminal role.
"""

from __future__ import annotations

from dataclasses import dataclass

from .classical import PayoffPolynomial, expected_payoff, stationary_payoff_polynomial
from .model import Counting, DriveProblem, SelectionProblem
from .optimize import OptimizationResult, maximize_polynomial


@dataclass(frozen=True)
class RoundBreakdown:
    """One first-choice branch: its payoff and the second-round polynomial."""

    first_choice: int
    first_payoff: float
    second_round_polynomial: PayoffPolynomial
    total_polynomial: PayoffPolynomial


def _as_drive(sel: SelectionProblem) -> DriveProblem:
    payoffs = sel.destination_payoffs
    return DriveProblem(payoffs[:-1], payoffs[-1])


def residual_problem(problem: DriveProblem, removed: int) -> DriveProblem:
    """The drive problem left after destination ``removed`` (1-based) is taken.

    Remaining destinations keep their order; the last survivor becomes the
    new terminal.  Removing one of only two destinations leaves a forced
    single-destination problem with a constant payoff.
    """
    k = problem.num_destinations
    if not 1 <= removed <= k:
        raise ValueError(f"bad destination: {removed} not in 1..{k}")
    remaining = list(problem.destination_payoffs)
    del remaining[removed - 1]
    return DriveProblem(tuple(remaining[:-1]), remaining[-1])


def round_breakdowns(sel: SelectionProblem) -> tuple[RoundBreakdown, ...]:
    """Per-first-choice totals for the stationary second round, as polynomials."""
    drive = _as_drive(sel)
    out = []
    for choice in range(1, sel.num_destinations + 1):
        first_payoff = sel.destination_payoffs[choice - 1]
        second = stationary_payoff_polynomial(residual_problem(drive, choice))
        out.append(RoundBreakdown(choice, first_payoff, second, second + first_payoff))
    return tuple(out)


def two_round_average_polynomial(sel: SelectionProblem) -> PayoffPolynomial:
    """Uniform average over first choices of the per-choice total polynomials."""
    breakdowns = round_breakdowns(sel)
    total = breakdowns[0].total_polynomial
    for b in breakdowns[1:]:
        total = total + b.total_polynomial
    return total * (1.0 / sel.num_destinations)


def optimize_two_round(sel: SelectionProblem) -> OptimizationResult:
    """Best stationary ``alpha`` for the averaged two-round payoff."""
    return maximize_polynomial(two_round_average_polynomial(sel))


def counting_round_values(sel: SelectionProblem) -> tuple[tuple[float, float], ...]:
    """Per first choice: (first payoff, counting payoff of the residual round).

    The counting strategy hits each survivor with equal probability, so the
    second entry is the mean of the remaining payoffs.
    """
    drive = _as_drive(sel)
    return tuple(
        (
            sel.destination_payoffs[choice - 1],
            expected_payoff(residual_problem(drive, choice), Counting()),
        )
        for choice in range(1, sel.num_destinations + 1)
    )


def two_round_counting_total(sel: SelectionProblem) -> float:
    """Uniform average over first choices of first payoff plus counting round."""
    values = counting_round_values(sel)
    return sum(first + second for first, second in values) / sel.num_destinations


def selection_improvement(sel: SelectionProblem) -> float:
    """Counting total minus the optimized stationary total; can be negative."""
    return two_round_counting_total(sel) - optimize_two_round(sel).payoff_star
