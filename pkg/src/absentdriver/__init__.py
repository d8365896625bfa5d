"""Exit strategies for a driver who cannot tell highway intersections apart.

The package models the classic imperfect-recall drive: ``m`` identical-looking
exits with payoffs, a terminal payoff for missing them all, and strategies
that may not condition on position.  It evaluates classical strategies in
closed form, optimizes the stationary exit probability, scores quantum
measurement plans on a small statevector engine, handles the two-round
"pick 2 of n" extension, and cross-checks everything with a seeded Monte
Carlo simulator.
"""

from .classical import (
    DestinationDistribution,
    PayoffPolynomial,
    destination_distribution,
    expected_payoff,
    stationary_payoff_polynomial,
    step_exit_probabilities,
)
from .model import (
    ClassicalStrategy,
    Counting,
    DriveProblem,
    PerStep,
    Quantum,
    SelectionProblem,
    Stationary,
    Strategy,
    exit_probability,
    make_drive_problem,
)
from .optimize import (
    OptimizationResult,
    maximize_polynomial,
    numeric_maximize,
    optimize_stationary,
)
from .quantum import (
    BasisTerm,
    StateVector,
    build_state,
    first_zero_destinations,
    first_zero_distribution,
    product_state,
    quantum_expected_payoff,
)
from .scenario import (
    NamedStrategy,
    Scenario,
    ScenarioError,
    ScenarioOptions,
    parse_scenario,
    preset_scenario,
    scenario_to_document,
)
from .selection import (
    RoundBreakdown,
    counting_round_values,
    optimize_two_round,
    residual_problem,
    round_breakdowns,
    selection_improvement,
    two_round_average_polynomial,
    two_round_counting_total,
)
from .simulate import SimulationReport, estimate_payoff, simulate_drive

__version__ = "0.1.0"

__all__ = [
    "BasisTerm",
    "ClassicalStrategy",
    "Counting",
    "DestinationDistribution",
    "DriveProblem",
    "NamedStrategy",
    "OptimizationResult",
    "PayoffPolynomial",
    "PerStep",
    "Quantum",
    "RoundBreakdown",
    "Scenario",
    "ScenarioError",
    "ScenarioOptions",
    "SelectionProblem",
    "SimulationReport",
    "StateVector",
    "Stationary",
    "Strategy",
    "build_state",
    "counting_round_values",
    "destination_distribution",
    "estimate_payoff",
    "exit_probability",
    "expected_payoff",
    "first_zero_destinations",
    "first_zero_distribution",
    "make_drive_problem",
    "maximize_polynomial",
    "numeric_maximize",
    "optimize_stationary",
    "optimize_two_round",
    "parse_scenario",
    "preset_scenario",
    "product_state",
    "quantum_expected_payoff",
    "residual_problem",
    "round_breakdowns",
    "scenario_to_document",
    "selection_improvement",
    "simulate_drive",
    "stationary_payoff_polynomial",
    "step_exit_probabilities",
    "two_round_average_polynomial",
    "two_round_counting_total",
]
