"""Seeded Monte Carlo runs of the drive, for cross-checking the closed forms.

Determinism contract: a report depends only on ``(seed, trials, problem,
strategy)``.  Trials are split into fixed blocks of 65536; block ``b`` draws
from numpy's PCG64 generator seeded with ``SeedSequence([seed, b])``, and the
per-block tallies are plain integer destination counts, so any execution
order - serial or parallel - merges to bit-identical reports.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .classical import DestinationDistribution, step_exit_probabilities
from .model import DriveProblem, Quantum, Strategy
from .quantum import first_zero_destinations

BLOCK_SIZE = 1 << 16
_MAX_SEED = 2**64


@dataclass(frozen=True)
class SimulationReport:
    """Summary of one batch of trials."""

    trials: int
    mean_payoff: float
    std_error: float
    empirical_distribution: DestinationDistribution
    seed: int


def _block_rng(seed: int, block: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, block]))


def _quantum_tables(problem: DriveProblem, strategy: Quantum) -> tuple[np.ndarray, np.ndarray]:
    state = strategy.state
    if state.num_qubits != problem.num_intersections:
        raise ValueError(
            "strategy/problem mismatch: "
            f"{state.num_qubits} qubits for {problem.num_intersections} intersections"
        )
    return np.cumsum(state.probabilities), first_zero_destinations(state.num_qubits)


def simulate_drive(problem: DriveProblem, strategy: Strategy, rng: np.random.Generator) -> int:
    """One trip down the highway; returns the destination index (1-based).

    Classical strategies walk the intersections drawing one uniform per step;
    quantum strategies sample a basis string by inverse CDF over
    ``|amplitude|**2`` and return its first-zero destination.
    """
    if isinstance(strategy, Quantum):
        cum, dest = _quantum_tables(problem, strategy)
        index = int(np.searchsorted(cum, rng.random(), side="right"))
        return int(dest[min(index, dest.size - 1)])
    steps = step_exit_probabilities(problem, strategy)
    for i, p in enumerate(steps):
        if rng.random() < p:
            return i + 1
    return problem.num_destinations


def estimate_payoff(
    problem: DriveProblem, strategy: Strategy, trials: int, seed: int
) -> SimulationReport:
    """Mean payoff, standard error, and empirical distribution over ``trials`` runs."""
    if trials < 1:
        raise ValueError(f"no trials: trials must be >= 1, got {trials}")
    if not 0 <= seed < _MAX_SEED:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")

    k = problem.num_destinations
    m = problem.num_intersections
    quantum = isinstance(strategy, Quantum)
    if quantum:
        cum, dest_table = _quantum_tables(problem, strategy)
    else:
        steps = step_exit_probabilities(problem, strategy)

    counts = np.zeros(k, dtype=np.int64)
    for block in range((trials + BLOCK_SIZE - 1) // BLOCK_SIZE):
        n = min(BLOCK_SIZE, trials - block * BLOCK_SIZE)
        rng = _block_rng(seed, block)
        if quantum:
            index = np.searchsorted(cum, rng.random(n), side="right")
            dest = dest_table[np.minimum(index, dest_table.size - 1)]
        else:
            exited = rng.random((n, m)) < steps
            hit = exited.any(axis=1)
            dest = np.where(hit, exited.argmax(axis=1) + 1, k)
        counts += np.bincount(dest - 1, minlength=k)

    payoffs = np.asarray(problem.destination_payoffs)
    total = float(counts @ payoffs)
    total_sq = float(counts @ payoffs**2)
    mean = total / trials
    if trials > 1:
        variance = max(total_sq - trials * mean * mean, 0.0) / (trials - 1)
    else:
        variance = 0.0
    return SimulationReport(
        trials=trials,
        mean_payoff=mean,
        std_error=float(np.sqrt(variance / trials)),
        empirical_distribution=DestinationDistribution(counts / trials),
        seed=seed,
    )
