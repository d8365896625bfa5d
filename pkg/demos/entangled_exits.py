# What changes if the driver can order qubits at the planning stage and
# measure one at each intersection (exit on 0, keep driving on 1)?
#
# Unentangled qubits buy nothing: a product state reproduces the classical
# stationary strategy exactly.  Entangled ones correlate the decisions
# across intersections and beat every memoryless classical plan.

import numpy as np

from absentdriver import (
    Stationary,
    build_state,
    destination_distribution,
    first_zero_distribution,
    make_drive_problem,
    product_state,
    quantum_expected_payoff,
)

problem = make_drive_problem([0, 4], 1)

# One qubit per intersection, all identical and independent: same numbers
# as the classical alpha strategy.
for alpha in (0.2, 1 / 3, 0.8):
    quantum = first_zero_distribution(product_state(alpha, 2))
    classical = destination_distribution(problem, Stationary(alpha))
    print(
        f"alpha={alpha:.4f}  product-state dist={np.round(quantum.probs, 6)}  "
        f"classical dist={np.round(classical.probs, 6)}"
    )

# A fully entangled pair: measuring 0 first (exit 1) or 1 first, in which
# case the second measurement is certainly 0 (exit 2).  The terminal is
# unreachable, and the average payoff jumps from 4/3 to 2.
bell = build_state([("01", 1), ("10", 1)], normalize=True)
print("\nentangled pair dist:", first_zero_distribution(bell).probs)
print("entangled pair payoff:", quantum_expected_payoff(problem, bell))

# Three intersections, valuable third exit, befuddled driver: this state
# guarantees that skipping the first exit forces a third-exit arrival.
lopsided = make_drive_problem([7, 99, 3], 0)
skip_two = build_state([("001", 1), ("110", 1)], normalize=True)
print("\nskip-two dist:", first_zero_distribution(skip_two).probs)
print("skip-two payoff (average of exits 1 and 3):",
      quantum_expected_payoff(lopsided, skip_two))

# Writing the exit number into the state makes the trip deterministic,
# but that is just a counter in quantum clothing -- a classical car
# counting exits achieves the same thing.
third = build_state([("110", 1)])
print("\n|110> dist:", first_zero_distribution(third).probs)
print("|110> payoff on the three-exit problem:",
      quantum_expected_payoff(make_drive_problem([0, 4, 1], 1), third))

# Phases do not matter: only |amplitude|^2 enters the exit rule.
rotated = build_state([("01", 1j), ("10", -1j)], normalize=True)
print("\nphase-rotated pair dist:", first_zero_distribution(rotated).probs)
