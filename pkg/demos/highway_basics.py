# A driver leaves a bar and has to pick a highway exit, but every
# intersection looks the same to them.  Exit 1 is hazardous (payoff 0),
# exit 2 is home (payoff 4), and missing both means a night in a hotel
# at the end of the road (payoff 1).
#
# This script walks through the basic machinery: distributions, expected
# payoffs, the payoff polynomial in the exit probability, and its optimum.

import numpy as np

from absentdriver import (
    Counting,
    Stationary,
    destination_distribution,
    expected_payoff,
    make_drive_problem,
    optimize_stationary,
    stationary_payoff_polynomial,
)

two_exits = make_drive_problem([0, 4], 1)
print("destinations:", two_exits.destination_payoffs)

# With no memory at all, the driver can only commit to one exit
# probability `alpha` and apply it everywhere.
for alpha in (0.0, 0.25, 1 / 3, 0.5, 1.0):
    dist = destination_distribution(two_exits, Stationary(alpha))
    print(
        f"alpha={alpha:.4f}  dist={np.round(dist.probs, 4)}  "
        f"payoff={expected_payoff(two_exits, Stationary(alpha)):.6f}"
    )

# The expected payoff is a polynomial in alpha; here 1 + 2a - 3a^2.
poly = stationary_payoff_polynomial(two_exits)
print("\npolynomial coefficients (c0, c1, ...):", poly.coeffs)

best = optimize_stationary(two_exits)
print(f"optimum: alpha*={best.alpha_star:.6f} payoff={best.payoff_star:.6f} ({best.method})")

# Growing the highway by one more payoff-1 exit changes nothing: the
# polynomial's cubic term cancels and the optimum stays at (1/3, 4/3).
three_exits = make_drive_problem([0, 4, 1], 1)
print("\nlarger problem coefficients:", stationary_payoff_polynomial(three_exits).coeffs)
print("larger problem optimum:", optimize_stationary(three_exits))

# Now give the car (not the driver) a counter.  Exiting with probability
# 1/k, then 1/(k-1), ... spreads the arrivals perfectly evenly over the
# k destinations -- no payoff knowledge needed.
for problem, label in ((two_exits, "two exits"), (three_exits, "three exits")):
    dist = destination_distribution(problem, Counting())
    print(f"\ncounting on {label}: dist={np.round(dist.probs, 4)}")
    print(f"counting payoff: {expected_payoff(problem, Counting()):.6f}")

# On both examples the uniform counting strategy beats the best memoryless
# alpha (5/3 > 4/3 and 3/2 > 4/3).  That advantage is example-specific,
# not a theorem: pile the value onto the first exit and alpha=1 wins.
lopsided = make_drive_problem([10, 0], 0)
print("\nlopsided problem, always exit:", expected_payoff(lopsided, Stationary(1.0)))
print("lopsided problem, counting:   ", expected_payoff(lopsided, Counting()))
