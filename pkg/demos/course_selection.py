# The same highway graph, driven twice: a student registering for 2 of 4
# courses, where the first pick disappears from the catalogue before the
# second round.  Payoffs for the four courses: 0, 4, 1, 1.
#
# Modeling quirk to keep in mind: the first pick is averaged uniformly
# (weight 1/n) regardless of strategy; only the second round is driven
# with the stationary alpha or the counting rule.

from absentdriver import (
    SelectionProblem,
    counting_round_values,
    optimize_two_round,
    round_breakdowns,
    selection_improvement,
    two_round_average_polynomial,
    two_round_counting_total,
)

courses = SelectionProblem((0, 4, 1, 1))

print("per-first-choice totals with a stationary second round:")
for b in round_breakdowns(courses):
    print(f"  choice {b.first_choice}: first payoff {b.first_payoff:g}, "
          f"total coefficients {b.total_polynomial.coeffs}")

avg = two_round_average_polynomial(courses)
print("\nuniform average polynomial:", avg.coeffs)  # (1/4)(10 + 6a - 6a^2)

best = optimize_two_round(courses)
print(f"best stationary alpha: {best.alpha_star:g}, total payoff {best.payoff_star:g}")

print("\ncounting (uniform) second round, per first choice:")
for first, second in counting_round_values(courses):
    print(f"  {first:g} + {second:.6g} = {first + second:.6g}")
print("counting average total:", two_round_counting_total(courses))

# 3 versus 23/8: the uniform rule wins by exactly 1/8 here.
print("improvement of counting over the optimized alpha:",
      selection_improvement(courses))

# The sign flips when one course carries all the value: always-exit-first
# collects 10 every time, while uniform picks dilute it.
concentrated = SelectionProblem((10, 0, 0, 0))
print("\nconcentrated payoffs improvement:", selection_improvement(concentrated))
