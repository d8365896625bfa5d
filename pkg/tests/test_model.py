import math

import pytest
from hypothesis import given, strategies as st

from absentdriver import (
    Counting,
    PerStep,
    Quantum,
    SelectionProblem,
    Stationary,
    build_state,
    exit_probability,
    make_drive_problem,
)


class TestMakeDriveProblem:
    def test_example1_shape(self):
        problem = make_drive_problem([0, 4], 1)
        assert problem.exit_payoffs == (0.0, 4.0)
        assert problem.terminal_payoff == 1.0
        assert problem.num_destinations == 3

    def test_example2_shape(self):
        problem = make_drive_problem([0, 4, 1], 1)
        assert problem.num_intersections == 3
        assert problem.num_destinations == 4
        assert problem.destination_payoffs == (0.0, 4.0, 1.0, 1.0)

    def test_empty_exits_rejected(self):
        with pytest.raises(ValueError, match="degenerate problem"):
            make_drive_problem([], 1)

    @pytest.mark.parametrize("bad", [float("nan"), float("inf"), -float("inf")])
    def test_non_finite_payoff_rejected(self, bad):
        with pytest.raises(ValueError, match="invalid payoff"):
            make_drive_problem([0, bad], 1)
        with pytest.raises(ValueError, match="invalid payoff"):
            make_drive_problem([0, 1], bad)

    def test_immutable(self):
        problem = make_drive_problem([0, 4], 1)
        with pytest.raises(AttributeError):
            problem.terminal_payoff = 2.0


class TestSelectionProblem:
    def test_needs_two_destinations(self):
        with pytest.raises(ValueError, match="degenerate problem"):
            SelectionProblem((1.0,))

    def test_only_two_rounds(self):
        with pytest.raises(ValueError, match="two-round"):
            SelectionProblem((1.0, 2.0, 3.0), rounds=3)

    def test_example_payoffs(self):
        sel = SelectionProblem((0, 4, 1, 1))
        assert sel.num_destinations == 4
        assert sel.rounds == 2


class TestStrategyValidation:
    @pytest.mark.parametrize("alpha", [-0.1, 1.1, float("nan")])
    def test_stationary_alpha_range(self, alpha):
        with pytest.raises(ValueError, match="probability"):
            Stationary(alpha)

    def test_per_step_entries_checked(self):
        with pytest.raises(ValueError, match="probability"):
            PerStep((0.5, 1.5))


class TestExitProbability:
    def test_counting_first_of_four(self):
        assert exit_probability(Counting(), 1, 4) == pytest.approx(0.25)

    def test_counting_last_branch_is_half(self):
        assert exit_probability(Counting(), 3, 4) == pytest.approx(0.5)

    def test_stationary_zero_never_exits(self):
        for i in range(1, 5):
            assert exit_probability(Stationary(0.0), i, 6) == 0.0

    def test_stationary_constant_across_steps(self):
        assert [exit_probability(Stationary(0.3), i, 5) for i in range(1, 5)] == [0.3] * 4

    def test_per_step_indexing(self):
        strategy = PerStep((0.1, 0.2, 0.3))
        assert exit_probability(strategy, 2, 4) == 0.2

    def test_per_step_length_mismatch(self):
        with pytest.raises(ValueError, match="strategy/problem mismatch"):
            exit_probability(PerStep((0.1, 0.2)), 1, 4)

    @pytest.mark.parametrize("i,k", [(0, 3), (3, 3), (-1, 4), (5, 4)])
    def test_bad_index(self, i, k):
        with pytest.raises(ValueError, match="bad index"):
            exit_probability(Stationary(0.5), i, k)

    def test_quantum_has_no_marginal(self):
        strategy = Quantum(build_state([("01", 1), ("10", 1)], normalize=True))
        with pytest.raises(ValueError, match="no stepwise marginal"):
            exit_probability(strategy, 1, 3)

    @given(k=st.integers(min_value=2, max_value=40), data=st.data())
    def test_counting_induces_uniform_destinations(self, k, data):
        # (1 - 1/k)(1 - 1/(k-1))...(1 - 1/(k-i+1)) * 1/(k-i) == 1/k for every i
        i = data.draw(st.integers(min_value=1, max_value=k - 1))
        reach = math.prod(1.0 - exit_probability(Counting(), j, k) for j in range(1, i))
        prob = reach * exit_probability(Counting(), i, k)
        assert prob == pytest.approx(1.0 / k, abs=1e-12)

    def test_deterministic(self):
        assert exit_probability(Counting(), 2, 7) == exit_probability(Counting(), 2, 7)
