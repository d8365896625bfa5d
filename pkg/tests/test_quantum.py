import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from absentdriver import (
    BasisTerm,
    Stationary,
    StateVector,
    build_state,
    destination_distribution,
    first_zero_distribution,
    make_drive_problem,
    product_state,
    quantum_expected_payoff,
)

INV_SQRT2 = 1 / math.sqrt(2)

BELL_01_10 = [("01", INV_SQRT2), ("10", INV_SQRT2)]          # exit first or second
SKIP_TWO = [("001", INV_SQRT2), ("110", INV_SQRT2)]          # exit first or third
THIRD_EXIT = [("110", 1.0)]                                  # always the third exit


def sequential_exit_distribution(state: StateVector) -> list[float]:
    """Oracle: measure qubit by qubit with explicit collapse.

    P(exit at i) = P(qubit i = 0 | earlier all 1) * P(all earlier were 1),
    tracked by slicing the surviving branch out of the state and
    renormalizing after every continue outcome.
    """
    m = state.num_qubits
    vec = state.amplitudes.reshape([2] * m)
    survival = 1.0
    probs = []
    for _ in range(m):
        weights = np.abs(vec) ** 2
        total = float(weights.sum())
        p0 = float(weights[0].sum()) / total
        p1 = float(weights[1].sum()) / total
        probs.append(survival * p0)
        if p1 == 0.0:
            survival = 0.0
            break
        vec = vec[1] / math.sqrt(float(weights[1].sum()))  # renormalized collapse
        survival *= p1
    probs += [0.0] * (m - len(probs))
    probs.append(survival)
    return probs


def random_state(rng: np.random.Generator, m: int) -> StateVector:
    amps = rng.normal(size=2**m) + 1j * rng.normal(size=2**m)
    return StateVector(m, amps / np.linalg.norm(amps))


class TestBuildState:
    def test_bell_amplitudes_placed(self):
        state = build_state(BELL_01_10)
        assert state.num_qubits == 2
        assert state.amplitudes == pytest.approx([0, INV_SQRT2, INV_SQRT2, 0])

    def test_single_ket(self):
        state = build_state(THIRD_EXIT)
        assert state.amplitudes == pytest.approx([0, 0, 0, 0, 0, 0, 1, 0])

    def test_accepts_basis_term_objects(self):
        state = build_state([BasisTerm("0", 1.0)])
        assert state.amplitudes == pytest.approx([1, 0])

    def test_unnormalized_without_flag(self):
        with pytest.raises(ValueError, match="not normalized"):
            build_state([("0", 1.0), ("1", 1.0)])

    def test_normalize_flag_rescales(self):
        state = build_state([("0", 1.0), ("1", 1.0)], normalize=True)
        assert state.amplitudes == pytest.approx([INV_SQRT2, INV_SQRT2])

    def test_duplicate_term(self):
        with pytest.raises(ValueError, match="duplicate term"):
            build_state([("01", INV_SQRT2), ("01", INV_SQRT2)])

    def test_ragged_terms(self):
        with pytest.raises(ValueError, match="ragged terms"):
            build_state([("01", INV_SQRT2), ("110", INV_SQRT2)])

    def test_bad_bits(self):
        with pytest.raises(ValueError, match="bad basis string"):
            build_state([("0x1", 1.0)])

    def test_zero_state_rejected(self):
        with pytest.raises(ValueError, match="not normalized"):
            build_state([("01", 0.0)], normalize=True)

    def test_qubit_cap(self):
        with pytest.raises(ValueError, match="qubit count"):
            build_state([("0" * 21, 1.0)])

    def test_complex_amplitudes_supported(self):
        state = build_state([("0", 1j * INV_SQRT2), ("1", INV_SQRT2)])
        assert abs(np.linalg.norm(state.amplitudes) - 1.0) < 1e-12


class TestStateVector:
    def test_rejects_wrong_length(self):
        with pytest.raises(ValueError, match="amplitudes"):
            StateVector(2, np.array([1.0, 0.0]))

    def test_rejects_unnormalized(self):
        with pytest.raises(ValueError, match="not normalized"):
            StateVector(1, np.array([1.0, 1.0]))

    def test_amplitudes_read_only(self):
        state = build_state(THIRD_EXIT)
        with pytest.raises(ValueError):
            state.amplitudes[0] = 1.0


class TestProductState:
    def test_alpha_third_two_qubits(self):
        # tensor arithmetic: (1/sqrt3, sqrt(2/3)) x (1/sqrt3, sqrt(2/3))
        state = product_state(1 / 3, 2)
        root2 = math.sqrt(2.0)
        assert state.amplitudes == pytest.approx([1 / 3, root2 / 3, root2 / 3, 2 / 3], abs=1e-15)

    def test_alpha_one_always_exits(self):
        state = product_state(1.0, 3)
        assert state.amplitudes == pytest.approx([1] + [0] * 7)

    def test_alpha_zero_never_exits(self):
        state = product_state(0.0, 2)
        assert state.amplitudes == pytest.approx([0, 0, 0, 1])

    def test_bad_alpha(self):
        with pytest.raises(ValueError, match="probability"):
            product_state(1.5, 2)


class TestFirstZeroDistribution:
    def test_bell_state_on_two_intersections(self):
        dist = first_zero_distribution(build_state(BELL_01_10))
        assert dist.probs == pytest.approx([0.5, 0.5, 0.0], abs=1e-12)

    def test_skip_two_state(self):
        dist = first_zero_distribution(build_state(SKIP_TWO))
        assert dist.probs == pytest.approx([0.5, 0.0, 0.5, 0.0], abs=1e-12)

    def test_deterministic_third_exit(self):
        dist = first_zero_distribution(build_state(THIRD_EXIT))
        assert dist.probs == pytest.approx([0, 0, 1, 0], abs=0)

    def test_matches_sequential_collapse_on_named_states(self):
        for terms in (BELL_01_10, SKIP_TWO, THIRD_EXIT):
            state = build_state(terms)
            batch = first_zero_distribution(state).probs
            assert batch == pytest.approx(sequential_exit_distribution(state), abs=1e-9)

    def test_matches_sequential_collapse_on_random_states(self):
        rng = np.random.default_rng(424242)
        for _ in range(20):
            state = random_state(rng, 3)
            batch = first_zero_distribution(state).probs
            assert batch == pytest.approx(sequential_exit_distribution(state), abs=1e-9)

    @pytest.mark.parametrize("m", [1, 2, 3, 4])
    def test_matches_classical_stationary(self, m):
        problem = make_drive_problem([1.0] * m, 0.0)
        for alpha in np.linspace(0.0, 1.0, 11):
            quantum = first_zero_distribution(product_state(alpha, m)).probs
            classical = destination_distribution(problem, Stationary(alpha)).probs
            assert np.abs(quantum - classical).max() <= 1e-9

    @given(theta=st.floats(min_value=0, max_value=2 * math.pi), seed=st.integers(0, 2**32 - 1))
    @settings(max_examples=60)
    def test_phase_invariance(self, theta, seed):
        state = random_state(np.random.default_rng(seed), 3)
        rotated = StateVector(3, state.amplitudes * np.exp(1j * theta))
        base = first_zero_distribution(state).probs
        assert np.abs(first_zero_distribution(rotated).probs - base).max() <= 1e-12

    @given(seed=st.integers(0, 2**32 - 1), m=st.integers(1, 5))
    @settings(max_examples=60)
    def test_normalization(self, seed, m):
        state = random_state(np.random.default_rng(seed), m)
        assert abs(first_zero_distribution(state).probs.sum() - 1.0) <= 1e-9


class TestQuantumExpectedPayoff:
    def test_bell_doubles_example1(self):
        problem = make_drive_problem([0, 4], 1)
        assert quantum_expected_payoff(problem, build_state(BELL_01_10)) == pytest.approx(2.0)

    def test_skip_two_averages_first_and_third(self):
        problem = make_drive_problem([7, 99, 3], 0)
        payoff = quantum_expected_payoff(problem, build_state(SKIP_TWO))
        assert payoff == pytest.approx((7 + 3) / 2, abs=1e-12)

    def test_product_state_equals_stationary_payoff(self):
        problem = make_drive_problem([0, 4], 1)
        payoff = quantum_expected_payoff(problem, product_state(1 / 3, 2))
        assert payoff == pytest.approx(4 / 3, abs=1e-12)

    def test_dimension_mismatch(self):
        problem = make_drive_problem([0, 4], 1)
        with pytest.raises(ValueError, match="strategy/problem mismatch"):
            quantum_expected_payoff(problem, build_state(THIRD_EXIT))
