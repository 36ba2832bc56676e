import random

import pytest
from hypothesis import given, settings, strategies as st

from fivepillars.assignment import CostMatrix, Matching, brute_force_lap, solve_lap


class TestCostMatrix:
    def test_rejects_negative_and_nonfinite(self):
        with pytest.raises(ValueError):
            CostMatrix.from_rows([[1.0, -0.5]])
        with pytest.raises(ValueError):
            CostMatrix.from_rows([[float("inf")]])
        with pytest.raises(ValueError):
            CostMatrix.from_rows([[float("nan")]])

    def test_rejects_empty_and_ragged(self):
        with pytest.raises(ValueError):
            CostMatrix(0, 1, ())
        with pytest.raises(ValueError):
            CostMatrix.from_rows([[1, 2], [3]])


class TestSolveLap:
    def test_diagonal_optimum(self):
        m = solve_lap(CostMatrix.from_rows([[0, 1], [1, 0]]))
        assert m.pairs == ((0, 0), (1, 1))
        assert m.total_cost == 0

    def test_enumerated_2x2(self):
        m = solve_lap(CostMatrix.from_rows([[1, 2], [3, 0]]))
        assert m.pairs == ((0, 0), (1, 1))
        assert m.total_cost == 1

    def test_single_row_minimum(self):
        m = solve_lap(CostMatrix.from_rows([[5, 2, 9]]))
        assert m.pairs == ((0, 1),)
        assert m.total_cost == 2

    def test_more_rows_than_cols(self):
        m = solve_lap(CostMatrix.from_rows([[9], [1], [5]]))
        assert m.pairs == ((1, 0),)
        assert m.total_cost == 1

    def test_degenerate_ties_deterministic(self):
        m = solve_lap(CostMatrix.from_rows([[0, 0], [0, 0]]))
        assert m.total_cost == 0
        assert m.pairs == ((0, 0), (1, 1))  # lexicographically smallest


class TestBruteForce:
    def test_single_cell(self):
        m = brute_force_lap(CostMatrix.from_rows([[7.5]]))
        assert m.pairs == ((0, 0),)
        assert m.total_cost == 7.5

    def test_refuses_large(self):
        big = CostMatrix(9, 9, tuple([1.0] * 81))
        with pytest.raises(ValueError):
            brute_force_lap(big)

    def test_tie_pairs_lexicographic(self):
        m = brute_force_lap(CostMatrix.from_rows([[0, 0], [0, 0]]))
        assert m.pairs == ((0, 0), (1, 1))


def _random_matrix(rng, max_side=6, integers=True):
    rows = rng.randint(1, max_side)
    cols = rng.randint(1, max_side)
    if integers:
        values = [[float(rng.randint(0, 30)) for _ in range(cols)] for _ in range(rows)]
    else:
        values = [[rng.random() * 10 for _ in range(cols)] for _ in range(rows)]
    return CostMatrix.from_rows(values)


def test_matches_oracle_on_random_integer_matrices():
    rng = random.Random(20240531)
    for _ in range(400):
        matrix = _random_matrix(rng, integers=True)
        fast = solve_lap(matrix)
        slow = brute_force_lap(matrix)
        assert fast.total_cost == slow.total_cost
        assert fast.pairs == slow.pairs  # tie-break agrees too


def test_matches_oracle_on_random_real_matrices():
    rng = random.Random(99)
    for _ in range(200):
        matrix = _random_matrix(rng, integers=False)
        fast = solve_lap(matrix)
        slow = brute_force_lap(matrix)
        assert fast.total_cost == pytest.approx(slow.total_cost, rel=1e-9)


@given(st.integers(2, 5), st.randoms(use_true_random=False))
@settings(max_examples=60, deadline=None)
def test_row_permutation_preserves_cost_and_pairs(n, rng):
    values = [[float(rng.randint(0, 20)) for _ in range(n)] for _ in range(n)]
    base = solve_lap(CostMatrix.from_rows(values))
    perm = list(range(n))
    rng.shuffle(perm)
    permuted = solve_lap(CostMatrix.from_rows([values[p] for p in perm]))
    assert permuted.total_cost == base.total_cost
    # the permuted matching maps back to an optimal matching of the original
    remapped_cost = sum(values[perm[i]][j] for i, j in permuted.pairs)
    assert remapped_cost == base.total_cost


@given(st.integers(1, 5), st.integers(0, 9), st.randoms(use_true_random=False))
@settings(max_examples=60, deadline=None)
def test_constant_shift_on_square_matrix(n, shift, rng):
    values = [[float(rng.randint(0, 20)) for _ in range(n)] for _ in range(n)]
    base = solve_lap(CostMatrix.from_rows(values))
    shifted = solve_lap(CostMatrix.from_rows([[v + shift for v in row] for row in values]))
    assert shifted.total_cost == pytest.approx(base.total_cost + n * shift, rel=1e-12)
    assert sum(values[i][j] for i, j in shifted.pairs) == pytest.approx(base.total_cost)


def test_matching_shape_invariants():
    rng = random.Random(5)
    for _ in range(100):
        matrix = _random_matrix(rng)
        m = solve_lap(matrix)
        assert isinstance(m, Matching)
        assert len(m.pairs) == min(matrix.rows, matrix.cols)
        assert len({i for i, _ in m.pairs}) == len(m.pairs)
        assert len({j for _, j in m.pairs}) == len(m.pairs)
        assert m.total_cost == pytest.approx(sum(matrix.at(i, j) for i, j in m.pairs))
