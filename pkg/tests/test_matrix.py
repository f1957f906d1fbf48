from itertools import product
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fairquads import rng
from fairquads.errors import DimensionError, ModulusError
from fairquads.zk import (ZkMatrix, fair_count, find_fair_submatrix, is_fair, quads_from_matrix,
                          random_matrix)
from fairquads.zk.matrix import has_fair_batch
from fairquads.zk.scans import count_fair_2x2

from oracles import naive_fair_quads


def M(k, rows):
    return ZkMatrix.from_rows(k, rows)


@pytest.mark.parametrize("k,rows,expected", [
    (5, [[0, 0], [0, 0]], True),
    (2, [[0, 1], [1, 0]], True),
    (3, [[0, 1], [0, 0]], False),
])
def test_is_fair_examples(k, rows, expected):
    assert is_fair(M(k, rows)) is expected


def test_is_fair_rejects_non_2x2():
    with pytest.raises(DimensionError):
        is_fair(M(3, [[0, 1, 2], [0, 0, 0]]))


def test_matrix_validation():
    with pytest.raises(ModulusError):
        M(3, [[0, 3], [0, 0]])
    with pytest.raises(ModulusError):
        ZkMatrix(1, 1, 1, (0,))
    with pytest.raises(DimensionError):
        ZkMatrix(3, 2, 2, (0, 0, 0))


def test_find_fair_every_2x3_over_z2():
    for vals in product(range(2), repeat=6):
        assert find_fair_submatrix(M(2, [vals[:3], vals[3:]])) is not None


def test_find_fair_absent_for_g3_clique_rows():
    assert find_fair_submatrix(M(3, [[0, 0, 0], [0, 1, 2], [0, 2, 1]])) is None


def test_find_fair_lexicographic_witness():
    assert find_fair_submatrix(M(2, [[0, 0], [0, 1], [1, 0]])) == (1, 2, 0, 1)
    # row differences (0, 1, 1, 0): smallest p wins over smallest q
    assert find_fair_submatrix(M(2, [[0, 1, 1, 0], [0, 0, 0, 0]])) == (0, 1, 0, 3)


def test_find_fair_rejects_small():
    with pytest.raises(DimensionError):
        find_fair_submatrix(M(3, [[0, 1, 2]]))


@settings(max_examples=200, deadline=None)
@given(st.integers(2, 5), st.integers(2, 6), st.integers(2, 6), st.data())
def test_find_fair_is_first_of_naive_list(k, n, m, data):
    rows = data.draw(st.lists(st.lists(st.integers(0, k - 1), min_size=m, max_size=m),
                              min_size=n, max_size=n))
    naive = naive_fair_quads(rows, k)
    assert find_fair_submatrix(M(k, rows)) == (naive[0] if naive else None)


@pytest.mark.parametrize("k,rows,expected", [
    (3, [[0, 0], [0, 0]], [(0, 1, 0, 1)]),
    (2, [[0, 0], [0, 1]], []),
    (2, [[0, 0, 0], [0, 0, 1]], [(0, 1, 0, 1)]),
])
def test_quads_from_matrix_examples(k, rows, expected):
    assert [tuple(q) for q in quads_from_matrix(M(k, rows))] == expected


def test_quads_from_matrix_matches_double_loop():
    for s in range(200):
        k = 2 + s % 4
        n, m = 2 + s % 11, 2 + (s * 7) % 11
        X = random_matrix(n, m, k, seed=s)
        rows = X.rows()
        expected = naive_fair_quads(rows, k)
        Q = quads_from_matrix(X)
        assert [tuple(q) for q in Q] == expected
        assert fair_count(X) == len(expected)


def test_quads_agree_with_is_fair_predicate():
    X = random_matrix(6, 5, 3, seed=11)
    Q = quads_from_matrix(X)
    for i in range(6):
        for j in range(i + 1, 6):
            for p in range(5):
                for q in range(p + 1, 5):
                    assert ((i, j, p, q) in Q) == is_fair(X.submatrix([i, j], [p, q]))


def test_random_matrix_deterministic():
    assert random_matrix(2, 2, 2, seed=5) == random_matrix(2, 2, 2, seed=5)
    assert random_matrix(9, 9, 3, seed=1) != random_matrix(9, 9, 3, seed=2)


def test_random_matrix_scalar_and_vector_paths_agree():
    X = random_matrix(7, 5, 6, seed=99)
    assert list(X.entries) == [rng.below(99, i, 6) for i in range(35)]
    g = rng.SplitMix64(99)
    assert list(X.entries) == [g.below(6) for _ in range(35)]


def test_splitmix_reference_values():
    # published SplitMix64 outputs for state 1234567
    g = rng.SplitMix64(1234567)
    assert [g.next_u64() for _ in range(3)] == [
        6457827717110365317, 3203168211198807973, 9817491932198370423]


def test_random_matrix_fair_fraction_near_one_over_k():
    total = comb(40, 2) ** 2
    fracs = [fair_count(random_matrix(40, 40, 4, seed=s)) / total for s in range(20)]
    assert abs(np.mean(fracs) - 0.25) <= 0.01


def test_random_2x4_over_z3_nonempty():
    for s in range(50):
        assert len(quads_from_matrix(random_matrix(2, 4, 3, seed=s))) > 0


def test_random_matrix_preconditions():
    with pytest.raises(DimensionError):
        random_matrix(1, 4, 3)
    with pytest.raises(ModulusError):
        random_matrix(3, 3, 1)


@pytest.mark.parametrize("k", range(2, 8))
def test_fair_2x2_count_is_k_cubed(k):
    assert count_fair_2x2(k) == k ** 3


@pytest.mark.parametrize("k", [3, 5, 7, 9])
def test_odd_k_three_rows_without_fair_submatrix(k):
    rows = [[i * j % k for j in range(k)] for i in range(3)]
    assert find_fair_submatrix(M(k, rows)) is None
    assert naive_fair_quads(rows, k) == []


def test_batch_test_agrees_with_scalar():
    for s in range(30):
        k = 2 + s % 5
        X = np.stack([random_matrix(3, 4, k, seed=1000 * s + t).array for t in range(20)])
        got = has_fair_batch(X, k)
        want = [find_fair_submatrix(ZkMatrix.from_array(k, x)) is not None for x in X]
        assert got.tolist() == want
