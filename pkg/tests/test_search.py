from itertools import product

import pytest

from conftest import random_algebra
from core.belrank import random_isotope
from core.linmap import LinMap, is_invertible
from core.rank import MatrixQN, matrix_rank, theta_shift
from core.search import (
    candidate_count,
    digits_of,
    exhaustive_min_rank,
    index_of,
    search_shard,
    shard_ranges,
    witness_map,
)
from core.semifield import dtd


def combined_matrix(C: MatrixQN, coeffs) -> MatrixQN:
    total = MatrixQN.zeros(C.ctx, C.nrows, C.ncols)
    for k, h in enumerate(coeffs):
        if h:
            total = total + theta_shift(C, k).scale(h)
    return total


def test_candidate_indexing_is_lexicographic(ctx27):
    assert candidate_count(ctx27) == 27 ** 2
    previous = None
    for index in range(candidate_count(ctx27)):
        digits = digits_of(ctx27, index)
        assert index_of(ctx27, digits) == index
        if previous is not None:
            assert previous < digits
        previous = digits
    assert digits_of(ctx27, 27) == [1, 0]


@pytest.mark.parametrize("shards", [1, 2, 3, 7, 16, 40])
def test_shard_ranges_cover_leading_digit(ctx16, shards):
    ranges = shard_ranges(ctx16, shards)
    assert ranges[0][0] == 0 and ranges[-1][1] == 16
    for (_, hi), (lo, _) in zip(ranges, ranges[1:]):
        assert hi == lo
    assert len(ranges) == min(shards, 16)


def test_shard_ranges_for_prime_field():
    from core.gf import get_context
    assert shard_ranges(get_context(5, 1, 1), 4) == [(0, 1)]


def test_search_matches_enumeration_over_all_invertible_maps(ctx8, rng):
    """Min over normalised H equals min over every invertible H."""
    for _ in range(5):
        S = random_algebra(ctx8, rng)
        C = S.matrix
        brute = min(
            matrix_rank(combined_matrix(C, h))
            for h in product(range(8), repeat=3)
            if is_invertible(LinMap(ctx8, list(h)))
        )
        value, digits, examined = exhaustive_min_rank(ctx8, S.C)
        assert value == brute
        assert examined == 64
        H = witness_map(ctx8, digits)
        assert is_invertible(H)
        assert matrix_rank(combined_matrix(C, H.coeffs)) == value


def test_witness_is_smallest_index(ctx8, rng):
    S = random_algebra(ctx8, rng)
    value, digits, _ = exhaustive_min_rank(ctx8, S.C)
    for index in range(index_of(ctx8, digits)):
        H = witness_map(ctx8, digits_of(ctx8, index))
        if is_invertible(H):
            assert matrix_rank(combined_matrix(S.matrix, H.coeffs)) > value


def test_gtf_search(gtf27):
    value, digits, examined = exhaustive_min_rank(gtf27.ctx, dtd(gtf27).C, lower_bound=2)
    assert (value, digits, examined) == (2, [0, 0], 729)


def test_early_exit_counts_examined_candidates(gtf27):
    value, digits, examined = exhaustive_min_rank(gtf27.ctx, dtd(gtf27).C, lower_bound=2, early_exit=True)
    assert (value, digits, examined) == (2, [0, 0], 1)


@pytest.mark.parametrize("early_exit", [False, True])
def test_result_independent_of_thread_count(field16, early_exit):
    S = dtd(random_isotope(field16, seed=7))
    single = exhaustive_min_rank(S.ctx, S.C, threads=1, lower_bound=1, early_exit=early_exit)
    sharded = exhaustive_min_rank(S.ctx, S.C, threads=3, lower_bound=1, early_exit=early_exit)
    assert single == sharded
    assert single[0] == 1


def test_shard_reports_nothing_for_empty_range(gtf27):
    C = dtd(gtf27).C
    assert search_shard(3, 1, 3, C, 5, 5, 2, False) == (4, -1)
    rank, index = search_shard(3, 1, 3, C, 4, 9, 2, False)
    assert 2 <= rank <= 3
    assert 4 * 27 <= index < 9 * 27
