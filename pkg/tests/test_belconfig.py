import pytest

from conftest import random_algebra
from config import settings
from core.belconfig import (
    BelConfiguration,
    BelDecomposition,
    configuration_from_decomposition,
    decomposition_algebra,
    decomposition_from_rank_factorization,
    projective_points,
    spread_element_count,
    verify_configuration,
)
from core.belrank import bel_rank, random_isotope, witness_isotope
from core.errors import DegenerateUError, DegenerateWError, TooManySpreadElementsError
from core.linmap import LinMap, random_linmap
from core.rank import matrix_rank
from core.semifield import dtd, is_semifield


def test_decomposition_algebra_is_pointwise(ctx27, rng):
    fs = [random_linmap(ctx27, rng) for _ in range(3)]
    gs = [random_linmap(ctx27, rng) for _ in range(3)]
    D = BelDecomposition(ctx27, fs, gs)
    S = decomposition_algebra(D)
    for x in ctx27.elements():
        for y in range(0, ctx27.order, 2):
            assert S(x, y) == D(x, y)


def test_rank_factorization_reconstructs_algebra(ctx27, ctx16_over4, rng):
    for ctx in (ctx27, ctx16_over4):
        for _ in range(40):
            S = random_algebra(ctx, rng)
            D = decomposition_from_rank_factorization(S)
            assert decomposition_algebra(D) == S
            assert D.r == max(1, matrix_rank(dtd(S).matrix))


def test_gtf_decomposition_has_two_terms(gtf27):
    D = decomposition_from_rank_factorization(gtf27)
    assert D.r == 2
    B = configuration_from_decomposition(D)
    assert (B.dim_u, B.dim_w) == (3, 3)
    report = verify_configuration(B)
    assert report.ok
    assert report.violating_element is None
    assert report.statistics.elements == 28
    assert report.statistics.meet_both == 0


def test_field_configuration_is_trivial(field16):
    B = configuration_from_decomposition(decomposition_from_rank_factorization(field16))
    assert (B.r, B.dim_u, B.dim_w) == (1, 4, 0)
    report = verify_configuration(B)
    assert report.ok
    assert report.statistics.elements == 1


def test_zero_algebra_in_characteristic_two(ctx8):
    ident = LinMap.identity(ctx8)
    D = BelDecomposition(ctx8, [ident, ident], [ident, ident])
    assert decomposition_algebra(D).C == ((0, 0, 0), (0, 0, 0), (0, 0, 0))
    report = verify_configuration(configuration_from_decomposition(D))
    assert not report.ok
    assert report.violating_element == [1, 1]
    assert report.statistics.meet_both == 1


def test_configuration_detects_zero_divisors(ctx8, rng):
    seen = set()
    for _ in range(60):
        S = random_algebra(ctx8, rng)
        D = decomposition_from_rank_factorization(S)
        try:
            B = configuration_from_decomposition(D)
        except (DegenerateUError, DegenerateWError):
            assert not is_semifield(S)
            continue
        ok = verify_configuration(B).ok
        assert ok == is_semifield(S)
        seen.add(ok)
    assert False in seen


def test_common_kernel_is_degenerate(ctx27):
    zero = LinMap.zero(ctx27)
    with pytest.raises(DegenerateUError):
        configuration_from_decomposition(BelDecomposition(ctx27, [zero], [LinMap.identity(ctx27)]))


def test_non_surjective_sum_is_degenerate(ctx27):
    ident, zero = LinMap.identity(ctx27), LinMap.zero(ctx27)
    with pytest.raises(DegenerateWError):
        configuration_from_decomposition(BelDecomposition(ctx27, [ident, ident], [zero, zero]))


def test_decomposition_needs_matching_pairs(ctx27):
    ident = LinMap.identity(ctx27)
    with pytest.raises(ValueError):
        BelDecomposition(ctx27, [ident], [ident, ident])
    with pytest.raises(ValueError):
        BelDecomposition(ctx27, [], [])


def test_projective_points(ctx27):
    points = list(projective_points(ctx27, 2))
    assert len(points) == spread_element_count(ctx27, 2) == 28
    assert len(set(points)) == 28
    assert points == sorted(points)
    for v in points:
        last = max(i for i, a in enumerate(v) if a)
        assert v[last] == 1


def test_spread_element_limit(ctx8, monkeypatch):
    monkeypatch.setattr(settings, "max_spread_elements", 5)
    B = BelConfiguration(ctx8, 2, [(1, 0)], [(0, 1)])
    with pytest.raises(TooManySpreadElementsError):
        verify_configuration(B)


def test_isotopes_of_gtf_give_valid_configurations(gtf27):
    for seed in range(20):
        S = random_isotope(gtf27, seed)
        minimal = witness_isotope(S, bel_rank(S))
        for T in (S, minimal):
            report = verify_configuration(configuration_from_decomposition(decomposition_from_rank_factorization(T)))
            assert report.ok
            assert report.violating_element is None
        assert decomposition_from_rank_factorization(minimal).r == 2
