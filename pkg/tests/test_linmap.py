import pytest

from core.errors import NotABasisError, ParseError, SingularMapError
from core.linmap import (
    LinMap,
    adjoint,
    compose,
    dickson_matrix,
    evaluate,
    fp_matrix,
    interpolate,
    inverse,
    is_invertible,
    is_invertible_fp,
    moore_matrix,
    random_linmap,
)
from core.rank import matrix_rank


def test_identity_and_frobenius(ctx27):
    ident = LinMap.identity(ctx27)
    frob = LinMap.frobenius(ctx27, 1)
    for x in ctx27.elements():
        assert evaluate(ident, x) == x
        assert frob(x) == ctx27.pow(x, 3)


def test_evaluation_is_additive(ctx27, rng):
    f = random_linmap(ctx27, rng)
    for _ in range(50):
        x, y = ctx27.random_element(rng), ctx27.random_element(rng)
        assert f(ctx27.add(x, y)) == ctx27.add(f(x), f(y))


def test_dickson_matrix_maps_conjugate_vectors(ctx16_over4, rng):
    ctx = ctx16_over4
    f = random_linmap(ctx, rng)
    A = dickson_matrix(f)
    for x in ctx.elements():
        xs = [ctx.frobenius(x, k) for k in range(ctx.n)]
        fx = f(x)
        assert A.apply(xs) == [ctx.frobenius(fx, k) for k in range(ctx.n)]


def test_invertibility_agrees_with_prime_field_matrix(ctx8, rng):
    seen = set()
    for _ in range(60):
        f = random_linmap(ctx8, rng)
        verdict = is_invertible(f)
        assert verdict == is_invertible_fp(f)
        assert verdict == (len({f(x) for x in ctx8.elements()}) == ctx8.order)
        seen.add(verdict)
    assert seen == {True, False}


def test_zero_map_is_singular(ctx8):
    assert not is_invertible(LinMap.zero(ctx8))
    assert fp_matrix(LinMap.zero(ctx8)) == [[0] * 3 for _ in range(3)]


def test_adjoint_contract(ctx16_over4, ctx27, rng):
    for ctx in (ctx16_over4, ctx27):
        basis = ctx.basis()
        for _ in range(50):
            g = random_linmap(ctx, rng)
            g_hat = adjoint(g)
            assert adjoint(g_hat) == g
            for x in basis:
                for y in basis:
                    assert ctx.trace(ctx.mul(g(x), y)) == ctx.trace(ctx.mul(x, g_hat(y)))


def test_composition_is_pointwise(ctx27, rng):
    f, g = random_linmap(ctx27, rng), random_linmap(ctx27, rng)
    fg = compose(f, g)
    assert fg == f @ g
    for x in ctx27.elements():
        assert fg(x) == f(g(x))


def test_interpolation_recovers_map(ctx81, rng):
    f = random_linmap(ctx81, rng)
    basis = [ctx81.random_nonzero(rng) for _ in range(ctx81.n)]
    if matrix_rank(moore_matrix(ctx81, basis)) < ctx81.n:
        basis = ctx81.basis()
    assert interpolate(ctx81, [(b, f(b)) for b in basis]) == f


def test_interpolation_rejects_dependent_points(ctx27):
    with pytest.raises(NotABasisError):
        interpolate(ctx27, [(1, 1), (2, 2), (3, 0)])
    with pytest.raises(NotABasisError):
        interpolate(ctx27, [(1, 1)])


def test_inverse(ctx16_over4, rng):
    f = random_linmap(ctx16_over4, rng, invertible=True)
    f_inv = inverse(f)
    assert f @ f_inv == LinMap.identity(ctx16_over4)
    assert f_inv @ f == LinMap.identity(ctx16_over4)
    with pytest.raises(SingularMapError):
        inverse(LinMap.zero(ctx16_over4))


def test_text_form(ctx27):
    f = LinMap(ctx27, [1, 0, 26])
    assert f.to_text() == "1 0 26"
    assert LinMap.from_text(ctx27, "1 0 26") == f
    with pytest.raises(ParseError, match="line 7"):
        LinMap.from_text(ctx27, "1 2", line=7)
    with pytest.raises(ParseError):
        LinMap.from_text(ctx27, "1 2 27")


def test_x_plus_x_to_the_q_is_singular(ctx16):
    f = LinMap(ctx16, [1, 1, 0, 0])
    assert not is_invertible(f)
    assert not is_invertible_fp(f)
    kernel = [x for x in ctx16.elements() if f(x) == 0]
    assert kernel == [0, 1]


def test_adjoint_reverses_composition(ctx16_over4, ctx27, rng):
    for ctx in (ctx16_over4, ctx27):
        for _ in range(100):
            f, g = random_linmap(ctx, rng), random_linmap(ctx, rng)
            assert adjoint(compose(f, g)) == compose(adjoint(g), adjoint(f))


def test_dickson_matrix_is_multiplicative(ctx16_over4, ctx81, rng):
    for ctx in (ctx16_over4, ctx81):
        for _ in range(100):
            f, g = random_linmap(ctx, rng), random_linmap(ctx, rng)
            assert dickson_matrix(compose(f, g)) == dickson_matrix(f) @ dickson_matrix(g)
