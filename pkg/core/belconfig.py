"""
BEL decompositions S(x, y) = sum_i g_i(f_i(x) y) and their configurations.

V(rn, q) is coordinatised as F_{q^n}^r, so the Desarguesian spread is
{B(v) = {a v : a in F_{q^n}}}. For a decomposition (f, g):

    U = {(f_1(x), ..., f_r(x)) : x in F_{q^n}}
    W = {(y_1, ..., y_r) : sum_i g_i(y_i) = 0}

and S has a zero divisor exactly when some B(v) meets both U and W.
Subspace work is done over F_p on digit vectors of length r * e * n.
"""
from itertools import product
from typing import Iterator, List, Sequence, Tuple
import logging

from config import settings
from core.errors import DegenerateUError, DegenerateWError, TooManySpreadElementsError
from core.gf import FieldCtx
from core.linmap import LinMap, adjoint, evaluate
from core.rank import fp_null_space, fp_rank, rank_factor
from core.semifield import SemifieldCoeffs, dtd
from models import ConfigurationReport, SpreadStatistics

logger = logging.getLogger(__name__)

Vector = Tuple[int, ...]


class BelDecomposition:
    """Maps f_1..f_r and g_1..g_r over a common FieldCtx."""

    def __init__(self, ctx: FieldCtx, fs: Sequence[LinMap], gs: Sequence[LinMap]):
        if len(fs) != len(gs) or not fs:
            raise ValueError("a decomposition needs r >= 1 pairs (f_i, g_i)")
        self.ctx = ctx
        self.fs: Tuple[LinMap, ...] = tuple(fs)
        self.gs: Tuple[LinMap, ...] = tuple(gs)

    @property
    def r(self) -> int:
        return len(self.fs)

    def __repr__(self) -> str:
        return f"BelDecomposition(r={self.r}, fs={list(self.fs)}, gs={list(self.gs)})"

    def __call__(self, x: int, y: int) -> int:
        ctx = self.ctx
        total = 0
        for f, g in zip(self.fs, self.gs):
            total = ctx.add(total, evaluate(g, ctx.mul(evaluate(f, x), y)))
        return total


class BelConfiguration:
    """U and W as F_q-bases of vectors in F_{q^n}^r."""

    def __init__(self, ctx: FieldCtx, r: int, u_basis: Sequence[Vector], w_basis: Sequence[Vector]):
        self.ctx = ctx
        self.r = r
        self.u_basis: List[Vector] = [tuple(v) for v in u_basis]
        self.w_basis: List[Vector] = [tuple(v) for v in w_basis]

    @property
    def dim_u(self) -> int:
        return len(self.u_basis)

    @property
    def dim_w(self) -> int:
        return len(self.w_basis)


def decomposition_algebra(D: BelDecomposition) -> SemifieldCoeffs:
    """Coefficient matrix of sum_i g_i(f_i(x) y): C[(k+l) mod n][l] += b_l a_k^(q^l)."""
    ctx = D.ctx
    n = ctx.n
    C = [[0] * n for _ in range(n)]
    for f, g in zip(D.fs, D.gs):
        for l, b in enumerate(g.coeffs):
            if not b:
                continue
            for k, a in enumerate(f.coeffs):
                if a:
                    i = (k + l) % n
                    C[i][l] = ctx.add(C[i][l], ctx.mul(b, ctx.frobenius(a, l)))
    return SemifieldCoeffs(ctx, C)


def decomposition_from_rank_factorization(S: SemifieldCoeffs) -> BelDecomposition:
    """f_i = u_i and g_i = adjoint(v_i) for M(S^dtd) = sum u_i^T v_i."""
    ctx = S.ctx
    us, vs = rank_factor(dtd(S).matrix)
    if not us:
        zero = LinMap.zero(ctx)
        return BelDecomposition(ctx, [zero], [zero])
    fs = [LinMap(ctx, u) for u in us]
    gs = [adjoint(LinMap(ctx, v)) for v in vs]
    logger.debug(f"Rank factorisation of M(S^dtd) gives r = {len(fs)}")
    return BelDecomposition(ctx, fs, gs)


# ---- F_p coordinates ----

def _digits(ctx: FieldCtx, vector: Sequence[int]) -> List[int]:
    out: List[int] = []
    for a in vector:
        out.extend(ctx.decode(a))
    return out


def _scaled(ctx: FieldCtx, a: int, vector: Sequence[int]) -> Vector:
    return tuple(ctx.mul(a, v) for v in vector)


def _fp_span_rows(ctx: FieldCtx, basis: Sequence[Vector]) -> List[List[int]]:
    """F_p spanning rows of the F_q-span of `basis`."""
    return [_digits(ctx, _scaled(ctx, lam, v)) for v in basis for lam in ctx.subfield_fp_basis()]


def _from_digits(ctx: FieldCtx, digits: Sequence[int], r: int) -> Vector:
    d = ctx.degree
    return tuple(ctx.encode(list(digits[i * d:(i + 1) * d])) for i in range(r))


def configuration_from_decomposition(D: BelDecomposition) -> BelConfiguration:
    ctx = D.ctx
    r = D.r
    n, d, e, p = ctx.n, ctx.degree, ctx.e, ctx.p

    u_basis = [tuple(evaluate(f, b) for f in D.fs) for b in ctx.basis()]
    if fp_rank(p, _fp_span_rows(ctx, u_basis)) < d:
        raise DegenerateUError("the maps f_i have a common nonzero kernel vector")

    # (y_i) -> sum g_i(y_i) over F_p: block i holds the digits of g_i(t^s)
    sum_rows = [ctx.decode(evaluate(g, alpha)) for g in D.gs for alpha in ctx.fp_basis()]
    if fp_rank(p, sum_rows) < d:
        raise DegenerateWError("sum_i g_i(y_i) is not surjective")
    kernel = fp_null_space(p, sum_rows)

    w_basis: List[Vector] = []
    current = 0
    for digits in kernel:
        candidate = _from_digits(ctx, digits, r)
        rank = fp_rank(p, _fp_span_rows(ctx, w_basis + [candidate]))
        if rank > current:
            w_basis.append(candidate)
            current = rank
        if current == r * d - d:
            break
    if current != (r - 1) * d or len(w_basis) * e != current:
        raise DegenerateWError(f"W has F_p-dimension {current}, expected {(r - 1) * d}")

    logger.debug(f"Configuration in V({r * n}, {ctx.q}): dim U = {len(u_basis)}, dim W = {len(w_basis)}")
    return BelConfiguration(ctx, r, u_basis, w_basis)


def spread_element_count(ctx: FieldCtx, r: int) -> int:
    return (ctx.order ** r - 1) // (ctx.order - 1)


def projective_points(ctx: FieldCtx, r: int) -> Iterator[Vector]:
    """Representatives of PG(r-1, q^n): last nonzero coordinate 1, lexicographic."""
    points = []
    for last in range(r):
        for head in product(range(ctx.order), repeat=last):
            points.append(tuple(head) + (1,) + (0,) * (r - 1 - last))
    return iter(sorted(points))


def verify_configuration(B: BelConfiguration) -> ConfigurationReport:
    """No spread element may meet both U and W nontrivially."""
    ctx = B.ctx
    r = B.r
    d, p = ctx.degree, ctx.p
    count = spread_element_count(ctx, r)
    if count > settings.max_spread_elements:
        raise TooManySpreadElementsError(
            f"{count} spread elements exceed the limit {settings.max_spread_elements}"
        )

    u_rows = _fp_span_rows(ctx, B.u_basis)
    w_rows = _fp_span_rows(ctx, B.w_basis)
    stats = SpreadStatistics(elements=count)
    violating = None
    for v in projective_points(ctx, r):
        element = [_digits(ctx, _scaled(ctx, alpha, v)) for alpha in ctx.fp_basis()]
        meets_u = fp_rank(p, element + u_rows) < 2 * d
        meets_w = bool(w_rows) and fp_rank(p, element + w_rows) < r * d
        stats.meet_u += meets_u
        stats.meet_w += meets_w
        if meets_u and meets_w:
            stats.meet_both += 1
            if violating is None:
                violating = list(v)
                logger.info(f"Spread element B({violating}) meets both U and W")

    return ConfigurationReport(
        ok=violating is None,
        r=r,
        dim_u=B.dim_u,
        dim_w=B.dim_w,
        violating_element=violating,
        statistics=stats,
    )
