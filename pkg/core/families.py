"""
Constructors for the built-in algebra families.
"""
from math import gcd
from typing import Optional
import logging

from core.errors import InvalidCError, NoValidCError
from core.gf import FieldCtx
from core.linmap import LinMap
from core.semifield import SemifieldCoeffs

logger = logging.getLogger(__name__)


def field_semifield(ctx: FieldCtx) -> SemifieldCoeffs:
    """Multiplication of F_{q^n} itself: c_00 = 1, everything else zero."""
    C = [[0] * ctx.n for _ in range(ctx.n)]
    C[0][0] = 1
    return SemifieldCoeffs(ctx, C)


def _check_twist(ctx: FieldCtx, k: int, m: int) -> None:
    if ctx.n < 2:
        raise ValueError("a twisted field needs n >= 2")
    if not (0 < k < ctx.n and 0 < m < ctx.n):
        raise ValueError(f"twist exponents must lie in (0, {ctx.n}), got k={k}, m={m}")
    # k == m gives xy - c(xy)^(q^k), a field isotope
    if k == m:
        raise NoValidCError(f"k = m = {k} gives an isotope of the field, not a twisted field")


def _product_set_index(ctx: FieldCtx, k: int, m: int) -> int:
    """Index in F_{q^n}^* of the subgroup {x^(q^k - 1) y^(q^m - 1)}."""
    G = ctx.group_order
    return gcd(ctx.q ** k - 1, ctx.q ** m - 1, G)


def in_product_set(ctx: FieldCtx, c: int, k: int, m: int) -> bool:
    """c = x^(q^k - 1) y^(q^m - 1) for some x, y (0 included)."""
    if not c:
        return True
    return ctx.log_table[c] % _product_set_index(ctx, k, m) == 0


def gtf_find_c(ctx: FieldCtx, k: int, m: int) -> int:
    """Smallest element code outside the product set {x^(q^k-1) y^(q^m-1)}.

    The product of the two cyclic subgroups is the subgroup of index
    gcd(q^k - 1, q^m - 1, q^n - 1), so c is valid iff its discrete log is
    not divisible by that gcd.
    """
    _check_twist(ctx, k, m)
    g = _product_set_index(ctx, k, m)
    if g == 1:
        raise NoValidCError(f"product set covers F_{ctx.order} for k={k}, m={m}")
    for c in range(1, ctx.order):
        if ctx.log_table[c] % g:
            logger.info(f"GTF constant c={c} for F_{ctx.order}, k={k}, m={m}")
            return c
    raise NoValidCError(f"no constant outside the product set for k={k}, m={m}")


def gtf(ctx: FieldCtx, k: int, m: int, c: Optional[int] = None, check: bool = True) -> SemifieldCoeffs:
    """x o y = xy - c x^(q^k) y^(q^m). With c=None the smallest valid c is used."""
    _check_twist(ctx, k, m)
    if c is None:
        c = gtf_find_c(ctx, k, m)
    if not 0 <= c < ctx.order:
        raise InvalidCError(f"element code {c} outside F_{ctx.order}")
    if check and in_product_set(ctx, c, k, m):
        raise InvalidCError(f"c={c} lies in the product set for k={k}, m={m}")
    C = [[0] * ctx.n for _ in range(ctx.n)]
    C[0][0] = 1
    C[k][m] = ctx.add(C[k][m], ctx.neg(c))
    return SemifieldCoeffs(ctx, C)


def frobenius_twist_form(ctx: FieldCtx, f: LinMap, k: int) -> SemifieldCoeffs:
    """xy + (f(x) y)^(q^k)."""
    n = ctx.n
    C = [[0] * n for _ in range(n)]
    C[0][0] = 1
    # (sum_i w_i x^(q^i) y)^(q^k) = sum_i w_i^(q^k) x^(q^(i+k)) y^(q^k)
    for i, w in enumerate(f.coeffs):
        a, b = (i + k) % n, k % n
        C[a][b] = ctx.add(C[a][b], ctx.frobenius(w, k))
    return SemifieldCoeffs(ctx, C)


def relative_trace_form(ctx: FieldCtx, f: LinMap, s: int) -> SemifieldCoeffs:
    """xy + Tr_{q^n : q^s}(f(x) y) for s dividing n."""
    n = ctx.n
    if s < 1 or n % s:
        raise ValueError(f"s={s} does not divide n={n}")
    C = [[0] * n for _ in range(n)]
    C[0][0] = 1
    for t in range(0, n, s):
        for i, w in enumerate(f.coeffs):
            a, b = (i + t) % n, t
            C[a][b] = ctx.add(C[a][b], ctx.frobenius(w, t))
    return SemifieldCoeffs(ctx, C)


def fundamental_tensor(ctx: FieldCtx, a: int, b: int, c: int) -> SemifieldCoeffs:
    """T(x, y) = Tr(a x) Tr(b y) c; its matrix c a_^T b_ has rank one."""
    n = ctx.n
    return SemifieldCoeffs(ctx, [
        [ctx.mul(c, ctx.mul(ctx.frobenius(a, i), ctx.frobenius(b, j))) for j in range(n)]
        for i in range(n)
    ])
