"""
Algebras in coefficient-matrix form.

An n-dimensional algebra over F_q on the set F_{q^n} is stored as the n x n
matrix C with S(x, y) = sum c_ij x^(q^i) y^(q^j) = x_ C y_^T, where
x_ = (x, x^q, ..., x^(q^(n-1))). Presemifields are accepted everywhere; no
unit normalisation happens except inside `kaplansky`, which `nuclei` uses.

Transpose convention: S^t(x, y) = R_y^(x), the adjoint of right
multiplication by y with respect to (x, y) -> Tr(xy).
"""
from typing import List, Optional, Sequence, Tuple
import logging

import numpy as np

from config import settings
from core.errors import (
    NotASemifieldError,
    NotASubfieldError,
    NotBilinearError,
    SingularMapError,
    SizeMismatchError,
)
from core.gf import FieldCtx, get_context
from core.linmap import (
    LinMap,
    adjoint,
    dickson_matrix,
    evaluate,
    interpolate,
    inverse,
    is_invertible,
)
from core.rank import MatrixQN, fp_rank, theta_shift
from models import NucleiReport

logger = logging.getLogger(__name__)


class SemifieldCoeffs:
    """Coefficient matrix C of a bilinear product on F_{q^n}. Immutable."""

    __slots__ = ("ctx", "C")

    def __init__(self, ctx: FieldCtx, C: Sequence[Sequence[int]]):
        n = ctx.n
        if len(C) != n or any(len(row) != n for row in C):
            raise SizeMismatchError(f"coefficient matrix must be {n} x {n}")
        for row in C:
            for v in row:
                if not 0 <= v < ctx.order:
                    raise ValueError(f"element code {v} outside F_{ctx.order}")
        self.ctx = ctx
        self.C: Tuple[Tuple[int, ...], ...] = tuple(tuple(int(v) for v in row) for row in C)

    @classmethod
    def from_matrix(cls, M: MatrixQN) -> "SemifieldCoeffs":
        return cls(M.ctx, M.rows)

    @property
    def matrix(self) -> MatrixQN:
        return MatrixQN(self.ctx, self.C)

    def __eq__(self, other) -> bool:
        return isinstance(other, SemifieldCoeffs) and self.ctx == other.ctx and self.C == other.C

    def __hash__(self) -> int:
        return hash(self.C)

    def __repr__(self) -> str:
        return f"SemifieldCoeffs({self.ctx!r}, {[list(r) for r in self.C]})"

    def __call__(self, x: int, y: int) -> int:
        return multiply(self, x, y)


def _conjugates(ctx: FieldCtx, x: int) -> List[int]:
    """x_ = (x, x^q, ..., x^(q^(n-1)))."""
    return [ctx.frobenius(x, k) for k in range(ctx.n)]


def multiply(S: SemifieldCoeffs, x: int, y: int) -> int:
    ctx = S.ctx
    if not x or not y:
        return 0
    xs = _conjugates(ctx, x)
    ys = _conjugates(ctx, y)
    total = 0
    for xi, row in zip(xs, S.C):
        total = ctx.add(total, ctx.mul(xi, ctx.dot(row, ys)))
    return total


def multiply_direct(S: SemifieldCoeffs, x: int, y: int) -> int:
    """sum c_ij x^(q^i) y^(q^j) term by term; checks the matrix path of `multiply`."""
    ctx = S.ctx
    total = 0
    for i, row in enumerate(S.C):
        for j, c in enumerate(row):
            term = ctx.mul(c, ctx.mul(ctx.pow(x, ctx.q ** i), ctx.pow(y, ctx.q ** j)))
            total = ctx.add(total, term)
    return total


def right_mult_map(S: SemifieldCoeffs, y: int) -> LinMap:
    """R_y : x -> S(x, y); coefficient i is sum_j c_ij y^(q^j)."""
    ys = _conjugates(S.ctx, y)
    return LinMap(S.ctx, [S.ctx.dot(row, ys) for row in S.C])


def left_mult_map(S: SemifieldCoeffs, y: int) -> LinMap:
    """L_y : x -> S(y, x); coefficient j is sum_i c_ij y^(q^i)."""
    ys = _conjugates(S.ctx, y)
    return LinMap(S.ctx, [S.ctx.dot(col, ys) for col in zip(*S.C)])


def is_semifield(S: SemifieldCoeffs) -> bool:
    """No nontrivial zero divisors; R_y only needs checking on F_q^*-coset representatives."""
    return all(is_invertible(right_mult_map(S, y)) for y in S.ctx.projective_representatives())


def has_zero_divisor(S: SemifieldCoeffs) -> Optional[Tuple[int, int]]:
    """First (x, y), both nonzero, with S(x, y) = 0, or None."""
    ctx = S.ctx
    for y in ctx.projective_representatives():
        R = right_mult_map(S, y)
        if is_invertible(R):
            continue
        for x in range(1, ctx.order):
            if evaluate(R, x) == 0:
                return x, y
    return None


def to_table(S: SemifieldCoeffs) -> List[List[int]]:
    """Full multiplication table, row x, column y."""
    ctx = S.ctx
    columns = []
    for y in ctx.elements():
        R = right_mult_map(S, y)
        columns.append([evaluate(R, x) for x in ctx.elements()])
    return [list(row) for row in zip(*columns)]


# ---- Knuth operations ----

def dual(S: SemifieldCoeffs) -> SemifieldCoeffs:
    """S^d(x, y) = S(y, x)."""
    return SemifieldCoeffs(S.ctx, list(zip(*S.C)))


def transpose(S: SemifieldCoeffs) -> SemifieldCoeffs:
    """S^t(x, y) = adjoint(R_y)(x), interpolated row by row over a basis of y-values."""
    ctx = S.ctx
    basis = ctx.basis()
    adjoints = [adjoint(right_mult_map(S, y)) for y in basis]
    rows = []
    for a in range(ctx.n):
        row_map = interpolate(ctx, [(y, adj.coeffs[a]) for y, adj in zip(basis, adjoints)])
        rows.append(row_map.coeffs)
    return SemifieldCoeffs(ctx, rows)


def dtd(S: SemifieldCoeffs) -> SemifieldCoeffs:
    """Closed form C'[a][b] = C[(a-b) mod n][(n-b) mod n]^(q^b)."""
    ctx = S.ctx
    n = ctx.n
    return SemifieldCoeffs(ctx, [
        [ctx.frobenius(S.C[(a - b) % n][(n - b) % n], b) for b in range(n)]
        for a in range(n)
    ])


def dtd_composed(S: SemifieldCoeffs) -> SemifieldCoeffs:
    return dual(transpose(dual(S)))


def knuth(S: SemifieldCoeffs, word: str) -> SemifieldCoeffs:
    """Apply a word over {d, t} left to right."""
    for letter in word:
        if letter == "d":
            S = dual(S)
        elif letter == "t":
            S = transpose(S)
        else:
            raise ValueError(f"unknown Knuth operation {letter!r} in {word!r}")
    return S


# ---- isotopy ----

def isotope_matrix(S: SemifieldCoeffs, F: LinMap, G: LinMap, H: LinMap) -> MatrixQN:
    """sum_k h_k theta_k(A_F^T C A_G), the coefficients of H(S(F(x), G(y)))."""
    inner = dickson_matrix(F).T @ S.matrix @ dickson_matrix(G)
    ctx = S.ctx
    total = MatrixQN.zeros(ctx, ctx.n, ctx.n)
    for k, h in enumerate(H.coeffs):
        if h:
            total = total + theta_shift(inner, k).scale(h)
    return total


def apply_isotopy(S: SemifieldCoeffs, F: LinMap, G: LinMap, H: LinMap) -> SemifieldCoeffs:
    """The algebra (x, y) -> H(S(F(x), G(y)))."""
    for name, f in (("F", F), ("G", G), ("H", H)):
        if not is_invertible(f):
            raise SingularMapError(f"isotopy map {name} is singular")
    return SemifieldCoeffs.from_matrix(isotope_matrix(S, F, G, H))


def kaplansky(S: SemifieldCoeffs, e: int = 1) -> SemifieldCoeffs:
    """Semifield isotope x * y = S(R_e^-1(x), L_e^-1(y)) with identity S(e, e)."""
    try:
        R_inv = inverse(right_mult_map(S, e))
        L_inv = inverse(left_mult_map(S, e))
    except SingularMapError as exc:
        raise NotASemifieldError(f"multiplication by {e} is singular") from exc
    return SemifieldCoeffs.from_matrix(isotope_matrix(S, R_inv, L_inv, LinMap.identity(S.ctx)))


# ---- nuclei ----

def _nucleus_conditions(K: SemifieldCoeffs, position: str) -> List[List[int]]:
    """F_p matrix of a -> associator values on F_q-basis pairs; one row per F_p-basis a."""
    ctx = K.ctx
    basis = ctx.basis()
    rows = []
    for a in ctx.fp_basis():
        row: List[int] = []
        for x in basis:
            if position == "commute":
                row.extend(ctx.decode(ctx.sub(multiply(K, a, x), multiply(K, x, a))))
                continue
            for y in basis:
                if position == "left":
                    value = ctx.sub(multiply(K, multiply(K, a, x), y), multiply(K, a, multiply(K, x, y)))
                elif position == "middle":
                    value = ctx.sub(multiply(K, multiply(K, x, a), y), multiply(K, x, multiply(K, a, y)))
                else:
                    value = ctx.sub(multiply(K, multiply(K, x, y), a), multiply(K, x, multiply(K, y, a)))
                row.extend(ctx.decode(value))
        rows.append(row)
    return rows


def nuclei(S: SemifieldCoeffs) -> NucleiReport:
    """Sizes of the left, middle, right nucleus and centre of the semifield isotope of S.

    Each nucleus is the kernel of an F_p-linear map of the candidate a;
    associators are checked on F_q-basis pairs only, which suffices because
    they are F_q-bilinear in the two other slots.
    """
    if not is_semifield(S):
        raise NotASemifieldError("nuclei are only defined for (pre)semifields")
    ctx = S.ctx
    K = kaplansky(S)
    p, d = ctx.p, ctx.degree

    conditions = {pos: _nucleus_conditions(K, pos) for pos in ("left", "middle", "right", "commute")}
    exponents = {pos: d - fp_rank(p, rows) for pos, rows in conditions.items() if pos != "commute"}
    stacked = [sum((conditions[pos][i] for pos in conditions), []) for i in range(d)]
    centre_exp = d - fp_rank(p, stacked)

    def dimension(k: int) -> int:
        if d % k:
            logger.warning(f"nucleus of size {p}^{k} does not divide {p}^{d}")
        return d // k

    return NucleiReport(
        left=p ** exponents["left"],
        middle=p ** exponents["middle"],
        right=p ** exponents["right"],
        centre=p ** centre_exp,
        l=dimension(exponents["left"]),
        m=dimension(exponents["middle"]),
        r=dimension(exponents["right"]),
    )


# ---- table ingestion ----

def _check_fp_linear(ctx: FieldCtx, value) -> bool:
    """value(x) is F_p-additive in x over all of F_{q^n}, built up digit by digit."""
    p = ctx.p
    high = 1
    for x in range(1, ctx.order):
        if x >= high * p:
            high *= p
        digit, rest = divmod(x, high)
        expected = ctx.add(value(rest), ctx.mul(digit, value(high)))
        if value(x) != expected:
            return False
    return True


def _check_bilinear(ctx: FieldCtx, table: Sequence[Sequence[int]]) -> None:
    order = ctx.order
    beta = ctx.subfield_generator
    fp_basis = ctx.fp_basis()

    if order <= settings.bilinearity_exhaustive_order:
        for y in range(order):
            if not _check_fp_linear(ctx, lambda x: table[x][y]):
                raise NotBilinearError(f"table is not additive in x at column {y}")
        for x in range(order):
            row = table[x]
            if not _check_fp_linear(ctx, lambda y: row[y]):
                raise NotBilinearError(f"table is not additive in y at row {x}")
    else:
        rng = np.random.default_rng(settings.search_seed)
        for _ in range(settings.bilinearity_samples):
            x1, x2, y = (int(v) for v in rng.integers(order, size=3))
            if table[ctx.add(x1, x2)][y] != ctx.add(table[x1][y], table[x2][y]):
                raise NotBilinearError(f"additivity fails at x = {x1} + {x2}, y = {y}")
            if table[y][ctx.add(x1, x2)] != ctx.add(table[y][x1], table[y][x2]):
                raise NotBilinearError(f"additivity fails at x = {y}, y = {x1} + {x2}")

    for b in fp_basis:
        bb = ctx.mul(beta, b)
        for z in range(order):
            if table[bb][z] != ctx.mul(beta, table[b][z]) or table[z][bb] != ctx.mul(beta, table[z][b]):
                raise NotBilinearError(f"table is not F_{ctx.q}-homogeneous at ({b}, {z})")


def from_table(ctx: FieldCtx, table: Sequence[Sequence[int]]) -> SemifieldCoeffs:
    """Recover the unique coefficient matrix of a full multiplication table."""
    order = ctx.order
    if len(table) != order or any(len(row) != order for row in table):
        raise SizeMismatchError(f"table must be {order} x {order}")
    _check_bilinear(ctx, table)

    basis = ctx.basis()
    # y -> S(b_a, y) has coefficients r_j = sum_i c_ij b_a^(q^i)
    partial = [interpolate(ctx, [(y, table[b][y]) for y in basis]).coeffs for b in basis]
    columns = [interpolate(ctx, [(b, partial[a][j]) for a, b in enumerate(basis)]).coeffs
               for j in range(ctx.n)]
    S = SemifieldCoeffs(ctx, list(zip(*columns)))

    if order <= settings.bilinearity_exhaustive_order:
        if to_table(S) != [list(row) for row in table]:
            raise NotBilinearError("coefficient matrix does not reproduce the table")
    else:
        rng = np.random.default_rng(settings.search_seed + 1)
        for _ in range(settings.bilinearity_samples):
            x, y = (int(v) for v in rng.integers(order, size=2))
            if multiply(S, x, y) != table[x][y]:
                raise NotBilinearError(f"coefficient matrix disagrees with the table at ({x}, {y})")
    return S


# ---- change of centre ----

def rebase(S: SemifieldCoeffs, e_prime: int) -> SemifieldCoeffs:
    """Re-express S over F_{q'} with q = q'^t, q' = p^e_prime, as an (n t)-dimensional algebra.

    Both contexts share the modulus (it depends only on p and e n), so element
    codes are unchanged and x^(q^i) = x^(q'^(t i)).
    """
    ctx = S.ctx
    if e_prime < 1 or ctx.e % e_prime:
        raise NotASubfieldError(f"F_{ctx.p}^{e_prime} is not a subfield of F_{ctx.q}")
    t = ctx.e // e_prime
    target = get_context(ctx.p, e_prime, ctx.n * t)
    if target.modulus != ctx.modulus:
        raise NotASubfieldError("contexts disagree on the modulus")
    C = [[0] * target.n for _ in range(target.n)]
    for i, row in enumerate(S.C):
        for j, c in enumerate(row):
            C[t * i][t * j] = c
    return SemifieldCoeffs(target, C)
