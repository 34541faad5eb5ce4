"""
F_q-linear endomorphisms of F_{q^n} as linearized polynomials.

A LinMap with coefficients (w_0, ..., w_{n-1}) is x -> sum_j w_j x^(q^j).
The coefficient vector is the canonical form; the F_p-matrix of a map is
only built as a verification oracle.
"""
from typing import Iterable, List, Sequence, Tuple
import logging

import numpy as np

from core.errors import NotABasisError, NoSolutionError, ParseError, SingularMapError
from core.gf import FieldCtx
from core.rank import MatrixQN, fp_rank, matrix_rank, solve

logger = logging.getLogger(__name__)


class LinMap:
    """Immutable q-polynomial sum_j w_j x^(q^j) over a FieldCtx."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldCtx, coeffs: Sequence[int]):
        if len(coeffs) != ctx.n:
            raise ValueError(f"a LinMap over F_{ctx.order} needs {ctx.n} coefficients, got {len(coeffs)}")
        for w in coeffs:
            if not 0 <= w < ctx.order:
                raise ValueError(f"element code {w} outside F_{ctx.order}")
        self.ctx = ctx
        self.coeffs: Tuple[int, ...] = tuple(int(w) for w in coeffs)

    @classmethod
    def identity(cls, ctx: FieldCtx) -> "LinMap":
        return cls.scalar(ctx, 1)

    @classmethod
    def zero(cls, ctx: FieldCtx) -> "LinMap":
        return cls(ctx, [0] * ctx.n)

    @classmethod
    def scalar(cls, ctx: FieldCtx, a: int) -> "LinMap":
        """x -> a x."""
        return cls(ctx, [a] + [0] * (ctx.n - 1))

    @classmethod
    def frobenius(cls, ctx: FieldCtx, k: int = 1) -> "LinMap":
        """x -> x^(q^k)."""
        coeffs = [0] * ctx.n
        coeffs[k % ctx.n] = 1
        return cls(ctx, coeffs)

    def __call__(self, x: int) -> int:
        return evaluate(self, x)

    def __eq__(self, other) -> bool:
        return isinstance(other, LinMap) and self.ctx == other.ctx and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"LinMap({list(self.coeffs)})"

    def __add__(self, other: "LinMap") -> "LinMap":
        add = self.ctx.add
        return LinMap(self.ctx, [add(a, b) for a, b in zip(self.coeffs, other.coeffs)])

    def __matmul__(self, other: "LinMap") -> "LinMap":
        return compose(self, other)

    def to_text(self) -> str:
        """Textual form: n element codes, constant term first."""
        return " ".join(str(w) for w in self.coeffs)

    @classmethod
    def from_text(cls, ctx: FieldCtx, text: str, line: int = 0) -> "LinMap":
        fields = text.split()
        if len(fields) != ctx.n:
            raise ParseError(f"expected {ctx.n} coefficients, found {len(fields)}", line)
        try:
            return cls(ctx, [int(f) for f in fields])
        except ValueError as exc:
            raise ParseError(str(exc), line) from exc


def evaluate(f: LinMap, x: int) -> int:
    ctx = f.ctx
    if not x:
        return 0
    exp, log, G = ctx.exp_table, ctx.log_table, ctx.group_order
    lx = log[x]
    frob = ctx.frob_exponents
    total = 0
    for j, w in enumerate(f.coeffs):
        if w:
            total = ctx.add(total, exp[log[w] + (lx * frob[j]) % G])
    return total


def dickson_matrix(f: LinMap) -> MatrixQN:
    """A_f with A_f[i][j] = w_{(j-i) mod n}^(q^i), so that A_f x_^T = f(x)_^T."""
    ctx = f.ctx
    n = ctx.n
    return MatrixQN(ctx, [
        [ctx.frobenius(f.coeffs[(j - i) % n], i) for j in range(n)]
        for i in range(n)
    ])


def is_invertible(f: LinMap) -> bool:
    return matrix_rank(dickson_matrix(f)) == f.ctx.n


def fp_matrix(f: LinMap) -> List[List[int]]:
    """Matrix of f over F_p; column i holds the digits of f(t^i)."""
    ctx = f.ctx
    columns = [ctx.decode(evaluate(f, b)) for b in ctx.fp_basis()]
    return [list(row) for row in zip(*columns)]


def is_invertible_fp(f: LinMap) -> bool:
    return fp_rank(f.ctx.p, fp_matrix(f)) == f.ctx.degree


def adjoint(g: LinMap) -> LinMap:
    """Adjoint for (x, y) -> Tr(xy): coefficient j is w_{(n-j) mod n}^(q^j)."""
    ctx = g.ctx
    n = ctx.n
    return LinMap(ctx, [ctx.frobenius(g.coeffs[(n - j) % n], j) for j in range(n)])


def compose(f: LinMap, g: LinMap) -> LinMap:
    """f o g, coefficient k = sum_{i+j = k mod n} f_i g_j^(q^i)."""
    ctx = f.ctx
    n = ctx.n
    out = [0] * n
    for i, fi in enumerate(f.coeffs):
        if not fi:
            continue
        for j, gj in enumerate(g.coeffs):
            if gj:
                k = (i + j) % n
                out[k] = ctx.add(out[k], ctx.mul(fi, ctx.frobenius(gj, i)))
    return LinMap(ctx, out)


def moore_matrix(ctx: FieldCtx, elements: Sequence[int]) -> MatrixQN:
    """Rows (b, b^q, ..., b^(q^(n-1)))."""
    return MatrixQN(ctx, [[ctx.frobenius(b, j) for j in range(ctx.n)] for b in elements])


def interpolate(ctx: FieldCtx, pairs: Iterable[Tuple[int, int]]) -> LinMap:
    """The unique LinMap f with f(b_i) = v_i for an F_q-basis b_1..b_n."""
    pairs = list(pairs)
    if len(pairs) != ctx.n:
        raise NotABasisError(f"need {ctx.n} interpolation points, got {len(pairs)}")
    moore = moore_matrix(ctx, [b for b, _ in pairs])
    if matrix_rank(moore) < ctx.n:
        raise NotABasisError("interpolation points are not F_q-independent")
    try:
        return LinMap(ctx, solve(moore, [v for _, v in pairs]))
    except NoSolutionError as exc:
        raise NotABasisError(str(exc)) from exc


def inverse(f: LinMap) -> LinMap:
    ctx = f.ctx
    basis = ctx.basis()
    try:
        return interpolate(ctx, [(evaluate(f, b), b) for b in basis])
    except NotABasisError as exc:
        raise SingularMapError(f"{f!r} is not invertible") from exc


def random_linmap(ctx: FieldCtx, rng: np.random.Generator, invertible: bool = False) -> LinMap:
    while True:
        f = LinMap(ctx, [ctx.random_element(rng) for _ in range(ctx.n)])
        if not invertible or is_invertible(f):
            return f
