"""
Exact linear algebra over F_{q^n}: rank, rank factorisation, linear solve.

Matrices are tiny (n <= 6), so everything is plain Gaussian elimination on
lists of element codes with eager pivot normalisation. F_p-level helpers
(rank and kernel over the prime field) go through galois.
"""
from typing import List, Sequence, Tuple
import logging

import galois
import numpy as np

from core.errors import NoSolutionError
from core.gf import FieldCtx

logger = logging.getLogger(__name__)


class MatrixQN:
    """Immutable rows x cols matrix over F_{q^n}."""

    __slots__ = ("ctx", "rows", "nrows", "ncols")

    def __init__(self, ctx: FieldCtx, rows: Sequence[Sequence[int]]):
        self.ctx = ctx
        self.rows = tuple(tuple(int(v) for v in row) for row in rows)
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        if self.nrows == 0 or self.ncols == 0:
            raise ValueError("matrix dimensions must be positive")
        for row in self.rows:
            if len(row) != self.ncols:
                raise ValueError("ragged matrix")
            for v in row:
                if not 0 <= v < ctx.order:
                    raise ValueError(f"element code {v} outside F_{ctx.order}")

    @classmethod
    def zeros(cls, ctx: FieldCtx, nrows: int, ncols: int) -> "MatrixQN":
        return cls(ctx, [[0] * ncols for _ in range(nrows)])

    @classmethod
    def identity(cls, ctx: FieldCtx, size: int) -> "MatrixQN":
        return cls(ctx, [[1 if i == j else 0 for j in range(size)] for i in range(size)])

    def __getitem__(self, index: int) -> Tuple[int, ...]:
        return self.rows[index]

    def __eq__(self, other) -> bool:
        return isinstance(other, MatrixQN) and self.ctx == other.ctx and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"MatrixQN({[list(r) for r in self.rows]})"

    def tolist(self) -> List[List[int]]:
        return [list(r) for r in self.rows]

    @property
    def T(self) -> "MatrixQN":
        return MatrixQN(self.ctx, list(zip(*self.rows)))

    def __matmul__(self, other: "MatrixQN") -> "MatrixQN":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        cols = list(zip(*other.rows))
        return MatrixQN(self.ctx, [[self.ctx.dot(row, col) for col in cols] for row in self.rows])

    def __add__(self, other: "MatrixQN") -> "MatrixQN":
        add = self.ctx.add
        return MatrixQN(self.ctx, [[add(a, b) for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def scale(self, c: int) -> "MatrixQN":
        mul = self.ctx.mul
        return MatrixQN(self.ctx, [[mul(c, v) for v in row] for row in self.rows])

    def apply(self, vector: Sequence[int]) -> List[int]:
        return [self.ctx.dot(row, vector) for row in self.rows]


def rank_of_rows(ctx: FieldCtx, rows: List[List[int]]) -> int:
    """Rank of a list-of-lists matrix; destroys `rows`. Hot path of the rank search."""
    exp = ctx.exp_table
    log = ctx.log_table
    G = ctx.group_order
    char2 = ctx.p == 2
    add = ctx.add
    neg = ctx.neg

    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    rank = 0
    for col in range(ncols):
        pivot = -1
        for r in range(rank, nrows):
            if rows[r][col]:
                pivot = r
                break
        if pivot < 0:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        prow = rows[rank]
        shift = G - log[prow[col]]
        prow = [exp[log[v] + shift] if v else 0 for v in prow]
        rows[rank] = prow
        for r in range(rank + 1, nrows):
            row = rows[r]
            f = row[col]
            if not f:
                continue
            if char2:
                lf = log[f]
                rows[r] = [a ^ exp[lf + log[b]] if b else a for a, b in zip(row, prow)]
            else:
                lf = log[neg(f)]
                rows[r] = [add(a, exp[lf + log[b]]) if b else a for a, b in zip(row, prow)]
        rank += 1
        if rank == nrows:
            break
    return rank


def _echelon(ctx: FieldCtx, rows: List[List[int]]) -> Tuple[List[List[int]], List[int]]:
    """Reduced row echelon form and pivot columns."""
    rows = [list(r) for r in rows]
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    pivots: List[int] = []
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, nrows) if rows[r][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = ctx.inv(rows[rank][col])
        rows[rank] = [ctx.mul(inv, v) for v in rows[rank]]
        for r in range(nrows):
            if r != rank and rows[r][col]:
                f = rows[r][col]
                rows[r] = [ctx.sub(a, ctx.mul(f, b)) for a, b in zip(rows[r], rows[rank])]
        pivots.append(col)
        rank += 1
        if rank == nrows:
            break
    return rows, pivots


def matrix_rank(A: MatrixQN) -> int:
    return rank_of_rows(A.ctx, A.tolist())


def rank_factor(A: MatrixQN) -> Tuple[List[List[int]], List[List[int]]]:
    """Minimal (u_1..u_r, v_1..v_r) with A = sum u_i^T v_i.

    u_i is the i-th pivot column of A and v_i the i-th nonzero row of its
    reduced echelon form.
    """
    rref, pivots = _echelon(A.ctx, A.tolist())
    us = [[A.rows[i][col] for i in range(A.nrows)] for col in pivots]
    vs = [rref[i] for i in range(len(pivots))]
    return us, vs


def outer_sum(ctx: FieldCtx, us: Sequence[Sequence[int]], vs: Sequence[Sequence[int]],
              nrows: int, ncols: int) -> MatrixQN:
    """sum_i u_i^T v_i."""
    out = [[0] * ncols for _ in range(nrows)]
    for u, v in zip(us, vs):
        for i in range(nrows):
            if u[i]:
                for j in range(ncols):
                    out[i][j] = ctx.add(out[i][j], ctx.mul(u[i], v[j]))
    return MatrixQN(ctx, out)


def solve(A: MatrixQN, b: Sequence[int]) -> List[int]:
    """One solution x of A x = b (free variables set to zero)."""
    ctx = A.ctx
    if len(b) != A.nrows:
        raise ValueError("right-hand side length mismatch")
    augmented = [list(row) + [int(v)] for row, v in zip(A.rows, b)]
    rref, pivots = _echelon(ctx, augmented)
    if A.ncols in pivots:
        rank = len(pivots) - 1
        raise NoSolutionError(
            f"inconsistent system (rank {rank} of {A.ncols})", deficiency=A.ncols - rank
        )
    x = [0] * A.ncols
    for i, col in enumerate(pivots):
        x[col] = rref[i][A.ncols]
    return x


def theta_shift(C: MatrixQN, k: int) -> MatrixQN:
    """theta_k(C)[i][j] = C[(i-k) mod n][(j-k) mod n]^(q^k).

    For H(x) = sum h_k x^(q^k), the algebra H(S(x, y)) has coefficient matrix
    sum_k h_k theta_k(M(S)).
    """
    ctx = C.ctx
    n = C.nrows
    k %= n
    return MatrixQN(ctx, [
        [ctx.frobenius(C.rows[(i - k) % n][(j - k) % n], k) for j in range(n)]
        for i in range(n)
    ])


# ---- prime-field helpers ----

def fp_rank(p: int, rows: Sequence[Sequence[int]]) -> int:
    """Rank over F_p of an integer matrix with entries in [0, p)."""
    if not rows or not rows[0]:
        return 0
    GF = galois.GF(p)
    return int(np.linalg.matrix_rank(GF(np.asarray(rows, dtype=np.int64))))


def fp_null_space(p: int, rows: Sequence[Sequence[int]]) -> List[List[int]]:
    """Row basis of the left kernel {x : x A = 0} of `rows` over F_p."""
    GF = galois.GF(p)
    kernel = GF(np.asarray(rows, dtype=np.int64)).T.null_space()
    return [[int(v) for v in vec] for vec in kernel.tolist()]

