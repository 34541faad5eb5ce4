"""
Sharded exhaustive rank minimisation over normalised H.

Candidate index i encodes (h_1, ..., h_{n-1}) in base Q = q^n with h_1 the
most significant digit, so increasing index is lexicographic order on the
code tuple. Shards are contiguous ranges of h_1. Every shard returns its own
(rank, smallest index) among invertible H; the caller reduces with min(),
which makes value and witness independent of the shard count.
"""
from contextlib import nullcontext
from types import SimpleNamespace
from typing import List, Optional, Sequence, Tuple
import logging
import multiprocessing as mp

from tqdm import tqdm

from config import settings
from core.gf import FieldCtx, get_context
from core.linmap import LinMap, is_invertible
from core.rank import MatrixQN, rank_of_rows, theta_shift

logger = logging.getLogger(__name__)

# Shared between pool workers; set by `_init_worker`.
_global_best = None
_exit_index = None


def _local_value(value: int) -> SimpleNamespace:
    """In-process stand-in for an mp.Value: same `.value` and `get_lock()`."""
    return SimpleNamespace(value=value, get_lock=nullcontext)


def _init_worker(global_best, exit_index) -> None:
    global _global_best, _exit_index
    _global_best = global_best
    _exit_index = exit_index


def candidate_count(ctx: FieldCtx) -> int:
    return ctx.order ** (ctx.n - 1)


def digits_of(ctx: FieldCtx, index: int) -> List[int]:
    """(h_1, ..., h_{n-1}) of a candidate index."""
    digits = []
    for _ in range(ctx.n - 1):
        index, d = divmod(index, ctx.order)
        digits.append(d)
    return digits[::-1]


def index_of(ctx: FieldCtx, digits: Sequence[int]) -> int:
    index = 0
    for d in digits:
        index = index * ctx.order + d
    return index


def witness_map(ctx: FieldCtx, digits: Sequence[int]) -> LinMap:
    return LinMap(ctx, [1] + list(digits))


def shard_ranges(ctx: FieldCtx, shards: int) -> List[Tuple[int, int]]:
    """Contiguous [lo, hi) ranges of the leading digit h_1."""
    if ctx.n == 1:
        return [(0, 1)]
    Q = ctx.order
    shards = max(1, min(shards, Q))
    step, extra = divmod(Q, shards)
    ranges, lo = [], 0
    for s in range(shards):
        hi = lo + step + (1 if s < extra else 0)
        ranges.append((lo, hi))
        lo = hi
    return ranges


def _flat(M: MatrixQN) -> List[int]:
    return [v for row in M.rows for v in row]


def search_shard(p: int, e: int, n: int, C: Tuple[Tuple[int, ...], ...],
                 lo: int, hi: int, lower_bound: int, early_exit: bool) -> Tuple[int, int]:
    """Minimum rank and its smallest candidate index over h_1 in [lo, hi).

    Returns (n + 1, -1) when no invertible candidate was accepted.
    """
    ctx = get_context(p, e, n)
    shared_best = _global_best if _global_best is not None else _local_value(n + 1)
    exit_index = _exit_index if _exit_index is not None else _local_value(candidate_count(ctx))

    exp, log = ctx.exp_table, ctx.log_table
    add = ctx.add
    char2 = p == 2
    base = MatrixQN(ctx, C)
    thetas = [_flat(theta_shift(base, k)) for k in range(1, n)]
    # log-table form of each theta_k, -1 marks a zero entry
    theta_logs = [[log[v] if v else -1 for v in t] for t in thetas]
    Q = ctx.order
    levels = n - 1
    stride = Q ** (levels - 1) if levels else 1

    best_rank, best_index = n + 1, -1

    def consider(matrix: List[int], index: int) -> bool:
        """Returns True when the shard should stop."""
        nonlocal best_rank, best_index
        if index > exit_index.value:
            return True
        rows = [matrix[i * n:(i + 1) * n] for i in range(n)]
        rank = rank_of_rows(ctx, rows)
        if rank < best_rank and rank <= shared_best.value:
            H = witness_map(ctx, digits_of(ctx, index))
            if is_invertible(H):
                best_rank, best_index = rank, index
                logger.debug(f"shard [{lo}, {hi}): rank {rank} at candidate {index}")
                with shared_best.get_lock():
                    if rank < shared_best.value:
                        shared_best.value = rank
                if early_exit and rank <= lower_bound:
                    with exit_index.get_lock():
                        if index < exit_index.value:
                            exit_index.value = index
                    return True
        return False

    def shifted(partial: List[int], level: int, h: int) -> List[int]:
        """partial + h * theta_{level + 1}."""
        if not h:
            return partial
        lh = log[h]
        tl = theta_logs[level]
        if char2:
            return [a ^ exp[lh + t] if t >= 0 else a for a, t in zip(partial, tl)]
        return [add(a, exp[lh + t]) if t >= 0 else a for a, t in zip(partial, tl)]

    start = _flat(base)
    if levels == 0:
        consider(start, 0)
        return best_rank, best_index

    def descend(partial: List[int], level: int, index: int) -> bool:
        weight = Q ** (levels - 1 - level)
        for h in range(Q):
            current = shifted(partial, level, h)
            here = index + h * weight
            if level == levels - 1:
                if consider(current, here):
                    return True
            elif descend(current, level + 1, here):
                return True
        return False

    leading = range(lo, hi)
    if settings.show_progress and _global_best is None:
        leading = tqdm(leading, desc="rank search", unit="h1")
    for h1 in leading:
        current = shifted(start, 0, h1)
        index = h1 * stride
        if levels == 1:
            stop = consider(current, index)
        else:
            stop = descend(current, 1, index)
        if stop:
            break
    return best_rank, best_index


def exhaustive_min_rank(ctx: FieldCtx, C: Sequence[Sequence[int]], threads: int = 1,
                        lower_bound: int = 1, early_exit: bool = False) -> Tuple[int, Optional[List[int]], int]:
    """Minimum rank of sum h_k theta_k(C) over invertible normalised H.

    Returns (value, witness digits, logical candidates examined); the count is
    the full space on a complete run and witness index + 1 after an early exit.
    """
    total = candidate_count(ctx)
    key = tuple(tuple(row) for row in C)
    ranges = shard_ranges(ctx, threads)
    logger.info(
        f"Exhaustive rank search over {total} candidates in {len(ranges)} shard(s) "
        f"(F_{ctx.order}, n={ctx.n})"
    )
    tasks = [(ctx.p, ctx.e, ctx.n, key, lo, hi, lower_bound, early_exit) for lo, hi in ranges]

    if len(tasks) == 1:
        results = [search_shard(*tasks[0])]
    else:
        global_best = mp.Value("i", ctx.n + 1)
        exit_index = mp.Value("q", total)
        with mp.Pool(len(tasks), initializer=_init_worker, initargs=(global_best, exit_index)) as pool:
            results = pool.starmap(search_shard, tasks)

    accepted = [r for r in results if r[1] >= 0]
    if not accepted:
        return ctx.n + 1, None, total
    rank, index = min(accepted)
    examined = index + 1 if early_exit and rank <= lower_bound else total
    logger.info(f"Rank search finished: minimum {rank} at candidate {index}")
    return rank, digits_of(ctx, index), examined
