"""
Matrix rank over isotopy classes and the BEL-rank.

brk(S) is the minimum of rank(M(S'^dtd)) over the isotopy class of S. The
minimum only needs strong isotopies with H normalised to h_0 = 1, so the
search ranges over (h_1, ..., h_{n-1}) in F_{q^n}^(n-1); see `core.search`.
"""
from typing import Dict, List, Optional, Tuple
import logging
import time

import numpy as np

from config import settings
from core.errors import BudgetInvalidError, NotASemifieldError, SearchSpaceTooLargeError
from core.gf import FieldCtx
from core.linmap import LinMap, is_invertible, random_linmap
from core.rank import MatrixQN, fp_rank, matrix_rank, rank_of_rows, theta_shift
from core.search import candidate_count, exhaustive_min_rank
from core.semifield import (
    SemifieldCoeffs,
    apply_isotopy,
    dtd,
    dual,
    is_semifield,
    knuth,
    left_mult_map,
    nuclei,
    transpose,
)
from models import BelRankResult, BelTriple, Certificate, KnuthProfile

logger = logging.getLogger(__name__)

__all__ = [
    "theta_shift",
    "mrk",
    "lower_bound",
    "mrk_class",
    "bel_rank",
    "bel_triple",
    "knuth_profile",
    "spread_span_dim",
    "random_isotope",
    "witness_isotope",
]

KNUTH_WORDS = ("", "d", "t", "dt", "td", "dtd")
# Pairs of Knuth images whose BEL-ranks coincide
KNUTH_EQUALITIES = (("", "t"), ("d", "dt"), ("dtd", "td"))


def mrk(S: SemifieldCoeffs) -> int:
    return matrix_rank(S.matrix)


def lower_bound(S: SemifieldCoeffs) -> int:
    """1 when S is isotopic to the field (every nucleus is everything), else 2."""
    try:
        report = nuclei(S)
    except NotASemifieldError:
        return 1
    order = S.ctx.order
    if all(size == order for size in report.sizes[:3]):
        return 1
    return 2


def _budget_search(ctx: FieldCtx, C: MatrixQN, budget: int, seed: int) -> Tuple[int, List[int]]:
    """Identity first, then `budget` seeded random normalised H."""
    n = ctx.n
    thetas = [theta_shift(C, k) for k in range(n)]
    rng = np.random.default_rng(seed)

    def rank_at(digits: List[int]) -> int:
        total = thetas[0]
        for k, h in enumerate(digits, start=1):
            if h:
                total = total + thetas[k].scale(h)
        return rank_of_rows(ctx, total.tolist())

    best_digits = [0] * (n - 1)
    best_rank = rank_at(best_digits)
    for _ in range(budget):
        digits = [int(v) for v in rng.integers(ctx.order, size=n - 1)]
        rank = rank_at(digits)
        if (rank, digits) < (best_rank, best_digits) and is_invertible(LinMap(ctx, [1] + digits)):
            best_rank, best_digits = rank, digits
    return best_rank, best_digits


def mrk_class(S: SemifieldCoeffs, mode: Optional[str] = None, budget: Optional[int] = None,
              seed: Optional[int] = None, threads: Optional[int] = None,
              early_exit: Optional[bool] = None) -> BelRankResult:
    """Minimum rank of M(S^(I,I,H)) over invertible H = x + sum_{k>0} h_k x^(q^k)."""
    mode = mode or settings.search_mode
    budget = settings.search_budget if budget is None else budget
    seed = settings.search_seed if seed is None else seed
    threads = threads or settings.search_threads
    early_exit = settings.early_exit if early_exit is None else early_exit

    ctx = S.ctx
    started = time.perf_counter()
    lb = lower_bound(S)

    if mode == "budget":
        if budget < 0:
            raise BudgetInvalidError(f"budget must be non-negative, got {budget}")
        value, digits = _budget_search(ctx, S.matrix, budget, seed)
        certificate = [Certificate.UPPER_BOUND]
        if lb >= 2 and value == lb:
            certificate.append(Certificate.LOWER_BOUND_NUCLEI)
        examined = budget + 1
    elif mode == "exhaustive":
        total = candidate_count(ctx)
        if total > settings.max_exhaustive_candidates:
            raise SearchSpaceTooLargeError(
                f"{total} candidates exceed the exhaustive limit {settings.max_exhaustive_candidates}; "
                f"use --mode budget"
            )
        value, digits, examined = exhaustive_min_rank(
            ctx, S.C, threads=threads, lower_bound=lb, early_exit=early_exit and lb >= 2
        )
        if examined < total:
            certificate = [Certificate.UPPER_BOUND, Certificate.LOWER_BOUND_NUCLEI]
        else:
            certificate = [Certificate.EXHAUSTIVE]
    else:
        raise ValueError(f"unknown search mode {mode!r}")

    elapsed = (time.perf_counter() - started) * 1000.0
    logger.info(f"mrk class = {value} ({'+'.join(c.value for c in certificate)}) in {elapsed:.1f} ms")
    return BelRankResult(
        value=value,
        witness_H=[1] + list(digits or []),
        certificate=certificate,
        candidates_examined=examined,
        elapsed=elapsed,
    )


def bel_rank(S: SemifieldCoeffs, force: bool = False, **search) -> BelRankResult:
    """brk(S) = mrk of the isotopy class of S^dtd."""
    if not force and not is_semifield(S):
        raise NotASemifieldError("BEL-rank is only defined for (pre)semifields")
    return mrk_class(dtd(S), **search)


def bel_triple(S: SemifieldCoeffs, force: bool = False, **search) -> BelTriple:
    Sd = dual(S)
    triple = BelTriple(
        brk=bel_rank(S, force=force, **search),
        brk_d=bel_rank(Sd, force=force, **search),
        brk_dt=bel_rank(transpose(Sd), force=force, **search),
    )
    if triple.d_dt_mismatch:
        logger.warning(f"brk(S^d) = {triple.brk_d.value} differs from brk(S^dt) = {triple.brk_dt.value}")
    return triple


def knuth_profile(S: SemifieldCoeffs, force: bool = False, **search) -> KnuthProfile:
    """brk of all six Knuth images, flagging any broken equality."""
    results: Dict[str, BelRankResult] = {
        word: bel_rank(knuth(S, word), force=force, **search) for word in KNUTH_WORDS
    }
    violations = []
    for a, b in KNUTH_EQUALITIES:
        if results[a].value != results[b].value:
            label = f"brk({a or 'S'}) != brk({b or 'S'})"
            logger.warning(f"Knuth equality broken: {label}")
            violations.append(label)
    return KnuthProfile(
        values={word or "S": r.value for word, r in results.items()},
        certificates={word or "S": r.certificate_text for word, r in results.items()},
        violations=violations,
    )


def spread_span_dim(S: SemifieldCoeffs) -> int:
    """dim over F_q of the span of {L_y o (x -> a x) : y, a in F_{q^n}}."""
    ctx = S.ctx
    rows = []
    for y in ctx.basis():
        v = left_mult_map(S, y).coeffs
        for alpha in ctx.fp_basis():
            row: List[int] = []
            for j, vj in enumerate(v):
                row.extend(ctx.decode(ctx.mul(vj, ctx.frobenius(alpha, j))))
            rows.append(row)
    return fp_rank(ctx.p, rows) // ctx.e


def random_isotope(S: SemifieldCoeffs, seed: int) -> SemifieldCoeffs:
    """apply_isotopy with seeded random invertible F, G, H."""
    rng = np.random.default_rng(seed)
    F = random_linmap(S.ctx, rng, invertible=True)
    G = random_linmap(S.ctx, rng, invertible=True)
    H = random_linmap(S.ctx, rng, invertible=True)
    return apply_isotopy(S, F, G, H)


def witness_isotope(S: SemifieldCoeffs, result: BelRankResult) -> SemifieldCoeffs:
    """The isotope T of S with rank(M(T^dtd)) = result.value."""
    ctx = S.ctx
    H = LinMap(ctx, result.witness_H)
    identity = LinMap.identity(ctx)
    return dtd(apply_isotopy(dtd(S), identity, identity, H))
