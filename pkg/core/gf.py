"""
Exact arithmetic in the field tower F_p <= F_q <= F_{q^n}.

F_{q^n} is realised once as F_p[t]/(m) with m the lexicographically smallest
primitive polynomial of degree e*n, so element codes are reproducible across
runs and machines. An element sum a_i t^i is encoded as the integer
sum a_i p^i. F_q is located as the fixed field of x -> x^q.
"""
from functools import lru_cache
from typing import List, Sequence
import logging

import galois
import numpy as np

from config import settings
from core.errors import (
    DivisionByZeroError,
    NonPrimeError,
    NoPrimitivePolynomialError,
    TooLargeError,
)

logger = logging.getLogger(__name__)


class FieldCtx:
    """Table-backed F_{q^n} with q = p^e. Immutable after construction."""

    def __init__(self, p: int, e: int, n: int):
        if not galois.is_prime(p):
            raise NonPrimeError(f"{p} is not prime")
        if e < 1 or n < 1:
            raise ValueError(f"extension degrees must be positive, got e={e}, n={n}")

        self.p = p
        self.e = e
        self.n = n
        self.degree = e * n
        if not _power_within(p, self.degree, settings.max_table_order):
            raise TooLargeError(
                f"q^n = {p}^{self.degree} exceeds the table bound {settings.max_table_order}"
            )
        self.q = p ** e
        self.order = p ** self.degree
        self.group_order = self.order - 1

        try:
            poly = galois.primitive_poly(p, self.degree, method="min")
        except (RuntimeError, ValueError) as exc:
            raise NoPrimitivePolynomialError(
                f"no primitive polynomial of degree {self.degree} over F_{p}"
            ) from exc

        self.modulus = tuple(int(c) for c in poly.coeffs[::-1])
        self.prime_field = galois.GF(p)
        self._modulus_poly = poly

        if self.degree == 1:
            self.galois_field = self.prime_field
            self.generator = (-self.modulus[0]) % p
        else:
            self.galois_field = galois.GF(self.order, irreducible_poly=poly)
            self.generator = p

        self._build_tables()

        G = self.group_order
        self.frob_exponents = [pow(self.q, k, G) if G > 1 else 0 for k in range(self.n)]
        self.subfield_step = G // (self.q - 1)

        if p == 2:
            self.add = self._add_char2
            self.sub = self._add_char2
            self.neg = self._neg_char2
        else:
            self.add = self._add_zech
            self.sub = self._sub_zech
            self.neg = self._neg_odd

        logger.info(
            f"Field context F_{self.order} (p={p}, e={e}, n={n}), modulus {self.modulus_text()}"
        )

    def __reduce__(self):
        return get_context, (self.p, self.e, self.n)

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldCtx) and (self.p, self.e, self.n) == (other.p, other.e, other.n)

    def __hash__(self) -> int:
        return hash((self.p, self.e, self.n))

    def __repr__(self) -> str:
        return f"FieldCtx(p={self.p}, e={self.e}, n={self.n})"

    def _build_tables(self) -> None:
        """Log/antilog tables of the generator t, plus Zech logarithms in odd characteristic."""
        G = self.group_order
        GF = self.galois_field
        powers = GF(self.generator) ** np.arange(G)
        exp = [int(v) for v in powers.tolist()]

        log = [-1] * self.order
        for i, v in enumerate(exp):
            log[v] = i
        if sorted(exp) != list(range(1, self.order)):
            raise NoPrimitivePolynomialError(f"modulus {self.modulus} is not primitive")

        # doubled so exp[la + lb] never needs a reduction
        self.exp_table: List[int] = exp + exp
        self.log_table: List[int] = log

        if self.p == 2:
            self.zech_table = None
            self._half = 0
        else:
            shifted = (GF(1) + powers).tolist()
            self.zech_table = [log[int(v)] if int(v) else -1 for v in shifted]
            self._half = G // 2

    # ---- encoding ----

    def decode(self, code: int) -> List[int]:
        """F_p digits (a_0, ..., a_{en-1}) of an element code."""
        if not 0 <= code < self.order:
            raise ValueError(f"element code {code} outside [0, {self.order})")
        digits = []
        for _ in range(self.degree):
            code, digit = divmod(code, self.p)
            digits.append(digit)
        return digits

    def encode(self, digits: Sequence[int]) -> int:
        if len(digits) != self.degree:
            raise ValueError(f"expected {self.degree} digits, got {len(digits)}")
        code = 0
        for digit in reversed(digits):
            if not 0 <= digit < self.p:
                raise ValueError(f"digit {digit} outside F_{self.p}")
            code = code * self.p + digit
        return code

    def modulus_text(self) -> str:
        return " ".join(str(c) for c in self.modulus)

    # ---- arithmetic ----

    def _add_char2(self, a: int, b: int) -> int:
        return a ^ b

    def _neg_char2(self, a: int) -> int:
        return a

    def _add_zech(self, a: int, b: int) -> int:
        if not a:
            return b
        if not b:
            return a
        la = self.log_table[a]
        d = self.log_table[b] - la
        if d < 0:
            d += self.group_order
        z = self.zech_table[d]
        if z < 0:
            return 0
        return self.exp_table[la + z]

    def _neg_odd(self, a: int) -> int:
        if not a:
            return 0
        return self.exp_table[self.log_table[a] + self._half]

    def _sub_zech(self, a: int, b: int) -> int:
        return self._add_zech(a, self._neg_odd(b))

    def mul(self, a: int, b: int) -> int:
        if not a or not b:
            return 0
        return self.exp_table[self.log_table[a] + self.log_table[b]]

    def inv(self, a: int) -> int:
        if not a:
            raise DivisionByZeroError("inverse of zero")
        return self.exp_table[(self.group_order - self.log_table[a]) % self.group_order]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if not a:
            if k < 0:
                raise DivisionByZeroError("negative power of zero")
            return 1 if k == 0 else 0
        return self.exp_table[(self.log_table[a] * k) % self.group_order]

    def frobenius(self, a: int, k: int = 1) -> int:
        """a^(q^k), with k taken mod n."""
        if not a:
            return 0
        return self.exp_table[(self.log_table[a] * self.frob_exponents[k % self.n]) % self.group_order]

    def trace(self, a: int) -> int:
        """Tr_{q^n : q}(a) = sum of the n conjugates a^(q^k)."""
        total = 0
        for k in range(self.n):
            total = self.add(total, self.frobenius(a, k))
        return total

    def dot(self, u: Sequence[int], v: Sequence[int]) -> int:
        total = 0
        for a, b in zip(u, v):
            if a and b:
                total = self.add(total, self.exp_table[self.log_table[a] + self.log_table[b]])
        return total

    def reference_mul(self, a: int, b: int) -> int:
        """Polynomial product reduced mod the modulus; verification path for `mul`."""
        pa = galois.Poly.Int(a, field=self.prime_field)
        pb = galois.Poly.Int(b, field=self.prime_field)
        return int((pa * pb) % self._modulus_poly)

    def reference_add(self, a: int, b: int) -> int:
        return self.encode([(x + y) % self.p for x, y in zip(self.decode(a), self.decode(b))])

    # ---- structure ----

    def elements(self) -> range:
        return range(self.order)

    def basis(self) -> List[int]:
        """F_q-basis 1, t, ..., t^(n-1) of F_{q^n}."""
        return [self.p ** j for j in range(self.n)]

    def fp_basis(self) -> List[int]:
        return [self.p ** i for i in range(self.degree)]

    @property
    def subfield_generator(self) -> int:
        """A primitive element of F_q."""
        return self.exp_table[self.subfield_step % self.group_order] if self.group_order > 1 else 1

    def subfield_fp_basis(self) -> List[int]:
        """F_p-basis 1, b, ..., b^(e-1) of F_q for b = subfield_generator."""
        beta = self.subfield_generator
        return [self.pow(beta, s) for s in range(self.e)]

    def subfield_elements(self) -> List[int]:
        return sorted([0] + [self.exp_table[i * self.subfield_step] for i in range(self.q - 1)])

    def in_subfield(self, a: int) -> bool:
        return a == 0 or self.log_table[a] % self.subfield_step == 0

    def projective_representatives(self) -> List[int]:
        """One nonzero element from each F_q^*-coset of F_{q^n}^*."""
        return [self.exp_table[i] for i in range(self.subfield_step)]

    def random_element(self, rng: np.random.Generator) -> int:
        return int(rng.integers(self.order))

    def random_nonzero(self, rng: np.random.Generator) -> int:
        return int(rng.integers(1, self.order))


def _power_within(base: int, exponent: int, bound: int) -> bool:
    """base ** exponent <= bound, without building a huge power."""
    value = 1
    for _ in range(exponent):
        value *= base
        if value > bound:
            return False
    return True


@lru_cache(maxsize=None)
def get_context(p: int, e: int, n: int) -> FieldCtx:
    """Cached FieldCtx; the same (p, e, n) always yields the same modulus and codes."""
    return FieldCtx(p, e, n)


def ctx_create(p: int, e: int, n: int) -> FieldCtx:
    return get_context(p, e, n)


def frobenius(ctx: FieldCtx, a: int, k: int) -> int:
    return ctx.frobenius(a, k)


def trace_to_q(ctx: FieldCtx, a: int) -> int:
    return ctx.trace(a)
