"""Arithmetic in GF(2^t) with elements stored as t-bit integers.

An element is the integer whose bits are its coordinates in the polynomial
basis 1, x, ..., x^(t-1).  Addition is XOR.  Contexts for q <= 256 carry
log/antilog tables; larger fields fall back to shift-and-XOR multiplication.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

FieldElem = int

MAX_DEGREE = 16
TABLE_LIMIT = 256


def clmul(a: int, b: int) -> int:
    """Carry-less product of two GF(2) polynomials."""
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def poly_mod(a: int, modulus: int) -> int:
    deg = modulus.bit_length() - 1
    while a.bit_length() - 1 >= deg:
        a ^= modulus << (a.bit_length() - 1 - deg)
    return a


def is_irreducible(poly: int) -> bool:
    """Trial division by every polynomial of degree 1..deg/2."""
    deg = poly.bit_length() - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for div in range(1 << d, 1 << (d + 1)):
            if poly_mod(poly, div) == 0:
                return False
    return True


def smallest_irreducible(t: int) -> int:
    # odd candidates only: x itself is the one irreducible with zero constant term
    for poly in range((1 << t) + 1, 1 << (t + 1), 2):
        if is_irreducible(poly):
            return poly
    raise AssertionError(f"no irreducible polynomial of degree {t}")


@dataclass(frozen=True)
class FieldCtx:
    t: int
    modulus: int
    q: int = field(init=False)
    _exp: tuple[int, ...] | None = field(init=False, repr=False, compare=False)
    _log: tuple[int, ...] | None = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.modulus.bit_length() - 1 != self.t:
            raise ValueError("modulus degree does not match t")
        object.__setattr__(self, "q", 1 << self.t)
        exp = log = None
        if self.q <= TABLE_LIMIT:
            exp, log = self._build_tables()
        object.__setattr__(self, "_exp", exp)
        object.__setattr__(self, "_log", log)

    def _slow_mul(self, a: int, b: int) -> int:
        return poly_mod(clmul(a, b), self.modulus)

    def _build_tables(self):
        n = self.q - 1
        for g in range(1, self.q):
            exp = [1] * (2 * n)
            seen = {1}
            x = 1
            for i in range(1, n):
                x = self._slow_mul(x, g)
                if x in seen:
                    break
                seen.add(x)
                exp[i] = x
            else:
                for i in range(n, 2 * n):
                    exp[i] = exp[i - n]
                log = [0] * self.q
                for i in range(n):
                    log[exp[i]] = i
                return tuple(exp), tuple(log)
        raise AssertionError("multiplicative group has no generator")

    def elements(self) -> range:
        return range(self.q)

    def add(self, a: FieldElem, b: FieldElem) -> FieldElem:
        return a ^ b

    sub = add

    def mul(self, a: FieldElem, b: FieldElem) -> FieldElem:
        if a == 0 or b == 0:
            return 0
        if self._exp is not None:
            return self._exp[self._log[a] + self._log[b]]
        return self._slow_mul(a, b)

    def inv(self, a: FieldElem) -> FieldElem:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in GF(%d)" % self.q)
        if self._exp is not None:
            return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]
        return self.pow(a, self.q - 2)

    def div(self, a: FieldElem, b: FieldElem) -> FieldElem:
        return self.mul(a, self.inv(b))

    def pow(self, a: FieldElem, n: int) -> FieldElem:
        if n < 0:
            return self.pow(self.inv(a), -n)
        if a == 0:
            return 1 if n == 0 else 0
        if self._exp is not None:
            return self._exp[(self._log[a] * n) % (self.q - 1)]
        out = 1
        while n:
            if n & 1:
                out = self._slow_mul(out, a)
            a = self._slow_mul(a, a)
            n >>= 1
        return out

    def mul_table(self) -> list[list[int]]:
        """Full q x q product table; only sensible for small q."""
        return [[self.mul(a, b) for b in range(self.q)] for a in range(self.q)]


@lru_cache(maxsize=None)
def make_field(t: int) -> FieldCtx:
    if not isinstance(t, int) or not 1 <= t <= MAX_DEGREE:
        raise ValueError(f"extension degree must be in [1, {MAX_DEGREE}], got {t!r}")
    return FieldCtx(t, smallest_irreducible(t))
