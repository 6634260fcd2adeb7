"""GF(2^n) arithmetic in a polynomial basis.

Elements are plain ints whose bit ``k`` is the coefficient of ``x^k``. The modulus
is the lexicographically least irreducible polynomial of degree ``n``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

MAX_DEGREE = 31


def _degree(p: int) -> int:
    return p.bit_length() - 1


def clmul(a: int, b: int) -> int:
    """Carry-less product of two GF(2)[x] polynomials."""
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def poly_mod(a: int, modulus: int) -> int:
    dm = _degree(modulus)
    while a and _degree(a) >= dm:
        a ^= modulus << (_degree(a) - dm)
    return a


def poly_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, poly_mod(a, b)
    return a


def is_irreducible(poly: int) -> bool:
    """Ben-Or test: gcd(x^(2^i) - x, f) = 1 for all i <= deg(f)/2."""
    n = _degree(poly)
    if n < 1:
        return False
    if n == 1:
        return True
    if not poly & 1:
        return False
    t = 2  # x
    for _ in range(n // 2):
        t = poly_mod(clmul(t, t), poly)
        if poly_gcd(poly, t ^ 2) != 1:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    n: int
    modulus: int

    def __post_init__(self):
        if not 1 <= self.n <= MAX_DEGREE:
            raise ValueError(f"extension degree must be in 1..{MAX_DEGREE}, got {self.n}")
        if _degree(self.modulus) != self.n:
            raise ValueError(f"modulus {self.modulus:#b} does not have degree {self.n}")
        if not is_irreducible(self.modulus):
            raise ValueError(f"modulus {self.modulus:#b} is reducible")

    @property
    def order(self) -> int:
        return 1 << self.n

    def elements(self) -> range:
        return range(self.order)

    def check(self, a: int) -> int:
        if not 0 <= a < self.order:
            raise ValueError(f"{a} is not an element of GF(2^{self.n})")
        return a

    def mul(self, a: int, b: int) -> int:
        return poly_mod(clmul(self.check(a), self.check(b)), self.modulus)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            raise ValueError("negative exponent")
        self.check(a)
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.pow(a, self.order - 2)

    def trace(self, a: int) -> int:
        t, s = 0, self.check(a)
        for _ in range(self.n):
            t ^= s
            s = self.mul(s, s)
        if t not in (0, 1):
            raise ArithmeticError(f"trace of {a} landed outside GF(2): {t}; modulus is not irreducible")
        return t

    def poly_str(self) -> str:
        terms = []
        for k in range(self.n, -1, -1):
            if self.modulus >> k & 1:
                terms.append("1" if k == 0 else "x" if k == 1 else f"x^{k}")
        return "+".join(terms)


@lru_cache(maxsize=None)
def find_irreducible(n: int) -> FieldSpec:
    if not 1 <= n <= MAX_DEGREE:
        raise ValueError(f"extension degree must be in 1..{MAX_DEGREE}, got {n}")
    for poly in range(1 << n, 1 << (n + 1)):
        if is_irreducible(poly):
            return FieldSpec(n, poly)
    raise AssertionError("unreachable: irreducible polynomials exist in every degree")


def mul(a: int, b: int, spec: FieldSpec) -> int:
    return spec.mul(a, b)


def power(a: int, e: int, spec: FieldSpec) -> int:
    return spec.pow(a, e)


def trace(a: int, spec: FieldSpec) -> int:
    return spec.trace(a)
