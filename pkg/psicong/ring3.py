"""
Arithmetic in Z/3^e
===================

Residues modulo powers of 3, 3-adic valuations and the degree bound for
minimal polynomials of the basic series.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import sympy

from .errors import ContextMismatch

INFINITE = math.inf


def v3(n):
    """3-adic valuation of an integer; v3(0) is INFINITE"""
    n = int(n)
    if n == 0:
        return INFINITE
    n = abs(n)
    t = 0
    while n % 3 == 0:
        n //= 3
        t += 1
    return t


def digit_sum3(d):
    """Sum of the ternary digits of d >= 0"""
    total = 0
    while d:
        d, r = divmod(d, 3)
        total += r
    return total


def v3_factorial(d):
    """v3(d!) by Legendre's formula"""
    if d < 0:
        raise ValueError("d must be non-negative")
    total, q = 0, d // 3
    while q:
        total += q
        q //= 3
    return total


@lru_cache(maxsize=None)
def min_degree_bound(gamma):
    """Lower bound 2d on the degree of a minimal polynomial mod 3^gamma.

    d is the least positive integer with d + v3(d!) >= gamma.
    """
    if gamma < 1:
        raise ValueError("gamma must be positive")
    d = 1
    while d + v3_factorial(d) < gamma:
        d += 1
    return 2 * d


def binom(n, k):
    """Binomial coefficient for integer n (possibly negative) and k >= 0"""
    if k < 0:
        return 0
    if n >= 0:
        return math.comb(n, k) if k <= n else 0
    # binom(-m, k) = (-1)^k binom(m+k-1, k)
    m = -n
    return (-1) ** k * math.comb(m + k - 1, k)


def inverse(a, e):
    """Inverse of a unit modulo 3^e"""
    return int(sympy.mod_inverse(a, 3 ** e))


@dataclass(frozen=True)
class Residue:
    """An integer modulo 3^e, kept reduced"""
    value: int
    e: int

    def __post_init__(self):
        if self.e < 1:
            raise ValueError("modulus exponent must be positive")
        object.__setattr__(self, "value", int(self.value) % (3 ** self.e))

    @property
    def modulus(self):
        return 3 ** self.e

    def _other(self, other):
        if isinstance(other, Residue):
            if other.e != self.e:
                raise ContextMismatch(f"residues mod 3^{self.e} and 3^{other.e}")
            return other.value
        return int(other)

    def __add__(self, other):
        return Residue(self.value + self._other(other), self.e)

    __radd__ = __add__

    def __sub__(self, other):
        return Residue(self.value - self._other(other), self.e)

    def __rsub__(self, other):
        return Residue(self._other(other) - self.value, self.e)

    def __mul__(self, other):
        return Residue(self.value * self._other(other), self.e)

    __rmul__ = __mul__

    def __neg__(self):
        return Residue(-self.value, self.e)

    def __pow__(self, k):
        return Residue(pow(self.value, k, self.modulus), self.e)

    def __eq__(self, other):
        # an int matches only the canonical representative
        if isinstance(other, Residue):
            return self.e == other.e and self.value == other.value
        if isinstance(other, int):
            return other == self.value
        return NotImplemented

    def __hash__(self):
        return hash(self.value)

    def __int__(self):
        return self.value

    def valuation(self):
        """Valuation of the residue, capped at e (zero has valuation e)"""
        return min(v3(self.value), self.e) if self.value else self.e

    def is_unit(self):
        return self.value % 3 != 0

    def inverse(self):
        return Residue(inverse(self.value, self.e), self.e)

    def reduce(self, e):
        """Image in Z/3^e for e at most the current exponent"""
        if e > self.e:
            raise ContextMismatch("cannot lift a residue to a finer modulus")
        return Residue(self.value, e)

    def signed(self):
        """Representative in (-3^e/2, 3^e/2]"""
        m = self.modulus
        return self.value - m if self.value > m // 2 else self.value

    def __repr__(self):
        return f"{self.value} (mod {self.modulus})"
