"""
Laurent Coefficients
====================

Elements of Z/3^e[z, 1/z, 1/(1+eps*z^gamma)], stored as a sparse
numerator over a power of the base binomial D = 1 + eps*z^gamma.

The numerator is kept coprime to D (den_pow minimal), so two elements
are equal exactly when their canonical forms coincide.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache

from .errors import ContextMismatch, DivideNotExact
from .ring3 import binom, v3, INFINITE
from .series import TruncSeries, geometric_inverse_power

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class CoeffContext:
    """Which binomial sits in the denominator, and the modulus exponent"""
    epsilon: int = 1
    gamma: int = 1
    e: int = 1

    def __post_init__(self):
        if self.epsilon not in (1, -1):
            raise ValueError("epsilon must be +1 or -1")
        if self.gamma < 1:
            raise ValueError("gamma must be at least 1")
        if self.e < 1:
            raise ValueError("modulus exponent must be positive")

    @property
    def modulus(self):
        return 3 ** self.e

    def with_e(self, e):
        return CoeffContext(self.epsilon, self.gamma, e)


@lru_cache(maxsize=4096)
def _base_power(epsilon, gamma, k, e):
    """Sparse numerator of (1 + eps z^gamma)^k mod 3^e"""
    m = 3 ** e
    out = {}
    for i in range(k + 1):
        c = binom(k, i) * epsilon ** i % m
        if c:
            out[gamma * i] = c
    return out


def _poly_mul(a, b, m):
    out = {}
    for i, x in a.items():
        for j, y in b.items():
            out[i + j] = (out.get(i + j, 0) + x * y) % m
    return {k: v for k, v in out.items() if v}


def _poly_add(a, b, m, sign=1):
    out = dict(a)
    for k, v in b.items():
        out[k] = (out.get(k, 0) + sign * v) % m
    return {k: v for k, v in out.items() if v}


def _divide_by_base(num, epsilon, gamma, m):
    """Quotient of num by (1 + eps z^gamma) if the division is exact, else None"""
    if not num:
        return {}
    lo = min(num)
    work = {k - lo: v for k, v in num.items()}
    top = max(work)
    q = {}
    # leading coefficient of the divisor is eps, which is its own inverse
    for d in range(top, gamma - 1, -1):
        c = work.get(d, 0) % m
        if not c:
            continue
        qc = c * epsilon % m
        q[d - gamma] = qc
        work[d] = 0
        work[d - gamma] = (work.get(d - gamma, 0) - qc) % m
    if any(work.get(d, 0) % m for d in range(0, gamma)):
        return None
    return {k + lo: v for k, v in q.items() if v}


class LaurentCoeff:
    """num / (1 + eps z^gamma)^den_pow over Z/3^e, in canonical form"""

    __slots__ = ("ctx", "num", "den_pow", "_hash")

    def __init__(self, ctx, num=None, den_pow=0, canonical=False):
        m = ctx.modulus
        clean = {}
        for k, v in (num or {}).items():
            v = int(v) % m
            if v:
                clean[int(k)] = v
        if den_pow < 0:
            # move a negative power of D into the numerator
            clean = _poly_mul(clean, _base_power(ctx.epsilon, ctx.gamma, -den_pow, ctx.e), m)
            den_pow = 0
        self.ctx = ctx
        self.num = clean
        self.den_pow = den_pow if clean else 0
        self._hash = None
        if not canonical:
            self._canonicalize()

    def _canonicalize(self):
        m = self.ctx.modulus
        while self.den_pow > 0 and self.num:
            q = _divide_by_base(self.num, self.ctx.epsilon, self.ctx.gamma, m)
            if q is None:
                break
            self.num = q
            self.den_pow -= 1
        if not self.num:
            self.den_pow = 0

    # constructors ------------------------------------------------------

    @classmethod
    def zero(cls, ctx):
        return cls(ctx, {}, 0, canonical=True)

    @classmethod
    def constant(cls, ctx, c):
        return cls(ctx, {0: c}, 0)

    @classmethod
    def monomial(cls, ctx, c, k, den_pow=0):
        """c * z^k / D^den_pow"""
        return cls(ctx, {k: c}, den_pow)

    @classmethod
    def from_poly(cls, ctx, coeffs, den_pow=0):
        """From a coefficient list c_0, c_1, ... (or mapping) over D^den_pow"""
        if isinstance(coeffs, dict):
            return cls(ctx, coeffs, den_pow)
        return cls(ctx, dict(enumerate(coeffs)), den_pow)

    @classmethod
    def base_power(cls, ctx, k):
        """D^k for any integer k"""
        if k >= 0:
            return cls(ctx, _base_power(ctx.epsilon, ctx.gamma, k, ctx.e), 0, canonical=True)
        return cls(ctx, {0: 1}, -k, canonical=True)

    # inspection --------------------------------------------------------

    def is_zero(self):
        return not self.num

    @property
    def e(self):
        return self.ctx.e

    def valuation(self):
        """3-adic valuation of the element (INFINITE for zero, capped at e otherwise)"""
        if not self.num:
            return INFINITE
        return min(v3(v) for v in self.num.values())

    def min_exp(self):
        return min(self.num) if self.num else 0

    def max_exp(self):
        return max(self.num) if self.num else 0

    def _check(self, other):
        if not isinstance(other, LaurentCoeff):
            return LaurentCoeff.constant(self.ctx, int(other))
        if other.ctx != self.ctx:
            raise ContextMismatch(f"{self.ctx} vs {other.ctx}")
        return other

    # ring operations ---------------------------------------------------

    def _lifted(self, L):
        """Numerator over D^L for L >= den_pow"""
        extra = L - self.den_pow
        if extra == 0:
            return self.num
        return _poly_mul(self.num, _base_power(self.ctx.epsilon, self.ctx.gamma, extra, self.ctx.e),
                         self.ctx.modulus)

    def _combine(self, other, sign):
        other = self._check(other)
        if other.is_zero():
            return self
        if self.is_zero():
            return other if sign > 0 else -other
        L = max(self.den_pow, other.den_pow)
        num = _poly_add(self._lifted(L), other._lifted(L), self.ctx.modulus, sign)
        return LaurentCoeff(self.ctx, num, L)

    def __add__(self, other):
        return self._combine(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        return self._combine(other, -1)

    def __rsub__(self, other):
        return (-self)._combine(other, 1)

    def __neg__(self):
        m = self.ctx.modulus
        return LaurentCoeff(self.ctx, {k: -v % m for k, v in self.num.items()}, self.den_pow, canonical=True)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        other = self._check(other)
        if self.is_zero() or other.is_zero():
            return LaurentCoeff.zero(self.ctx)
        num = _poly_mul(self.num, other.num, self.ctx.modulus)
        return LaurentCoeff(self.ctx, num, self.den_pow + other.den_pow)

    __rmul__ = __mul__

    def __pow__(self, k):
        result = LaurentCoeff.constant(self.ctx, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c):
        c = int(c) % self.ctx.modulus
        if c == 0:
            return LaurentCoeff.zero(self.ctx)
        m = self.ctx.modulus
        num = {k: v * c % m for k, v in self.num.items()}
        if c % 3:
            return LaurentCoeff(self.ctx, num, self.den_pow, canonical=True)
        return LaurentCoeff(self.ctx, num, self.den_pow)

    def shift(self, k):
        """Multiply by z^k"""
        return LaurentCoeff(self.ctx, {i + k: v for i, v in self.num.items()}, self.den_pow, canonical=True)

    def div_base(self, k=1):
        """Divide by D^k"""
        return LaurentCoeff(self.ctx, self.num, self.den_pow + k)

    def divide_by_3(self, t=1):
        """Exact division by 3^t; the quotient is returned modulo 3^(e-t)"""
        if t == 0:
            return self
        if t >= self.ctx.e:
            raise DivideNotExact(f"cannot divide by 3^{t} modulo 3^{self.ctx.e}")
        p = 3 ** t
        bad = [k for k, v in self.num.items() if v % p]
        if bad:
            raise DivideNotExact(f"coefficient of z^{bad[0]} is not divisible by 3^{t}")
        ctx = self.ctx.with_e(self.ctx.e - t)
        return LaurentCoeff(ctx, {k: v // p for k, v in self.num.items()}, self.den_pow)

    def derivative(self):
        """d/dz by the quotient rule; den_pow grows by at most one"""
        if self.is_zero():
            return self
        m = self.ctx.modulus
        eps, g, L = self.ctx.epsilon, self.ctx.gamma, self.den_pow
        dnum = {k - 1: k * v % m for k, v in self.num.items() if k * v % m}
        if L == 0:
            return LaurentCoeff(self.ctx, dnum, 0)
        # (N' D - L eps g z^(g-1) N) / D^(L+1)
        first = _poly_mul(dnum, _base_power(eps, g, 1, self.ctx.e), m)
        second = {k + g - 1: L * eps * g * v % m for k, v in self.num.items()}
        return LaurentCoeff(self.ctx, _poly_add(first, second, m, -1), L + 1)

    # change of ring ----------------------------------------------------

    def reduce(self, e):
        """Image modulo 3^e for e at most the current exponent"""
        if e > self.ctx.e:
            raise ContextMismatch("cannot lift to a finer modulus")
        if e == self.ctx.e:
            return self
        return LaurentCoeff(self.ctx.with_e(e), self.num, self.den_pow)

    def lift(self, e):
        """Same representatives read modulo 3^e (e >= current exponent)"""
        if e < self.ctx.e:
            return self.reduce(e)
        return LaurentCoeff(self.ctx.with_e(e), self.num, self.den_pow)

    def substitute_monomial(self, ctx):
        """Replace z by eps*z^gamma of the target context.

        Only defined on elements over 1+z; the image lives over 1+eps*z^gamma.
        """
        if (self.ctx.epsilon, self.ctx.gamma) != (1, 1):
            raise ContextMismatch("substitution starts from the 1+z ring")
        m = ctx.modulus
        num = {k * ctx.gamma: v * ctx.epsilon ** (k % 2) % m for k, v in self.num.items()}
        return LaurentCoeff(ctx, num, self.den_pow)

    def to_series(self, prec):
        """Expansion up to z^prec"""
        ctx = self.ctx
        if self.is_zero():
            return TruncSeries.zero(ctx.e, prec)
        numser = TruncSeries.from_terms(self.num, ctx.e, prec)
        if self.den_pow == 0:
            return numser
        # enough terms of D^-L to cover the Laurent shift of the numerator
        depth = prec - min(self.min_exp(), 0)
        inv = geometric_inverse_power(ctx.epsilon, ctx.gamma, self.den_pow, ctx.e, depth)
        return (numser * inv).truncate(prec)

    # comparison / encoding ---------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentCoeff.constant(self.ctx, other)
        if not isinstance(other, LaurentCoeff):
            return NotImplemented
        return self.ctx == other.ctx and self.den_pow == other.den_pow and self.num == other.num

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx, self.den_pow, tuple(sorted(self.num.items()))))
        return self._hash

    def to_json(self):
        return {"den_pow": self.den_pow, "num": [[k, self.num[k]] for k in sorted(self.num)]}

    @classmethod
    def from_json(cls, ctx, data):
        return cls(ctx, {int(k): int(v) for k, v in data["num"]}, int(data["den_pow"]))

    def __repr__(self):
        if not self.num:
            return "0"
        m = self.ctx.modulus
        parts = []
        for k in sorted(self.num):
            v = self.num[k]
            v = v - m if v > m // 2 else v
            parts.append(f"{v}" if k == 0 else f"{v}*z^{k}")
        body = " + ".join(parts).replace("+ -", "- ")
        if self.den_pow:
            sign = "+" if self.ctx.epsilon > 0 else "-"
            zg = "z" if self.ctx.gamma == 1 else f"z^{self.ctx.gamma}"
            return f"({body})/(1{sign}{zg})^{self.den_pow}"
        return body


@lru_cache(maxsize=None)
def rewrite_inv_1pz3j(j, alpha, beta, e):
    """1/(1+z^(3^j))^alpha as an element over 1+z, correct modulo 3^beta.

    Uses (1+x)^3 = 1 + x^3 + 3x(1+x) with x = z^(3^(j-1)) to trade one
    level of 3-power for a factor 3, recursing until j = 0 or the
    3-power exhausts beta.
    """
    ctx = CoeffContext(1, 1, e)
    if beta <= 0:
        return LaurentCoeff.zero(ctx)
    if j == 0:
        return LaurentCoeff(ctx, {0: 1}, alpha, canonical=True)
    x_exp = 3 ** (j - 1)
    result = rewrite_inv_1pz3j(j - 1, 3 * alpha, beta, e)
    for ell in range(1, alpha + 1):
        if ell >= beta:
            break
        w = binom(alpha, ell) * 3 ** ell
        left = rewrite_inv_1pz3j(j - 1, 3 * alpha - ell, beta - ell, e)
        right = rewrite_inv_1pz3j(j, ell, beta - ell, e)
        result = result + (left * right).shift(ell * x_exp).scale(w)
    return result
