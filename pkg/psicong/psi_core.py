"""
The Basic Series
================

Psi(z) = prod_{j>=0} (1 + z^(3^j)) and polynomials in Psi(eps*z^gamma)
with Laurent coefficients, reduced modulo (Psi^2 - 1/(1+eps*z^gamma))^(3^alpha).

Since (1+x) Psi(x)^2 = 1 mod 3, the 3^alpha-th power of
Psi^2 - 1/(1+x) vanishes mod 3^(3^alpha), so every polynomial in Psi
can be brought below degree 2*3^alpha.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ContextMismatch
from .laurent import CoeffContext, LaurentCoeff, rewrite_inv_1pz3j
from .ring3 import binom, min_degree_bound
from .series import TruncSeries, geometric_inverse_power

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class PsiContext:
    """Argument eps*z^gamma of Psi, the reduction level alpha and modulus 3^e"""
    epsilon: int = 1
    gamma: int = 1
    alpha: int = 1
    e: int = 3

    def __post_init__(self):
        if self.alpha < 1:
            raise ValueError("alpha must be positive")
        if not 1 <= self.e <= 3 ** self.alpha:
            raise ValueError(f"modulus exponent {self.e} needs 1 <= e <= 3^alpha")
        CoeffContext(self.epsilon, self.gamma, self.e)

    @property
    def size(self):
        """Number of Psi powers kept: 2 * 3^alpha"""
        return 2 * 3 ** self.alpha

    @property
    def coeff_ctx(self):
        return CoeffContext(self.epsilon, self.gamma, self.e)

    @property
    def modulus(self):
        return 3 ** self.e

    def with_e(self, e):
        return PsiContext(self.epsilon, self.gamma, self.alpha, e)


def _psi_array(epsilon, gamma, e, N):
    m = 3 ** e
    arr = np.zeros(N + 1, dtype=np.int64)
    arr[0] = 1
    step = gamma
    while step <= N:
        shifted = arr[:-step].copy()
        arr[step:] = (arr[step:] + epsilon * shifted) % m
        step *= 3
    return arr % m


def basic_series(N, e, epsilon=1, gamma=1):
    """Psi(eps*z^gamma) up to z^N modulo 3^e"""
    return TruncSeries(_psi_array(epsilon, gamma, e, N), e)


def psi_series(ctx, N):
    """Truncated series of Psi(eps*z^gamma) modulo 3^e"""
    return basic_series(N, ctx.e, ctx.epsilon, ctx.gamma)


@lru_cache(maxsize=64)
def _psi_powers(epsilon, gamma, e, N, count):
    base = TruncSeries(_psi_array(epsilon, gamma, e, N), e)
    powers = [TruncSeries.one(e, N)]
    for _ in range(1, count):
        powers.append(powers[-1] * base)
    return tuple(powers)


@lru_cache(maxsize=None)
def _relation(ctx):
    """Coefficients r_k with Psi^(2T) = sum_{k<T} r_k Psi^(2k), T = 3^alpha"""
    cc = ctx.coeff_ctx
    T = 3 ** ctx.alpha
    if ctx.e == 1:
        # mod 3 the relation collapses to Psi^(2T) = (1+eps z^gamma)^(-T)
        return {0: LaurentCoeff(cc, {0: 1}, T)}
    out = {}
    for k in range(T):
        c = -binom(T, k) * (-1) ** (T - k)
        lc = LaurentCoeff(cc, {0: c}, T - k)
        if not lc.is_zero():
            out[k] = lc
    return out


class PsiPoly:
    """sum_i a_i(z) Psi^i(eps*z^gamma), i < 2*3^alpha"""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx, coeffs):
        cc = ctx.coeff_ctx
        coeffs = list(coeffs)
        if len(coeffs) > ctx.size:
            coeffs = _reduce_powers(ctx, coeffs)
        coeffs += [LaurentCoeff.zero(cc)] * (ctx.size - len(coeffs))
        for c in coeffs:
            if c.ctx != cc:
                raise ContextMismatch(f"coefficient in {c.ctx}, polynomial in {cc}")
        self.ctx = ctx
        self.coeffs = tuple(coeffs)

    @classmethod
    def zero(cls, ctx):
        return cls(ctx, [])

    @classmethod
    def from_powers(cls, ctx, powers):
        """From a mapping power -> LaurentCoeff (powers may exceed the bound)"""
        if not powers:
            return cls.zero(ctx)
        top = max(powers) + 1
        cc = ctx.coeff_ctx
        coeffs = [LaurentCoeff.zero(cc)] * top
        for i, c in powers.items():
            coeffs[i] = coeffs[i] + c
        return cls(ctx, coeffs)

    @classmethod
    def constant(cls, ctx, a0):
        if isinstance(a0, int):
            a0 = LaurentCoeff.constant(ctx.coeff_ctx, a0)
        return cls(ctx, [a0])

    @classmethod
    def psi_power(cls, ctx, k, coeff=None):
        coeff = coeff if coeff is not None else LaurentCoeff.constant(ctx.coeff_ctx, 1)
        return cls.from_powers(ctx, {k: coeff})

    def degree(self):
        """Highest Psi power with a non-zero coefficient (-1 for zero)"""
        for i in range(len(self.coeffs) - 1, -1, -1):
            if not self.coeffs[i].is_zero():
                return i
        return -1

    def is_zero(self):
        return self.degree() < 0

    def _check(self, other):
        if other.ctx != self.ctx:
            raise ContextMismatch(f"{self.ctx} vs {other.ctx}")

    def __add__(self, other):
        self._check(other)
        return PsiPoly(self.ctx, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        self._check(other)
        return PsiPoly(self.ctx, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return PsiPoly(self.ctx, [-a for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (int, LaurentCoeff)):
            return PsiPoly(self.ctx, [a * other for a in self.coeffs])
        return psipoly_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, k):
        result = PsiPoly.constant(self.ctx, 1)
        for _ in range(k):
            result = psipoly_mul(result, self)
        return result

    def map_coeffs(self, fn, ctx=None):
        ctx = ctx or self.ctx
        return PsiPoly(ctx, [fn(a) for a in self.coeffs])

    def reduce(self, e):
        """Image modulo 3^e"""
        return self.map_coeffs(lambda a: a.reduce(e), self.ctx.with_e(e))

    def lift(self, e):
        return self.map_coeffs(lambda a: a.lift(e), self.ctx.with_e(e))

    def divide_by_3(self, t):
        """Exact division of every coefficient by 3^t; result modulo 3^(e-t)"""
        ctx = self.ctx.with_e(self.ctx.e - t)
        return self.map_coeffs(lambda a: a.divide_by_3(t), ctx)

    def derivative(self):
        return psipoly_derivative(self)

    def to_series(self, N):
        return psipoly_to_series(self, N)

    def coeff_equal(self, other):
        return self.ctx == other.ctx and self.coeffs == other.coeffs

    def series_equal(self, other, N):
        """Series agreement up to z^N modulo the smaller of the two moduli"""
        return psipoly_to_series(self, N).agrees(psipoly_to_series(other, N), N)

    def to_json(self):
        return {
            "epsilon": self.ctx.epsilon,
            "gamma": self.ctx.gamma,
            "alpha": self.ctx.alpha,
            "mod_exp": self.ctx.e,
            "coeffs": [a.to_json() for a in self.coeffs],
        }

    @classmethod
    def from_json(cls, data):
        ctx = PsiContext(int(data["epsilon"]), int(data["gamma"]), int(data["alpha"]), int(data["mod_exp"]))
        cc = ctx.coeff_ctx
        return cls(ctx, [LaurentCoeff.from_json(cc, c) for c in data["coeffs"]])

    def __repr__(self):
        arg = "z" if self.ctx.gamma == 1 else f"z^{self.ctx.gamma}"
        if self.ctx.epsilon < 0:
            arg = "-" + arg
        parts = []
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            parts.append(f"[{a!r}]" + ("" if i == 0 else f"*Psi({arg})^{i}"))
        body = " + ".join(parts) if parts else "0"
        return f"{body}  (mod {self.ctx.modulus})"


def _reduce_powers(ctx, coeffs):
    """Fold powers >= 2*3^alpha downward using the Psi relation"""
    coeffs = list(coeffs)
    T2 = ctx.size
    rel = _relation(ctx)
    for d in range(len(coeffs) - 1, T2 - 1, -1):
        c = coeffs[d]
        if c.is_zero():
            continue
        coeffs[d] = LaurentCoeff.zero(ctx.coeff_ctx)
        base = d - T2
        for k, r in rel.items():
            coeffs[base + 2 * k] = coeffs[base + 2 * k] + c * r
    return coeffs[:T2]


def psipoly_mul(p, q):
    """Product reduced below Psi-degree 2*3^alpha"""
    p._check(q)
    ctx = p.ctx
    cc = ctx.coeff_ctx
    dp, dq = p.degree(), q.degree()
    if dp < 0 or dq < 0:
        return PsiPoly.zero(ctx)
    out = [LaurentCoeff.zero(cc)] * (dp + dq + 1)
    for i in range(dp + 1):
        a = p.coeffs[i]
        if a.is_zero():
            continue
        for j in range(dq + 1):
            b = q.coeffs[j]
            if b.is_zero():
                continue
            out[i + j] = out[i + j] + a * b
    return PsiPoly(ctx, out)


@lru_cache(maxsize=None)
def log_derivative(ctx):
    """Psi'(eps z^gamma)/Psi(eps z^gamma) as a Laurent coefficient mod 3^e.

    With x = eps z^gamma: sum_j 3^j x^(3^j - 1) / (1 + x^(3^j)) times dx/dz,
    where only j < e survive and each denominator is moved onto 1+x.
    """
    e = ctx.e
    inner_ctx = CoeffContext(1, 1, e)
    total = LaurentCoeff.zero(inner_ctx)
    for j in range(e):
        inv = rewrite_inv_1pz3j(j, 1, e - j, e)
        total = total + inv.shift(3 ** j - 1).scale(3 ** j)
    g = total.substitute_monomial(ctx.coeff_ctx)
    return g.shift(ctx.gamma - 1).scale(ctx.epsilon * ctx.gamma)


def psipoly_derivative(p):
    """d/dz sum a_i Psi^i = sum (a_i' + i a_i G) Psi^i with G the log-derivative"""
    G = log_derivative(p.ctx)
    out = []
    for i, a in enumerate(p.coeffs):
        if a.is_zero():
            out.append(a)
            continue
        term = a.derivative()
        if i:
            term = term + (a * G).scale(i)
        out.append(term)
    return PsiPoly(p.ctx, out)


def psipoly_to_series(p, N):
    """sum a_i(z) Psi^i as a series up to z^N"""
    ctx = p.ctx
    deg = p.degree()
    if deg < 0:
        return TruncSeries.zero(ctx.e, N)
    lowest = min(0, min(a.min_exp() for a in p.coeffs if not a.is_zero()))
    depth = N - lowest
    powers = _psi_powers(ctx.epsilon, ctx.gamma, ctx.e, depth, deg + 1)
    total = TruncSeries.zero(ctx.e, N, lowest)
    for i in range(deg + 1):
        a = p.coeffs[i]
        if a.is_zero():
            continue
        total = total + (a.to_series(N) * powers[i]).truncate(N)
    return total


# --- minimal polynomials -------------------------------------------------

@dataclass(frozen=True)
class MinPolyFixture:
    """A0^d0 * A1^d1 * A2^d2, claimed to vanish at Psi(z) modulo 3^mod_exp"""
    name: str
    powers: tuple
    mod_exp: int

    @property
    def degree(self):
        d0, d1, d2 = self.powers
        return 2 * d0 + 6 * d1 + 18 * d2

    @property
    def modulus(self):
        return 3 ** self.mod_exp


def minpoly_table():
    """The thirteen products, with the modulus each one annihilates Psi at"""
    rows = [
        ("A0", (1, 0, 0), 1), ("A0^2", (2, 0, 0), 2), ("A0^3", (3, 0, 0), 3),
        ("A1", (0, 1, 0), 4), ("A0*A1", (1, 1, 0), 5), ("A0^2*A1", (2, 1, 0), 6),
        ("A1^2", (0, 2, 0), 7), ("A1^2", (0, 2, 0), 8), ("A0*A1^2", (1, 2, 0), 9),
        ("A0^2*A1^2", (2, 2, 0), 10), ("A1^3", (0, 3, 0), 11), ("A1^3", (0, 3, 0), 12),
        ("A2", (0, 0, 1), 13),
    ]
    return [MinPolyFixture(name, powers, e) for name, powers, e in rows]


def _minpoly_factor_series(e, N):
    m = 3 ** e
    psi = TruncSeries(_psi_array(1, 1, e, N), e)

    def inv(L, num):
        return TruncSeries.from_terms(num, e, N) * geometric_inverse_power(1, 1, L, e, N)

    a0 = psi * psi - inv(1, {0: 1})
    a1 = a0 ** 3 - a0 * inv(2, {0: 9 % m}) + inv(5, {1: 27 % m})
    a2 = (a1 ** 3 - a1 * inv(6, {0: 3 ** 8 % m}) + a0 * a0 * inv(9, {1: 3 ** 10 % m})
          - a0 * inv(12, {1: 3 ** 11 % m, 3: 3 ** 11 % m}) + inv(17, {4: 3 ** 12 % m}))
    return a0, a1, a2


def minpoly_series(fix, N, e=None):
    """Series obtained by substituting Psi(z) for t, modulo 3^e"""
    e = fix.mod_exp if e is None else e
    factors = _minpoly_factor_series(e, N)
    result = TruncSeries.one(e, N)
    for f, k in zip(factors, fix.powers):
        for _ in range(k):
            result = result * f
    return result


def check_minpoly(fix, N=2000, e=None):
    """True iff the fixture annihilates Psi(z) modulo 3^e up to z^N"""
    e = fix.mod_exp if e is None else e
    if not degree_bound_consistent(fix, e):
        log.debug("minimal polynomial %s has degree %d, below the bound %d for 3^%d",
                  fix.name, fix.degree, min_degree_bound(e), e)
        return False
    ok = minpoly_series(fix, N, e).is_zero()
    log.debug("minimal polynomial %s mod 3^%d up to z^%d: %s", fix.name, e, N, ok)
    return ok


def degree_bound_consistent(fix, e=None):
    """The fixture's degree meets the lower bound for modulus 3^e (its own by default)"""
    return fix.degree >= min_degree_bound(fix.mod_exp if e is None else e)
