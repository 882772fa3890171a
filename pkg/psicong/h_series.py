"""
H-tilde Series
==============

With R(k) = z^(3^k) (1 + z^(3^k)) / (1 + z^(3^(k+1))),

    Ht_{a_1..a_s}(z) = sum_{k_1 > ... > k_s >= 0} prod_j R(k_j)^(a_j).

Because 1 + 3R(k) = (1+x)^3/(1+x^3) with x = z^(3^k), the product over
all k telescopes to (1+z) Psi(z)^2, so every even power of Psi expands
into these series. Indices containing multiples of 3 are redundant and
reduce_h rewrites them onto the pure ones (no entry divisible by 3).
"""

import itertools
import logging
from dataclasses import dataclass, field
from functools import lru_cache


from .laurent import CoeffContext, LaurentCoeff, rewrite_inv_1pz3j
from .psi_core import basic_series
from .ring3 import binom, v3
from .series import TruncSeries, geometric_inverse_power

log = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class HIndex:
    """(a_1, ..., a_s) with all entries positive"""
    a: tuple

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(int(x) for x in self.a))
        if any(x < 1 for x in self.a):
            raise ValueError(f"H index entries must be positive: {self.a}")

    @property
    def pure(self):
        return all(x % 3 for x in self.a)

    def __len__(self):
        return len(self.a)

    def last_divisible(self):
        """1-based position of the last entry divisible by 3 (0 if pure)"""
        for pos in range(len(self.a), 0, -1):
            if self.a[pos - 1] % 3 == 0:
                return pos
        return 0

    def __repr__(self):
        return "Ht_" + ",".join(str(x) for x in self.a)


def _ctx(e):
    return CoeffContext(1, 1, e)


@dataclass
class HCombination:
    """constant + sum coeff * Ht_idx, coefficients over 1+z modulo 3^e"""
    e: int
    constant: LaurentCoeff = None
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.constant is None:
            self.constant = LaurentCoeff.zero(_ctx(self.e))

    def add_term(self, idx, coeff):
        if not isinstance(idx, HIndex):
            idx = HIndex(idx)
        if len(idx) == 0:
            self.constant = self.constant + coeff
            return
        total = self.terms.get(idx)
        total = coeff if total is None else total + coeff
        if total.is_zero():
            self.terms.pop(idx, None)
        else:
            self.terms[idx] = total

    def add_scaled(self, other, factor):
        """self += factor * other, where other may carry a coarser modulus"""
        self.constant = self.constant + other.constant.lift(self.e) * factor
        for idx, c in other.terms.items():
            self.add_term(idx, c.lift(self.e) * factor)

    @property
    def reduced(self):
        return all(idx.pure for idx in self.terms)

    def to_series(self, N):
        total = self.constant.to_series(N)
        for idx, c in self.terms.items():
            total = total + c.to_series(N) * h_tilde_series(idx, N, self.e)
        return total.truncate(N)

    def __repr__(self):
        parts = [] if self.constant.is_zero() else [repr(self.constant)]
        parts += [f"[{c!r}]*{idx!r}" for idx, c in sorted(self.terms.items())]
        return " + ".join(parts) if parts else "0"


# --- series ----------------------------------------------------------------

def r_series(k, N, e):
    """Truncated series of R(k)"""
    q = 3 ** k
    num = TruncSeries.from_terms({q: 1, 2 * q: 1}, e, N)
    return (num * geometric_inverse_power(1, 3 * q, 1, e, N)).truncate(N)


@lru_cache(maxsize=256)
def _h_tilde_cached(a, N, e):
    s = len(a)
    acc = [TruncSeries.one(e, N)] + [TruncSeries.zero(e, N) for _ in range(s)]
    K = 0
    while 3 ** K <= N:
        R = r_series(K, N, e)
        powers = {}
        for r in range(s, 0, -1):
            exp = a[s - r]
            if exp not in powers:
                powers[exp] = R ** exp
            acc[r] = acc[r] + acc[r - 1] * powers[exp]
        K += 1
    return acc[s]


def h_tilde_series(idx, N, e):
    """Ht_idx up to z^N modulo 3^e (the empty index gives 1)"""
    a = idx.a if isinstance(idx, HIndex) else tuple(idx)
    return _h_tilde_cached(a, N, e)


def h_series_at(idx, N, e):
    """H_idx(x) = sum_{k_1>...>k_s} prod x^(3^k_j a_j), truncated at x^N"""
    a = idx.a if isinstance(idx, HIndex) else tuple(idx)
    s = len(a)
    acc = [TruncSeries.one(e, N)] + [TruncSeries.zero(e, N) for _ in range(s)]
    K = 0
    while 3 ** K <= N:
        for r in range(s, 0, -1):
            step = 3 ** K * a[s - r]
            if step <= N:
                acc[r] = acc[r] + acc[r - 1].shift(step).truncate(N)
        K += 1
    return acc[s]


def compose_with_z_over_1pz2(f, N):
    """f(z/(1+z)^2) truncated at z^N, for f a power series with f(0) given"""
    e = f.e
    x = TruncSeries.from_terms({1: 1}, e, N) * geometric_inverse_power(1, 1, 2, e, N)
    x = x.truncate(N)
    total = TruncSeries.zero(e, N)
    power = TruncSeries.one(e, N)
    for n in range(0, min(f.prec, N) + 1):
        c = f[n]
        if c:
            total = total + power.scale(c)
        power = (power * x).truncate(N)
    return total


# --- expansion of Psi powers ------------------------------------------------

@dataclass
class PowerExpansion:
    """Psi^(2K + odd) = Psi^odd (1+z)^(-K) * combination"""
    K: int
    odd: bool
    combination: HCombination

    def to_series(self, N):
        e = self.combination.e
        s = self.combination.to_series(N) * geometric_inverse_power(1, 1, self.K, e, N)
        if self.odd:
            s = s * basic_series(N, e)
        return s.truncate(N)


def psi_power_h_expansion(K, e, odd=False):
    """(1+z)^K Psi^(2K) = prod_k (1 + 3R(k))^K expanded into Ht series mod 3^e"""
    ctx = _ctx(e)
    combo = HCombination(e, LaurentCoeff.constant(ctx, 1))
    # each entry a_j >= 1 carries 3^(a_j), so sum a_j < e
    for s in range(1, e):
        for a in itertools.product(range(1, K + 1), repeat=s):
            if sum(a) >= e:
                continue
            c = 1
            for x in a:
                c *= binom(K, x) * 3 ** x
            if v3(c) < e:
                combo.add_term(HIndex(a), LaurentCoeff.constant(ctx, c))
    return PowerExpansion(K, odd, combo)


# --- reduction onto pure indices --------------------------------------------

@lru_cache(maxsize=None)
def shift_down(m, depth):
    """R(k+1)^m as sum_p c_p R(k)^p modulo 3^depth (valid for every k >= 0).

    Iterates R(k+1)^m = sum 3^(s+t) C(m,s) C(-m,t) R(k)^(3m+t) R(k+1)^s.
    """
    if depth <= 0:
        return {}
    if m == 0:
        return {0: 1}
    mod = 3 ** depth
    out = {}
    for s in range(0, m + 1):
        for t in range(0, depth - s):
            w = 3 ** (s + t) * binom(m, s) * binom(-m, t)
            if w % mod == 0:
                continue
            sub = shift_down(s, depth - s - t)
            for p, c in sub.items():
                key = 3 * m + t + p
                out[key] = (out.get(key, 0) + w * c) % mod
    return {p: c for p, c in out.items() if c}


@dataclass(frozen=True)
class ReductionRank:
    """(s, v, i, t): shorter first, then higher coefficient valuation,
    then earlier last-divisible position, then smaller valuation there."""
    s: int
    v: float
    i: int
    t: float

    def key(self):
        return (self.s, -self.v, self.i, self.t)

    def __lt__(self, other):
        return self.key() < other.key()


def reduction_rank(idx, valuation):
    pos = idx.last_divisible()
    t = v3(idx.a[pos - 1]) if pos else 0
    return ReductionRank(len(idx), valuation, pos, t)


@lru_cache(maxsize=None)
def r0_power(m, e):
    """R(0)^m = (z(1+z))^m / (1+z^3)^m over 1+z, modulo 3^e"""
    ctx = _ctx(e)
    poly = LaurentCoeff(ctx, {1: 1, 2: 1}) ** m
    return poly * rewrite_inv_1pz3j(1, m, e, e)


def _children(idx, e):
    """One rewriting step: list of (weight, new index, Laurent factor or None)"""
    a = list(idx.a)
    s = len(a)
    h = idx.last_divisible()
    bp = a[h - 1] // 3
    out = []
    for b in range(0, e):
        wb = 3 ** b * binom(-bp, b)
        if v3(wb) >= e:
            continue
        m = bp + b
        # a = 0: shift the summation index k_h up by one
        out.append((wb, tuple(a[:h - 1] + [m] + a[h:]), None))
        if h > 1:
            merged = a[:h - 2] + [a[h - 2] + m] + a[h:]
            out.append((wb, tuple(merged), None))
        if h < s:
            for p, c in shift_down(m, e - v3(wb)).items():
                merged = a[:h - 1] + [a[h] + p] + a[h + 1:]
                out.append((-wb * c, tuple(merged), None))
        else:
            out.append((-wb, tuple(a[:h - 1]), ("r0", m)))
        # a >= 1: R(k_h)^a R(k_h + 1)^m pushed down onto R(k_h)
        for aa in range(1, bp + 1):
            w = wb * 3 ** aa * binom(bp, aa)
            if v3(w) >= e:
                continue
            for p, c in shift_down(m, e - v3(w)).items():
                out.append((w * c, tuple(a[:h - 1] + [aa + p] + a[h:]), None))
    return out


@lru_cache(maxsize=None)
def reduce_h(idx, e):
    """Rewrite Ht_idx modulo 3^e as a combination of pure Ht series"""
    if not isinstance(idx, HIndex):
        idx = HIndex(idx)
    ctx = _ctx(e)
    result = HCombination(e)
    if idx.pure:
        result.add_term(idx, LaurentCoeff.constant(ctx, 1))
        return result
    parent = reduction_rank(idx, 0)
    mod = 3 ** e
    for w, child, factor in _children(idx, e):
        w %= mod
        if w == 0:
            continue
        v = v3(w)
        if v >= e:
            continue
        child_idx = HIndex(child) if child else None
        if child_idx is not None:
            assert reduction_rank(child_idx, v) < parent, (idx, child, v)
        coeff = LaurentCoeff.constant(ctx, w)
        if factor is not None:
            coeff = coeff * r0_power(factor[1], e)
        if child_idx is None:
            result.constant = result.constant + coeff
            continue
        sub = reduce_h(child_idx, e - v)
        result.add_scaled(sub, coeff)
    log.debug("reduced %r mod 3^%d into %d pure terms", idx, e, len(result.terms))
    return result
