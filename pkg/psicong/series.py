"""
Truncated series modulo 3^e.

A TruncSeries knows the coefficients of z^min_deg .. z^prec; anything
above prec is unknown, so products and sums shrink prec accordingly.
"""

import logging

import numpy as np

log = logging.getLogger(__name__)

_INT64_SAFE = 2 ** 62


def _needs_object(e, length):
    m = 3 ** e
    return m * m * max(length, 1) >= _INT64_SAFE


class TruncSeries:
    """Laurent series mod 3^e known up to degree prec"""

    __slots__ = ("e", "min_deg", "coeffs")

    def __init__(self, coeffs, e, min_deg=0):
        self.e = e
        self.min_deg = min_deg
        m = 3 ** e
        arr = np.asarray(coeffs)
        if _needs_object(e, len(arr)):
            self.coeffs = np.array([int(x) % m for x in arr], dtype=object)
        elif arr.dtype == object:
            self.coeffs = np.array([int(x) % m for x in arr], dtype=np.int64)
        else:
            self.coeffs = arr.astype(np.int64) % m

    # construction ------------------------------------------------------

    @classmethod
    def zero(cls, e, prec, min_deg=0):
        return cls(np.zeros(max(prec - min_deg + 1, 0), dtype=np.int64), e, min_deg)

    @classmethod
    def one(cls, e, prec):
        s = cls.zero(e, prec)
        if len(s.coeffs):
            s.coeffs[0] = 1
        return s

    @classmethod
    def from_terms(cls, terms, e, prec):
        """Build from a mapping degree -> value, known up to prec"""
        if not terms:
            return cls.zero(e, prec)
        lo = min(min(terms), 0)
        s = cls.zero(e, prec, lo)
        m = 3 ** e
        for k, v in terms.items():
            if k <= prec:
                s.coeffs[k - lo] = (s.coeffs[k - lo] + v) % m
        return s

    # properties --------------------------------------------------------

    @property
    def modulus(self):
        return 3 ** self.e

    @property
    def prec(self):
        return self.min_deg + len(self.coeffs) - 1

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, n):
        """Coefficient of z^n (0 below min_deg)"""
        if n > self.prec:
            raise IndexError(f"degree {n} beyond known precision {self.prec}")
        if n < self.min_deg:
            return 0
        return int(self.coeffs[n - self.min_deg])

    def order(self):
        """Least degree with a non-zero coefficient, or None"""
        nz = np.nonzero(self.coeffs)[0]
        return int(nz[0]) + self.min_deg if len(nz) else None

    def terms(self, upto=None):
        """List of coefficients for degrees 0..upto (Laurent part dropped)"""
        upto = self.prec if upto is None else min(upto, self.prec)
        return [self[n] for n in range(0, upto + 1)]

    # arithmetic --------------------------------------------------------

    def _aligned(self, other):
        if other.e != self.e:
            from .errors import ContextMismatch
            raise ContextMismatch(f"series mod 3^{self.e} and 3^{other.e}")
        lo = min(self.min_deg, other.min_deg)
        hi = min(self.prec, other.prec)
        a = self._window(lo, hi)
        b = other._window(lo, hi)
        return a, b, lo

    def _window(self, lo, hi):
        out = np.zeros(max(hi - lo + 1, 0), dtype=self.coeffs.dtype)
        start = self.min_deg - lo
        take = min(len(self.coeffs), len(out) - start)
        if take > 0:
            out[start:start + take] = self.coeffs[:take]
        return out

    def __add__(self, other):
        if isinstance(other, int):
            other = TruncSeries.one(self.e, self.prec).scale(other)
        a, b, lo = self._aligned(other)
        return TruncSeries(a + b, self.e, lo)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            other = TruncSeries.one(self.e, self.prec).scale(other)
        a, b, lo = self._aligned(other)
        return TruncSeries(a - b, self.e, lo)

    def __neg__(self):
        return TruncSeries(-self.coeffs, self.e, self.min_deg)

    def scale(self, c):
        c = int(c) % self.modulus
        return TruncSeries(self.coeffs * c, self.e, self.min_deg)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if other.e != self.e:
            from .errors import ContextMismatch
            raise ContextMismatch(f"series mod 3^{self.e} and 3^{other.e}")
        lo = self.min_deg + other.min_deg
        prec = min(self.prec + other.min_deg, other.prec + self.min_deg)
        n = prec - lo + 1
        if n <= 0:
            return TruncSeries.zero(self.e, prec, lo)
        a = self.coeffs[:n]
        b = other.coeffs[:n]
        if _needs_object(self.e, n):
            prod = _object_convolve(a, b, n, self.modulus)
        else:
            prod = np.convolve(a.astype(np.int64), b.astype(np.int64))[:n]
        return TruncSeries(prod, self.e, lo)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k == 0:
            return TruncSeries.one(self.e, self.prec)
        result = None
        base = self
        while k:
            if k & 1:
                result = base if result is None else result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def shift(self, k):
        """Multiply by z^k"""
        return TruncSeries(self.coeffs.copy(), self.e, self.min_deg + k)

    def derivative(self):
        degs = np.arange(self.min_deg, self.prec + 1, dtype=np.int64)
        if self.coeffs.dtype == object:
            degs = degs.astype(object)
        d = self.coeffs * degs
        if self.min_deg == 0:
            return TruncSeries(d[1:], self.e, 0)
        return TruncSeries(d, self.e, self.min_deg - 1)

    def truncate(self, prec):
        if prec >= self.prec:
            return self
        return TruncSeries(self.coeffs[:max(prec - self.min_deg + 1, 0)], self.e, self.min_deg)

    def reduce(self, e):
        """Image modulo 3^e (e at most the current exponent)"""
        return TruncSeries(self.coeffs, e, self.min_deg)

    def mask(self, keep):
        """Zero every coefficient whose degree fails keep(n)"""
        out = self.coeffs.copy()
        for i in range(len(out)):
            if not keep(self.min_deg + i):
                out[i] = 0
        return TruncSeries(out, self.e, self.min_deg)

    # comparison --------------------------------------------------------

    def first_mismatch(self, other, upto=None):
        """Least degree <= upto where the two series differ, or None"""
        hi = min(self.prec, other.prec)
        if upto is not None:
            hi = min(hi, upto)
        lo = min(self.min_deg, other.min_deg)
        m = 3 ** min(self.e, other.e)
        a = self._window(lo, hi) % m
        b = other._window(lo, hi) % m
        diff = np.nonzero(a != b)[0]
        return int(diff[0]) + lo if len(diff) else None

    def agrees(self, other, upto=None):
        return self.first_mismatch(other, upto) is None

    def is_zero(self, upto=None):
        hi = self.prec if upto is None else min(upto, self.prec)
        return not np.any(self._window(self.min_deg, hi))

    def __repr__(self):
        shown = ", ".join(str(int(c)) for c in self.coeffs[:12])
        more = ", ..." if len(self.coeffs) > 12 else ""
        return f"TruncSeries(mod {self.modulus}, from z^{self.min_deg}: [{shown}{more}] to z^{self.prec})"


def _object_convolve(a, b, n, modulus):
    a = [int(x) for x in a]
    b = [int(x) for x in b]
    out = [0] * n
    for i, x in enumerate(a):
        if not x:
            continue
        for j in range(n - i):
            y = b[j]
            if y:
                out[i + j] += x * y
    return np.array([v % modulus for v in out], dtype=object)


def geometric_inverse_power(epsilon, gamma, L, e, prec):
    """Series of (1 + epsilon z^gamma)^(-L)"""
    from .ring3 import binom
    m = 3 ** e
    out = np.zeros(prec + 1, dtype=object if _needs_object(e, prec + 1) else np.int64)
    k = 0
    while gamma * k <= prec:
        out[gamma * k] = (binom(-L, k) * epsilon ** k) % m
        k += 1
    return TruncSeries(out, e, 0)
