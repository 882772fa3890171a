"""
Solving Quadratic Functional Equations mod 3^(3^alpha)
======================================================

An equation

    c2 F^2 + c1 F + c0 + 3 Q(z; F, F', ..., F^(s)) = 0

whose reduction mod 3 has c2 = z^e1 D^e2 and
c1^2 - c0 c2 = W^2 z^(2 f1) D^(2 f2 + 1), D = 1 + eps z^gamma, has its
power series solution expressed as a polynomial in Psi(eps z^gamma).
The base step solves the equation mod 3 with two sign choices; each
iteration lifts the solution from 3^beta to 3^(beta+1) by a linear
correction read off the Psi powers.

You'll learn:
- Coefficient-by-coefficient solving of a functional equation mod 3^e
- Lifting an approximate solution one power of 3 at a time
- Sectioning a Psi-polynomial by exponent classes
"""

import logging
from dataclasses import dataclass, field

import numpy as np
import sympy

from .config import load_settings
from .errors import (BranchAmbiguous, DivideNotExact, DivisibilityFailure, Inconsistent,
                     NonUnique, SectionDenominator, ShapeMismatch, SolverError)
from .laurent import CoeffContext, LaurentCoeff
from .psi_core import PsiContext, PsiPoly, psipoly_derivative, psipoly_to_series
from .ring3 import binom
from .series import TruncSeries, _needs_object, _object_convolve

log = logging.getLogger(__name__)

_z = sympy.Symbol("z")

# surviving prefixes kept before declaring the solution non-unique
CANDIDATE_CAP = 729


def _poly(p):
    """Normalize a polynomial given as list or mapping into {degree: int}"""
    if isinstance(p, dict):
        return {int(k): int(v) for k, v in p.items() if v}
    return {k: int(v) for k, v in enumerate(p) if v}


@dataclass
class FunctionalEq:
    """sum over terms  poly(z) * prod_k F^(k)  = 0.

    terms maps a sorted tuple of derivative orders to an integer
    polynomial: () holds c0, (0,) holds c1, (0, 0) holds c2, and every
    other key belongs to 3Q (so its coefficients are multiples of 3).
    """
    name: str
    terms: dict
    epsilon: int = 1
    gamma: int = 1
    initial_terms: tuple = ()

    def __post_init__(self):
        clean = {}
        for key, p in self.terms.items():
            key = tuple(sorted(key))
            poly = _poly(p)
            if poly:
                clean[key] = poly
        self.terms = clean
        self.initial_terms = tuple(int(x) for x in self.initial_terms)

    @classmethod
    def quadratic(cls, name, c2, c1, c0, q_terms=None, epsilon=1, gamma=1, initial_terms=()):
        """c2 F^2 + c1 F + c0 + 3 Q with Q given as its own term mapping"""
        terms = {(0, 0): _poly(c2), (0,): _poly(c1), (): _poly(c0)}
        for key, p in (q_terms or {}).items():
            key = tuple(sorted(key))
            merged = dict(terms.get(key, {}))
            for k, v in _poly(p).items():
                merged[k] = merged.get(k, 0) + 3 * v
            terms[key] = merged
        return cls(name, terms, epsilon, gamma, tuple(initial_terms))

    def part(self, key):
        return self.terms.get(tuple(key), {})

    @property
    def c2(self):
        return self.part((0, 0))

    @property
    def c1(self):
        return self.part((0,))

    @property
    def c0(self):
        return self.part(())

    @property
    def derivative_order(self):
        return max((max(k) for k in self.terms if k), default=0)

    @property
    def degree_in_f(self):
        return max((len(k) for k in self.terms), default=0)

    def negated(self):
        return FunctionalEq(self.name, {k: {d: -v for d, v in p.items()} for k, p in self.terms.items()},
                            self.epsilon, self.gamma, self.initial_terms)


@dataclass(frozen=True)
class StructureConstants:
    """Exponents of the mod-3 shapes, the sign of c2 and the square factor W (mod 3, ascending)"""
    e1: int
    e2: int
    f1: int
    f2: int
    sign: int = 1
    root: tuple = (1,)

    def as_tuple(self):
        return (self.e1, self.e2, self.f1, self.f2)


@dataclass
class SolveReport:
    """What solve_mod3k found"""
    representation: PsiPoly
    verified_prefix: int
    branch: int
    constants: StructureConstants
    notes: list = field(default_factory=list)


# --- validation --------------------------------------------------------------

def _sym(poly):
    expr = sum(c * _z ** k for k, c in poly.items()) if poly else sympy.Integer(0)
    return sympy.Poly(expr, _z, modulus=3)


def _strip(p, factor):
    count = 0
    while not p.is_zero:
        q, r = sympy.div(p, factor)
        if not r.is_zero:
            break
        p, count = q, count + 1
    return p, count


def _unit(p):
    """+1 or -1 when p is a non-zero constant mod 3, else None"""
    if p.is_zero or p.degree() > 0:
        return None
    return 1 if int(p.LC()) % 3 == 1 else -1


def validate_equation(eqn):
    """Check the mod-3 shape conditions and return the StructureConstants"""
    for key, poly in eqn.terms.items():
        if key in ((), (0,), (0, 0)):
            continue
        if any(v % 3 for v in poly.values()):
            raise ShapeMismatch(f"{eqn.name}: term {key} is not divisible by 3")
    base = sympy.Poly(1 + eqn.epsilon * _z ** eqn.gamma, _z, modulus=3)
    zp = sympy.Poly(_z, _z, modulus=3)

    c2 = _sym(eqn.c2)
    if c2.is_zero:
        raise ShapeMismatch(f"{eqn.name}: no quadratic term mod 3")
    rest, e1 = _strip(c2, zp)
    rest, e2 = _strip(rest, base)
    sign = _unit(rest)
    if sign is None:
        raise ShapeMismatch(f"{eqn.name}: c2 is not a monomial times a power of {base.as_expr()} mod 3")

    # negating the whole equation leaves c1^2 - c0 c2 unchanged
    c1, c0 = _sym(eqn.c1), _sym(eqn.c0)
    disc = c1 * c1 - c0 * c2
    if disc.is_zero:
        raise ShapeMismatch(f"{eqn.name}: discriminant vanishes mod 3")
    rest, two_f1 = _strip(disc, zp)
    rest, odd = _strip(rest, base)
    if two_f1 % 2 or odd % 2 == 0:
        raise ShapeMismatch(f"{eqn.name}: discriminant has the wrong z or base multiplicity")
    lc, factors = sympy.factor_list(rest.as_expr(), _z, modulus=3)
    if int(lc) % 3 != 1 or any(mult % 2 for _, mult in factors):
        raise ShapeMismatch(f"{eqn.name}: discriminant is not a square times an odd base power")
    root = sympy.Poly(1, _z, modulus=3)
    for f, mult in factors:
        root = root * sympy.Poly(f, _z, modulus=3) ** (mult // 2)
    root_coeffs = tuple(int(c) % 3 for c in reversed(root.all_coeffs()))
    consts = StructureConstants(e1, e2, two_f1 // 2, (odd - 1) // 2, sign, root_coeffs)
    log.debug("%s: structure constants %s", eqn.name, consts)
    return consts


# --- power series solution ----------------------------------------------------

def _falling(k, length, m):
    """(i+k)!/i! for i = 0..length-1, reduced mod m"""
    out = np.ones(length, dtype=np.int64)
    for t in range(1, k + 1):
        out = out * (np.arange(length, dtype=np.int64) + t) % m
    return out


class _Evaluator:
    """Coefficient of z^M on the left side for a given prefix of F"""

    def __init__(self, eqn, e, length):
        self.m = 3 ** e
        self.big = _needs_object(e, length)
        self.terms = list(eqn.terms.items())
        self.ff = {}
        for k in {k for key in eqn.terms for k in key}:
            ff = _falling(k, length, self.m)
            self.ff[k] = ff.astype(object) if self.big else ff

    def _product_coeff(self, gs, j):
        if len(gs) == 1:
            return int(gs[0][j])
        m = self.m
        acc = gs[0]
        for g in gs[1:-1]:
            if self.big:
                acc = _object_convolve(acc, g, j + 1, m)
            else:
                acc = np.convolve(acc, g)[:j + 1] % m
        return int(np.dot(acc[:j + 1], gs[-1][j::-1]) % m)

    def coefficient(self, f, M):
        m = self.m
        total = 0
        for key, poly in self.terms:
            for d, c in poly.items():
                j = M - d
                if j < 0:
                    continue
                if not key:
                    total += c if j == 0 else 0
                    continue
                gs = [f[k:k + j + 1] * self.ff[k][:j + 1] % m for k in key]
                total += c * self._product_coeff(gs, j)
        return total % m


def _lag(eqn):
    """Least M - n over the places where f_n first shows up"""
    lags = [min(p) - max(key) for key, p in eqn.terms.items() if key]
    return min(lags) if lags else 0


def _quadratic_lag(eqn):
    """Products of two coefficients f_a f_b show up no lower than a + b + this"""
    lags = [min(p) - sum(sorted(key)[-2:]) for key, p in eqn.terms.items() if len(key) >= 2]
    return min(lags) if lags else None


def _tail_lag(ev, eqn, f, n, length):
    """Effective lag of the linearization at the prefix f_0..f_n.

    Coefficients of degree at most n + this value do not depend linearly
    on f_(n+1), f_(n+2), ...
    """
    m = ev.m
    maxk = eqn.derivative_order
    known = np.zeros(length + maxk + 1, dtype=f.dtype)
    top = min(n + 1, len(known))
    known[:top] = f[:top]
    arrs = {k: known[k:k + length] * ev.ff[k][:length] % m for k in ev.ff}

    def conv(a, b):
        if ev.big:
            return _object_convolve(a, b, length, m)
        return np.convolve(a, b)[:length] % m

    partial = {}
    for key, poly in eqn.terms.items():
        for pos, k in enumerate(key):
            acc = None
            for other in key[:pos] + key[pos + 1:]:
                acc = arrs[other] if acc is None else conv(acc, arrs[other])
            if acc is None:
                acc = np.zeros(length, dtype=f.dtype)
                acc[0] = 1
            out = partial.get(k, np.zeros(length, dtype=f.dtype))
            for d, c in poly.items():
                if d < length:
                    out[d:] = (out[d:] + c * acc[:length - d]) % m
            partial[k] = out
    best = length
    for k, arr in partial.items():
        nz = np.nonzero(arr % m)[0]
        if len(nz):
            best = min(best, int(nz[0]) - k)
    return best


def _first_divergence(cands, upto):
    base = cands[0]
    for n in range(upto + 1):
        if any(c[n] != base[n] for c in cands[1:]):
            return n
    return None


def _newton(values):
    """Forward differences of a polynomial sampled at 0..d"""
    diffs = []
    row = list(values)
    while row:
        diffs.append(row[0])
        row = [b - a for a, b in zip(row, row[1:])]
    return diffs


def _eval_newton(diffs, v, m):
    return sum(d * binom(v, k) for k, d in enumerate(diffs) if d) % m


def _prefix_lag(ev, eqn, fixed, L, L2, m, dtype):
    """Lag once the fixed initial terms are in place.

    Fixed terms can push the first appearance of f_n above n + L (for
    instance f_0 = 0 kills the f_0 f_n cross term). Only the part of the
    linearization that the fixed terms already determine is trusted.
    """
    if not fixed:
        return L
    cap = len(fixed) + L - 1
    if L2 is not None:
        cap = min(cap, 2 * len(fixed) + L2 - 1)
    if cap <= L:
        return L
    base = np.zeros(len(fixed), dtype=dtype)
    base[:len(fixed)] = [v % m for v in fixed]
    length = max(len(fixed) + L + 1, 1)
    ell = _tail_lag(ev, eqn, base, len(fixed) - 1, length)
    return max(L, min(ell, cap))


def unique_series_solution(eqn, e, N, lookahead=None):
    """Coefficients f_0..f_N of the power series solution modulo 3^e.

    Every prefix consistent with the equation is kept; the answer is
    returned once all survivors agree on f_0..f_N. Raises NonUnique when
    they never do and Inconsistent when none survive.
    """
    m = 3 ** e
    horizon = 2 * N + 8 if lookahead is None else N + lookahead
    fixed = eqn.initial_terms
    L = _lag(eqn)
    size = horizon + eqn.derivative_order + max(L, 0) + len(fixed) + 2
    ev = _Evaluator(eqn, e, size)
    deg = max(eqn.degree_in_f, 1)
    L2 = _quadratic_lag(eqn)
    dtype = object if ev.big else np.int64
    cands = [np.zeros(size, dtype=dtype)]
    lag = _prefix_lag(ev, eqn, fixed, L, L2, m, dtype)
    if lag > L:
        start = cands[0].copy()
        start[:len(fixed)] = [v % m for v in fixed]
        for M in range(max(L, 0), lag):
            if ev.coefficient(start, M):
                raise Inconsistent(0, e)

    def settled(g, n):
        """Check the coefficients that the unknown tail can no longer reach"""
        window = n + 1 if L2 is None else n + 1 + L2
        hi = min(n + _tail_lag(ev, eqn, g, n, n + window + 2), n + window, horizon + lag)
        return all(ev.coefficient(g, M) == 0 for M in range(n + lag + 1, hi + 1))

    for n in range(horizon + 1):
        M = n + lag
        nxt = []
        for f in cands:
            if M < 0:
                choices = [fixed[n] % m] if n < len(fixed) else range(m)
                for v in choices:
                    g = f.copy()
                    g[n] = v
                    nxt.append(g)
                continue
            # the coefficient at z^M is a polynomial of degree <= deg in f_n
            samples = []
            for v in range(deg + 1):
                f[n] = v
                samples.append(ev.coefficient(f, M))
            f[n] = 0
            diffs = _newton(samples)
            if n < len(fixed):
                v0 = fixed[n] % m
                level = [v0] if _eval_newton(diffs, v0, m) == 0 else []
            else:
                # one ternary digit at a time: mod 3^j the value only sees v mod 3^j
                level = [0]
                for j in range(1, e + 1):
                    step, mj = 3 ** (j - 1), 3 ** j
                    level = [b + t * step for b in level for t in range(3)
                             if _eval_newton(diffs, b + t * step, m) % mj == 0]
            for v in level:
                g = f.copy()
                g[n] = v
                if len(level) == 1 or settled(g, n):
                    nxt.append(g)
        if not nxt:
            raise Inconsistent(n, e)
        cands = nxt
        if len(cands) > CANDIDATE_CAP:
            idx = _first_divergence(cands, n)
            raise NonUnique(n if idx is None else idx, e)
        if n >= N and len(cands) == 1:
            break
    if len(cands) > 1:
        idx = _first_divergence(cands, N)
        if idx is not None:
            raise NonUnique(idx, e)
    return TruncSeries(cands[0][:N + 1], e)


# --- the lifting iteration ----------------------------------------------------

def evaluate_equation(eqn, F):
    """The equation's left side at the Psi-polynomial F"""
    ctx = F.ctx
    cc = ctx.coeff_ctx
    derivs = [F]
    for _ in range(eqn.derivative_order):
        derivs.append(psipoly_derivative(derivs[-1]))
    total = PsiPoly.zero(ctx)
    for key, poly in eqn.terms.items():
        term = PsiPoly.constant(ctx, LaurentCoeff(cc, poly))
        for k in key:
            term = term * derivs[k]
        total = total + term
    return total


def base_solution(eqn, ctx, consts, sign):
    """a_0 = c1/c2 and a_T = sign W z^(f1-e1) D^(f2-e2+(T+1)/2), T = 3^alpha"""
    cc = ctx.coeff_ctx
    T = 3 ** ctx.alpha
    a0 = LaurentCoeff(cc, eqn.c1).shift(-consts.e1) * LaurentCoeff.base_power(cc, -consts.e2)
    root = LaurentCoeff(cc, dict(enumerate(consts.root)))
    aT = (root.shift(consts.f1 - consts.e1)
          * LaurentCoeff.base_power(cc, consts.f2 - consts.e2 + (T + 1) // 2)).scale(sign)
    return PsiPoly.from_powers(ctx, {0: a0, T: aT})


def _divide_root(r, root, beta, power):
    """r / W over Z/3; W has a non-zero constant term and is coprime to D"""
    if root == (1,) or r.is_zero():
        return r
    lo = min(r.num)
    work = {k - lo: v % 3 for k, v in r.num.items()}
    dw = len(root) - 1
    lead_inv = root[-1] % 3  # 1 and 2 are their own inverses mod 3
    q = {}
    for d in range(max(work), dw - 1, -1):
        c = work.get(d, 0) % 3
        if not c:
            continue
        qc = c * lead_inv % 3
        q[d - dw] = qc
        for i, w in enumerate(root):
            work[d - dw + i] = (work.get(d - dw + i, 0) - qc * w) % 3
    if any(work.get(d, 0) for d in range(dw)):
        raise DivisibilityFailure(beta, power, "numerator not divisible by the discriminant's square factor")
    return LaurentCoeff(r.ctx, {k + lo: v for k, v in q.items()}, r.den_pow)


def _lift_branch(eqn, ctx, consts, sign):
    F = base_solution(eqn, ctx, consts, sign)
    T = 3 ** ctx.alpha
    cc1 = CoeffContext(ctx.epsilon, ctx.gamma, 1)
    notes = []
    for beta in range(1, ctx.e):
        res = evaluate_equation(eqn, F)
        try:
            rat = res.divide_by_3(beta).reduce(1)
        except DivideNotExact as exc:
            bad = next((i for i, a in enumerate(res.coeffs)
                        if any(v % 3 ** beta for v in a.num.values())), -1)
            raise DivisibilityFailure(beta, bad, str(exc)) from None
        corr = {}
        for i in range(2 * T):
            power = (i + T) % (2 * T)
            r = rat.coeffs[power]
            if r.is_zero():
                continue
            r = _divide_root(r, consts.root, beta, power)
            g = consts.f2 + (T + 1) // 2 if i < T else consts.f2 - (T - 1) // 2
            b = (r.shift(-consts.f1) * LaurentCoeff.base_power(cc1, -g)).scale(sign)
            corr[i] = b.lift(ctx.e).scale(3 ** beta)
        if corr:
            if consts.root != (1,):
                notes.append(f"beta={beta}: right-hand sides divisible by the square factor")
            F = F + PsiPoly.from_powers(ctx, corr)
        log.debug("%s: lifted to 3^%d on branch %+d", eqn.name, beta + 1, sign)
    return F, notes


def solve_mod3k(eqn, alpha, check_degree=None, prefix=None):
    """Psi-polynomial for the solution of eqn modulo 3^(3^alpha).

    Both sign choices of the base step are lifted; the branch whose
    expansion matches the series solution on a prefix is kept and then
    checked up to z^check_degree.
    """
    settings = load_settings()
    consts = validate_equation(eqn)
    if consts.sign < 0:
        eqn = eqn.negated()
        consts = StructureConstants(consts.e1, consts.e2, consts.f1, consts.f2, 1, consts.root)
    e = 3 ** alpha
    ctx = PsiContext(eqn.epsilon, eqn.gamma, alpha, e)
    prefix = prefix or settings.branch_prefix or 2 * 3 ** (alpha + 2)
    check_degree = settings.check_degree if check_degree is None else check_degree
    target = unique_series_solution(eqn, e, max(prefix, check_degree))

    matches = []
    for sign in (1, -1):
        F, notes = _lift_branch(eqn, ctx, consts, sign)
        if psipoly_to_series(F, prefix).first_mismatch(target, prefix) is None:
            matches.append((sign, F, notes))
    if not matches:
        raise SolverError(f"{eqn.name}: neither sign branch reproduces the series solution")
    if len(matches) > 1:
        raise BranchAmbiguous(f"{eqn.name}: both branches agree up to z^{prefix}")
    sign, F, notes = matches[0]
    bad = psipoly_to_series(F, check_degree).first_mismatch(target, check_degree)
    if bad is not None:
        raise SolverError(f"{eqn.name}: representation deviates from the series solution at z^{bad}")
    log.info("%s: solved modulo 3^%d on branch %+d, checked to z^%d", eqn.name, e, sign, check_degree)
    return SolveReport(F, check_degree, sign, consts, notes)


# --- sectioning ---------------------------------------------------------------

def _mul(a, b, mod):
    out = {}
    for i, x in a.items():
        for j, y in b.items():
            out[i + j] = (out.get(i + j, 0) + x * y) % mod
    return {k: v for k, v in out.items() if v}


def _pow(base, k, mod):
    out = {0: 1}
    for _ in range(k):
        out = _mul(out, base, mod)
    return out


def m_section(p, residues, beta):
    """Terms z^n of p with n mod 3^(beta-1) in residues, over Psi(z^(3^(beta-1))).

    Uses Psi(z) = Psi(z^M) prod_{j<beta-1} (1 + z^(3^j)) and
    (1+z)^M = (1 + z^M) + 3 D_M(z) to move every denominator onto 1 + z^M.
    """
    ctx = p.ctx
    if (ctx.epsilon, ctx.gamma) != (1, 1):
        raise SectionDenominator("sectioning starts from a polynomial in Psi(z)")
    M = 3 ** (beta - 1)
    residues = {r % M for r in residues}
    e, mod = ctx.e, ctx.modulus
    target = PsiContext(1, M, ctx.alpha, e)
    tc = target.coeff_ctx
    if M == 1:
        return p if 0 in residues else PsiPoly.zero(target)

    pm = {0: 1}
    for j in range(beta - 1):
        pm = _mul(pm, {0: 1, 3 ** j: 1}, mod)
    dm = {k: binom(M, k) // 3 for k in range(1, M)}

    out = []
    for i, a in enumerate(p.coeffs):
        if a.is_zero():
            out.append(LaurentCoeff.zero(tc))
            continue
        L = a.den_pow
        Lp = -(-L // M)
        num = _mul(a.num, _pow({0: 1, 1: 1}, M * Lp - L, mod), mod)
        num = _mul(num, _pow(pm, i, mod), mod)
        total = LaurentCoeff.zero(tc)
        for k in range(e):
            c = binom(-Lp, k) * 3 ** k % mod
            if c == 0:
                continue
            piece = _mul(num, _pow(dm, k, mod), mod)
            total = total + LaurentCoeff(tc, piece, Lp + k).scale(c)
        kept = {n: v for n, v in total.num.items() if n % M in residues}
        out.append(LaurentCoeff(tc, kept, total.den_pow))
    return PsiPoly(target, out)
