"""
Sequence Catalog
================

The sequences whose generating functions are written as polynomials in
Psi: their functional equations, brute-force oracles modulo 3^e, and
the printed representations kept under data/v1.

You'll learn:
- Counting lattice paths with a rolling numpy row
- Turning a functional equation into a coefficient recurrence
- Loading symbolic fixtures with sympy and mapping them into Z/3^e
"""

import json
import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np
import sympy

from .config import load_settings
from .errors import NoFixture, UnsupportedId
from .laurent import LaurentCoeff
from .psi_core import PsiContext, PsiPoly
from .ring3 import inverse
from .series import TruncSeries, _needs_object
from .solver import FunctionalEq

log = logging.getLogger(__name__)

QUADRATIC_IDS = (
    "almost_central_binomial", "motzkin", "motzkin_prefix", "riordan",
    "central_trinomial", "central_binomial", "central_binomial_sums",
    "catalan", "delannoy", "schroeder", "hex_tree", "free_subgroups",
)
EULERIAN_IDS = ("eulerian_even", "eulerian_odd")
APERY_IDS = ("apery_zeta2", "apery_zeta3")
SEQUENCE_NAMES = QUADRATIC_IDS + EULERIAN_IDS + APERY_IDS


@dataclass(frozen=True)
class SequenceId:
    """A catalog name, plus m for the free subgroup numbers"""
    name: str
    m: Optional[int] = None

    def __post_init__(self):
        if self.name not in SEQUENCE_NAMES:
            raise UnsupportedId(f"unknown sequence {self.name!r}")
        if self.name == "free_subgroups":
            m = 1 if self.m is None else int(self.m)
            if m < 1 or m % 3 == 0:
                raise UnsupportedId(f"free_subgroups needs m >= 1 with 3 not dividing m, got m={m}")
            object.__setattr__(self, "m", m)
        elif self.m is not None:
            raise UnsupportedId(f"{self.name} takes no parameter")

    @classmethod
    def parse(cls, text):
        """'catalan' or 'free_subgroups,m=4'"""
        name, _, rest = text.strip().partition(",")
        m = None
        if rest:
            key, _, value = rest.partition("=")
            if key.strip() != "m" or not value.strip().isdigit():
                raise UnsupportedId(f"cannot parse parameter {rest!r} (expected m=<int>)")
            m = int(value)
        return cls(name.strip(), m)

    @property
    def kind(self):
        if self.name in EULERIAN_IDS:
            return "eulerian"
        if self.name in APERY_IDS:
            return "apery"
        return "quadratic"

    def __str__(self):
        return self.name if self.m is None else f"{self.name},m={self.m}"


def all_ids(free_m=(1,)):
    """Every catalog entry, the free subgroup numbers once per m"""
    out = []
    for name in SEQUENCE_NAMES:
        if name == "free_subgroups":
            out.extend(SequenceId(name, m) for m in free_m)
        else:
            out.append(SequenceId(name))
    return out


# --- functional equations ----------------------------------------------------

def _free_equation(m):
    # zF^2 - (1-(6m-2)z)F + 6m z^2 F' + 1 + (1-6m+5m^2)z = 0, negated so that c2 = -z
    return FunctionalEq.quadratic(
        f"free_subgroups(m={m})",
        c2={1: -1},
        c1={0: 1, 1: -(6 * m - 2)},
        c0={0: -1, 1: -(1 - 6 * m + 5 * m * m)},
        q_terms={(1,): {2: -2 * m}},
        epsilon=1, gamma=2,
    )


_EQUATIONS = {
    # (1-4z) z^2 A^2 + (1-4z) A - 1 = 0
    "almost_central_binomial": lambda: FunctionalEq.quadratic(
        "almost_central_binomial", {2: 1, 3: -4}, {0: 1, 1: -4}, {0: -1}, epsilon=-1),
    "motzkin": lambda: FunctionalEq.quadratic("motzkin", {2: 1}, {0: -1, 1: 1}, {0: 1}),
    "motzkin_prefix": lambda: FunctionalEq.quadratic(
        "motzkin_prefix", {1: 1, 2: -3}, {0: 1, 1: -3}, {0: -1}),
    "riordan": lambda: FunctionalEq.quadratic("riordan", {1: 1, 2: 1}, {0: -1, 1: -1}, {0: 1}),
    "central_trinomial": lambda: FunctionalEq.quadratic(
        "central_trinomial", {0: 1, 1: -2, 2: -3}, {}, {0: -1}, initial_terms=(1,)),
    "central_binomial": lambda: FunctionalEq.quadratic(
        "central_binomial", {0: 1, 1: -4}, {}, {0: -1}, epsilon=-1, initial_terms=(1,)),
    # (1-4z)(1-z)^2 expanded
    "central_binomial_sums": lambda: FunctionalEq.quadratic(
        "central_binomial_sums", {0: 1, 1: -6, 2: 9, 3: -4}, {}, {0: -1},
        epsilon=-1, initial_terms=(1,)),
    "catalan": lambda: FunctionalEq.quadratic("catalan", {1: 1}, {0: -1}, {0: 1}, epsilon=-1),
    "delannoy": lambda: FunctionalEq.quadratic(
        "delannoy", {0: 1, 1: -6, 2: 1}, {}, {0: -1}, gamma=2, initial_terms=(1,)),
    "schroeder": lambda: FunctionalEq.quadratic(
        "schroeder", {1: 1}, {0: -1, 1: 1}, {0: 1}, gamma=2),
    "hex_tree": lambda: FunctionalEq.quadratic(
        "hex_tree", {2: 1}, {0: -1, 1: 3}, {0: 1}, epsilon=-1, gamma=2),
}


def catalog(sid):
    """The functional equation of a quadratic-type sequence"""
    if isinstance(sid, str):
        sid = SequenceId.parse(sid)
    if sid.name == "free_subgroups":
        return _free_equation(sid.m)
    try:
        return _EQUATIONS[sid.name]()
    except KeyError:
        raise UnsupportedId(f"{sid} has no quadratic functional equation; "
                            "Eulerian and Apery numbers use their own pipelines") from None


def apery_shifted_equation():
    """Linear ODE for sum A^(2)_(n+1) z^n; over Z it has a unique solution, mod 3 it does not"""
    return FunctionalEq("apery_shifted", {
        (): {0: 3, 1: 1},
        (0,): {0: -1, 1: 25, 2: 4},
        (1,): {1: -3, 2: 44, 3: 5},
        (2,): {2: -1, 3: 11, 4: 1},
    })


def catalan_squared_equation():
    """(zC^2 - C + 1)^2 = 0: unique mod 3, not mod 9"""
    return FunctionalEq("catalan_squared", {
        (0, 0, 0, 0): {2: 1},
        (0, 0, 0): {1: -2},
        (0, 0): {0: 1, 1: 2},
        (0,): {0: -2},
        (): {0: 1},
    })


# --- oracles -------------------------------------------------------------------

def _dtype(m, growth):
    """int64 unless values of size m * growth could overflow"""
    return object if m * growth >= 2 ** 62 else np.int64


def _lattice_paths(N, m, floor_steps=True, any_end=False):
    """Up/level/down paths of length n that stay >= 0, for n < N"""
    dt = _dtype(m, 3)
    row = np.zeros(N + 2, dtype=dt)
    row[0] = 1
    out = []
    for _ in range(N):
        out.append(int(row.sum() % m) if any_end else int(row[0]))
        new = row.copy()
        new[1:] += row[:-1]
        new[:-1] += row[1:]
        if not floor_steps:
            new[0] -= row[0]
        row = new % m
    return out


def _trinomial(N, m):
    dt = _dtype(m, 3)
    off = N + 1
    row = np.zeros(2 * N + 3, dtype=dt)
    row[off] = 1
    out = []
    for _ in range(N):
        out.append(int(row[off]))
        new = row.copy()
        new[1:] += row[:-1]
        new[:-1] += row[1:]
        row = new % m
    return out


def _delannoy(N, m):
    # D(i, j) = D(i-1, j) + D(i-1, j-1) + D(i, j-1), one row as a running sum
    dt = _dtype(m, 2 * N + 2)
    row = np.ones(N + 1, dtype=dt)
    out = [1] if N else []
    for i in range(1, N):
        a = row.copy()
        a[1:] += row[:-1]
        row = np.cumsum(a) % m
        out.append(int(row[i]))
    return out


def _schroeder(N, m):
    # up (1,1), down (1,-1), flat (2,0), staying >= 0
    dt = _dtype(m, 3)
    width = N + 2
    prev2 = np.zeros(width, dtype=dt)
    prev = np.zeros(width, dtype=dt)
    prev[0] = 1
    out = [1] if N else []
    for x in range(1, 2 * N - 1):
        new = prev2.copy()
        new[1:] += prev[:-1]
        new[:-1] += prev[1:]
        new %= m
        prev2, prev = prev, new
        if x % 2 == 0:
            out.append(int(new[0]))
    return out


def _hex_trees(N, m):
    # a hex tree is empty-rooted, has one child in three positions, or a left and a right subtree
    h = []
    for n in range(N):
        if n == 0:
            h.append(1)
            continue
        total = 3 * h[n - 1]
        total += sum(h[i] * h[n - 2 - i] for i in range(n - 1))
        h.append(total % m)
    return h


def free_subgroup_terms(N, m_param, modulus):
    """f_0..f_(N-1) from coefficient comparison in the Riccati equation"""
    f = []
    for n in range(N):
        if n == 0:
            f.append(1)
            continue
        total = sum(f[i] * f[n - 1 - i] for i in range(n))
        total += (6 * m_param * n - 2) * f[n - 1]
        if n == 1:
            total += 1 - 6 * m_param + 5 * m_param ** 2
        f.append(total % modulus)
    return f


def eulerian_number(n, k):
    """A(n, k), permutations of n with k-1 descents, by the alternating sum.

    The j = 0 term is left out, which only matters for n = 0.
    """
    return sum((-1) ** (k - j) * math.comb(n + 1, k - j) * j ** n for j in range(1, k + 1))


def central_eulerian_terms(N, e, odd=False, exponent=None):
    """sum_j (-1)^(n+1-j) C(2n+1, n+1-j) j^x (even) or sum_j (-1)^(n-j) C(2n, n-j) j^x (odd).

    x is 2n resp. 2n-1 for the central Eulerian numbers themselves, or a
    fixed exponent for the kernel series E_s. Terms are summed as exact
    products reduced modulo 3^e; binomials come from Pascal rows.
    """
    m = 3 ** e
    dt = object if _needs_object(e, N + 2) else np.int64
    js = np.arange(1, N + 2)
    step = np.array([j * j % m for j in js], dtype=dt)
    if exponent is not None:
        pw = np.array([pow(int(j), exponent, m) for j in js], dtype=dt)
    elif odd:
        pw = np.array([int(j) % m for j in js], dtype=dt)
    else:
        pw = np.ones(N + 1, dtype=dt)
    row = np.zeros(2 * N + 3, dtype=dt)
    row[0] = 1
    out = []
    r = 0
    for n in range(N):
        target = 2 * n if odd else 2 * n + 1
        while r < target:
            new = row.copy()
            new[1:] += row[:-1]
            row = new % m
            r += 1
        top = n if odd else n + 1
        if top == 0:
            out.append(0)
        else:
            # k = top - j runs over 0..top-1
            ks = np.arange(top)
            signs = np.where(ks % 2 == 0, 1, -1).astype(dt)
            vals = row[:top] * pw[top - 1 - ks] % m
            out.append(int((signs * vals).sum() % m))
        if exponent is None and (odd is False or n >= 1):
            pw = pw * step % m
    return out


def apery_sum(kind, n):
    """A^(2)_n = sum C(n,k)^2 C(n+k,k) or A^(3)_n = sum C(n,k)^2 C(n+k,k)^2"""
    p = 1 if kind == "zeta2" else 2
    return sum(math.comb(n, k) ** 2 * math.comb(n + k, k) ** p for k in range(n + 1))


def apery_recurrence_terms(kind, N):
    """Exact integers from the three-term recurrences"""
    a = [1, 3] if kind == "zeta2" else [1, 5]
    for n in range(0, N - 2):
        if kind == "zeta2":
            num = (11 * n * n + 33 * n + 25) * a[n + 1] + (n + 1) ** 2 * a[n]
            den = (n + 2) ** 2
        else:
            num = (2 * n + 3) * (17 * n * n + 51 * n + 39) * a[n + 1] - (n + 1) ** 3 * a[n]
            den = (n + 2) ** 3
        q, r = divmod(num, den)
        assert r == 0, f"recurrence left a remainder at n={n + 2}"
        a.append(q)
    return a[:N]


def oracle_terms(sid, N, e):
    """First N terms modulo 3^e from the combinatorial definitions"""
    if isinstance(sid, str):
        sid = SequenceId.parse(sid)
    m = 3 ** e
    name = sid.name
    if name == "motzkin":
        terms = _lattice_paths(N, m)
    elif name == "motzkin_prefix":
        terms = _lattice_paths(N, m, any_end=True)
    elif name == "riordan":
        terms = _lattice_paths(N, m, floor_steps=False)
    elif name == "central_trinomial":
        terms = _trinomial(N, m)
    elif name == "delannoy":
        terms = _delannoy(N, m)
    elif name == "schroeder":
        terms = _schroeder(N, m)
    elif name == "hex_tree":
        terms = _hex_trees(N, m)
    elif name == "central_binomial":
        terms = [math.comb(2 * n, n) % m for n in range(N)]
    elif name == "central_binomial_sums":
        terms, acc = [], 0
        for n in range(N):
            acc += math.comb(2 * n, n)
            terms.append(acc % m)
    elif name == "catalan":
        terms = [math.comb(2 * n, n) // (n + 1) % m for n in range(N)]
    elif name == "almost_central_binomial":
        terms = [math.comb(2 * n + 2, n) % m for n in range(N)]
    elif name == "free_subgroups":
        terms = free_subgroup_terms(N, sid.m, m)
    elif name == "eulerian_even":
        terms = central_eulerian_terms(N, e)
    elif name == "eulerian_odd":
        terms = central_eulerian_terms(N, e, odd=True)
    else:
        terms = [a % m for a in apery_recurrence_terms(name.split("_")[1], N)]
    log.debug("oracle %s: %d terms mod 3^%d", sid, N, e)
    return TruncSeries(np.array(terms, dtype=object), e)


# --- printed representations ------------------------------------------------------

_z, _m = sympy.symbols("z m")


def parse_coefficient(text, ctx, m=None, extra_den=0):
    """A rational expression in z over z^a (1 + eps z^gamma)^b, as a LaurentCoeff mod 3^e"""
    expr = sympy.sympify(text, locals={"z": _z, "m": _m})
    if m is not None:
        expr = expr.subs(_m, m)
    num, den = sympy.fraction(sympy.together(expr))
    num = sympy.Poly(sympy.expand(num), _z)
    den = sympy.Poly(sympy.expand(den), _z)
    base = sympy.Poly(1 + ctx.epsilon * _z ** ctx.gamma, _z)
    zpow = den_pow = 0
    while den.degree() > 0:
        if den.eval(0) == 0:
            den = den.quo(sympy.Poly(_z, _z))
            zpow += 1
            continue
        q, r = sympy.div(den, base)
        if not r.is_zero:
            raise ValueError(f"denominator of {text!r} is not a power of z times a power of {base.as_expr()}")
        den = q
        den_pow += 1
    c = sympy.Rational(den.LC())
    e = ctx.e
    mod = 3 ** e
    out = {}
    for (k,), coeff in num.terms():
        r = sympy.Rational(coeff) / c
        out[k - zpow] = int(r.p) * inverse(int(r.q), e) % mod
    return LaurentCoeff(ctx, out, den_pow + extra_den)


def _fixture_path(name):
    return load_settings().data_dir / f"{name}.json"


@lru_cache(maxsize=None)
def _fixture_doc(path):
    with open(path) as fh:
        return json.load(fh)


def representation_from_doc(doc, e, m=None):
    """A PsiPoly from a fixture document or from PsiPoly.to_json output"""
    if "coeffs" in doc:
        poly = PsiPoly.from_json(doc)
        return poly if poly.ctx.e == e else poly.reduce(e)
    table = doc["representations"].get(str(3 ** e))
    if table is None:
        raise NoFixture(f"no printed representation of {doc.get('id')} modulo {3 ** e}")
    if doc.get("parameter") == "m":
        table = table[f"m%3={m % 3}"]
    ctx = PsiContext(int(doc["epsilon"]), int(doc["gamma"]), 1, e)
    cc = ctx.coeff_ctx
    # Psi(x^3) = Psi(x) / (1 + x), so each power i picks up i factors of D
    shift = 1 if int(doc.get("argument_power", 1)) == 3 else 0
    powers = {int(i): parse_coefficient(text, cc, m, shift * int(i)) for i, text in table.items()}
    return PsiPoly.from_powers(ctx, powers)


def printed_fixture(sid, e):
    """The printed representation of a sequence's generating function modulo 3^e"""
    if isinstance(sid, str):
        sid = SequenceId.parse(sid)
    path = _fixture_path(sid.name)
    if not path.exists():
        raise NoFixture(f"no fixture file for {sid} in {path.parent}")
    poly = representation_from_doc(_fixture_doc(str(path)), e, sid.m)
    log.debug("loaded fixture %s mod 3^%d", sid, e)
    return poly


def fixture_moduli(sid):
    """Moduli with a printed representation, e.g. [9, 27]"""
    if isinstance(sid, str):
        sid = SequenceId.parse(sid)
    path = _fixture_path(sid.name)
    if not path.exists():
        return []
    return sorted(int(k) for k in _fixture_doc(str(path))["representations"])
