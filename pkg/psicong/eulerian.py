"""
Central Eulerian Numbers mod 3^beta
===================================

A(2n, n+1) and A(2n-1, n) modulo 3^beta only depend on n through the
class of n modulo 3^(beta-1) once n is large enough: the exponent 2n of
j may be replaced by 2s for any s = n mod 3^(beta-1) above a floor. For
fixed s the sums have closed forms

    even:  1/2 (1 + sqrt(1+4z)) (1 + p_s(z))
    odd:   z / sqrt(1+4z)       (1 + p_s(z))

with integer kernels p_s divisible by 3, so each one solves a quadratic
equation the Psi solver handles. Sectioning every solution by its class
and summing gives the generating function, up to a short correction
polynomial below the floor.

You'll learn:
- Eliminating sqrt(1+4z) from an odd/even polynomial with sympy
- Reusing a general solver on a family of equations
- Assembling a series from residue-class sections
"""

import logging
import math
from dataclasses import dataclass, field

import sympy

from .errors import KernelIntegrality, SolverError
from .laurent import LaurentCoeff
from .psi_core import PsiPoly, psipoly_to_series
from .sequences import SequenceId, oracle_terms
from .solver import FunctionalEq, m_section, solve_mod3k

log = logging.getLogger(__name__)

KINDS = ("even", "odd")

_y, _z = sympy.symbols("y z")


@dataclass(frozen=True)
class EulerKernel:
    """p_s for one kind; q is the polynomial in y = 2u+1 it comes from"""
    kind: str
    s: int
    p: tuple
    q: tuple

    def one_plus_p(self):
        coeffs = dict(enumerate(self.p))
        coeffs[0] = coeffs.get(0, 0) + 1
        return coeffs

    def equation(self):
        """The quadratic equation satisfied by the kernel series E_s"""
        base = sympy.Poly(sum(c * _z ** k for k, c in self.one_plus_p().items()), _z)
        square = base ** 2
        if self.kind == "even":
            # E^2 - (1+p) E - z (1+p)^2 = 0
            c1 = {k: -int(c) for (k,), c in base.terms()}
            c0 = {k + 1: -int(c) for (k,), c in square.terms()}
            return FunctionalEq.quadratic(f"E_{self.s}(even)", {0: 1}, c1, c0, initial_terms=(1,))
        # (1+4z) E^2 - z^2 (1+p)^2 = 0
        c0 = {k + 2: -int(c) for (k,), c in square.terms()}
        return FunctionalEq.quadratic(f"E_{self.s}(odd)", {0: 1, 1: 4}, {}, c0, initial_terms=(0, 1))

    def __repr__(self):
        body = " + ".join(f"{c}*z^{k}" for k, c in enumerate(self.p) if c) or "0"
        return f"EulerKernel({self.kind}, s={self.s}: {body})"


def _difference_coeffs(exponent, top):
    """sum_k (-1)^(m-k) C(m,k) k^exponent for m = 1..top"""
    return [sum((-1) ** (m - k) * math.comb(m, k) * k ** exponent for k in range(1, m + 1))
            for m in range(1, top + 1)]


def euler_kernel(kind, s):
    """The kernel polynomial p_s of the given kind, checked for integrality"""
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}, got {kind!r}")
    if s < 1:
        raise ValueError("s must be positive")
    exponent = 2 * s if kind == "even" else 2 * s - 1
    cs = _difference_coeffs(exponent, exponent)
    u = (_y - 1) / 2
    q = sympy.Poly(sympy.expand(sum(c * u ** (m - 1) for m, c in enumerate(cs, start=1))), _y)
    parity = 1 if kind == "even" else 0
    one_plus_p = sympy.Integer(0)
    for (deg,), c in q.terms():
        if deg % 2 != parity:
            raise KernelIntegrality(f"q_{s} ({kind}) has a term y^{deg} of the wrong parity")
        # even kind divides by y first; either way y^2 becomes 1+4z
        one_plus_p += c * (1 + 4 * _z) ** ((deg - parity) // 2)
    p = sympy.Poly(sympy.expand(one_plus_p - 1), _z)
    coeffs = [sympy.Rational(c) for c in reversed(p.all_coeffs())] if not p.is_zero else []
    if any(c.q != 1 for c in coeffs):
        raise KernelIntegrality(f"p_{s} ({kind}) has non-integral coefficients: {coeffs}")
    coeffs = [int(c) for c in coeffs]
    if coeffs and coeffs[0] != 0:
        raise KernelIntegrality(f"p_{s} ({kind}) does not vanish at z = 0")
    if any(c % 3 for c in coeffs):
        raise KernelIntegrality(f"p_{s} ({kind}) has coefficients not divisible by 3: {coeffs}")
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    q_coeffs = tuple(sympy.Rational(c) for c in reversed(q.all_coeffs()))
    return EulerKernel(kind, s, tuple(coeffs), q_coeffs)


def window(kind, beta):
    """Exponents s covering every class mod 3^(beta-1), starting at the floor

    The floor is ceil((beta-1)/2) for the even kind (never below 1) and
    ceil((beta+1)/2) for the odd one; odd s = 1 already fails at n = 4 mod 9.
    """
    floor = max(1, beta // 2) if kind == "even" else (beta + 2) // 2
    return list(range(floor, floor + 3 ** (beta - 1)))


@dataclass
class EulerianReport:
    """The assembled representation with the pieces it was built from"""
    kind: str
    beta: int
    representation: PsiPoly
    window: list
    correction: dict = field(default_factory=dict)
    sections: dict = field(default_factory=dict)


def eulerian_report(kind, beta, alpha=1):
    """Solve, section and sum the E_s equations for one kind modulo 3^beta"""
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}, got {kind!r}")
    if not 1 <= beta <= 3 ** alpha:
        raise ValueError(f"beta={beta} needs 1 <= beta <= 3^alpha = {3 ** alpha}")
    M = 3 ** (beta - 1)
    ss = window(kind, beta)
    total = None
    sections = {}
    for s in ss:
        kern = euler_kernel(kind, s)
        solved = solve_mod3k(kern.equation(), alpha).representation.reduce(beta)
        sec = m_section(solved, {s % M}, beta)
        sections[s % M] = sec
        total = sec if total is None else total + sec
        log.debug("E_%d (%s): section for n = %d mod %d", s, kind, s % M, M)

    # the congruence only holds from the floor on; patch what lies below it
    N0 = 2 * M
    sid = SequenceId("eulerian_" + kind)
    target = oracle_terms(sid, N0, beta)
    got = psipoly_to_series(total, N0 - 1)
    mod = 3 ** beta
    correction = {}
    for n in range(N0):
        d = (target[n] - got[n]) % mod
        if not d:
            continue
        if n >= ss[0]:
            raise SolverError(f"{sid}: assembled series deviates from the oracle at n={n}, above the floor {ss[0]}")
        correction[n] = d
    if correction:
        cc = total.ctx.coeff_ctx
        total = total + PsiPoly.constant(total.ctx, LaurentCoeff(cc, correction))
    log.info("%s mod 3^%d: %d sections, correction %s", sid, beta, len(ss), correction or "none")
    return EulerianReport(kind, beta, total, ss, correction, sections)


def derive_eulerian(kind, beta, alpha=1):
    """Psi-polynomial (over Psi(z^(3^(beta-1)))) for the central Eulerian numbers mod 3^beta"""
    return eulerian_report(kind, beta, alpha).representation
