"""
Carry Automaton for Psi Powers
==============================

Psi^k = prod_j (1 + z^(3^j))^k, so [z^n] Psi^k sums
prod_j binom(k, c_j) over all digit choices 0 <= c_j <= k with
sum c_j 3^j = n. Reading n least significant trit first, the only thing
a choice leaves behind for the higher digits is a borrow, which stays
below k/2. That makes the coefficient computable for any n in
O(digits * k^2) steps, whatever the power and modulus.
"""

import logging
from dataclasses import dataclass
from functools import cached_property

from .ring3 import Residue, binom

log = logging.getLogger(__name__)


def trits_lsd(n):
    """Base-3 digits of n, least significant first ([] for 0)"""
    if n < 0:
        raise ValueError("n must be non-negative")
    out = []
    while n:
        n, d = divmod(n, 3)
        out.append(d)
    return out


@dataclass(frozen=True)
class CarryAutomaton:
    """Weighted automaton over the trits of n for [z^n] Psi^k mod 3^e"""
    k: int
    e: int

    def __post_init__(self):
        if self.k < 0 or self.e < 1:
            raise ValueError("need k >= 0 and e >= 1")

    @property
    def modulus(self):
        return 3 ** self.e

    @cached_property
    def weights(self):
        return [binom(self.k, c) % self.modulus for c in range(self.k + 1)]

    def step(self, states, digit):
        """Advance {borrow: weight} over one trit"""
        mod = self.modulus
        out = {}
        for b, w in states.items():
            # the choice c must satisfy c + b = digit (mod 3)
            for c in range((digit - b) % 3, self.k + 1, 3):
                nb = (c + b - digit) // 3
                out[nb] = (out.get(nb, 0) + w * self.weights[c]) % mod
        return {b: w for b, w in out.items() if w}

    def run(self, n):
        states = {0: 1}
        for d in trits_lsd(n):
            states = self.step(states, d)
            if not states:
                break
        # a borrow left over means the digit choices overshoot n
        return states.get(0, 0)

    def coeff(self, n):
        """[z^n] Psi^k as a Residue mod 3^e"""
        if n < 0:
            return Residue(0, self.e)
        return Residue(self.run(n), self.e)


def psi_power_coeff_carry(power, mod_exp, n):
    """[z^n] Psi^power mod 3^mod_exp, for any power and modulus"""
    r = CarryAutomaton(power, mod_exp).coeff(n)
    log.debug("carry automaton: [z^%d] Psi^%d = %s", n, power, r)
    return r
