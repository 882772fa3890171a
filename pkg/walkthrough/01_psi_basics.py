#!/usr/bin/env python3
"""
Walkthrough 1: The Series Psi(z)
================================

This script introduces the power series every representation is built on.
You'll learn:
- Why [z^n] Psi(z) only depends on the base-3 digits of n
- How Psi behaves under squaring, cubing and differentiation modulo 27
- Which polynomials annihilate Psi modulo 3, 9, ..., 3^13

Run with: python3 walkthrough/01_psi_basics.py

EXPERIMENT IDEAS:
1. Raise the degree of the minimal polynomial check to 3^7
2. Print Psi(-z^2) and compare with the digit rule for Psi(z)
3. Look for the first n where [z^n] Psi^4 is not 0 modulo 27
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from psicong.patterns import to_word
from psicong.psi_core import (
    PsiContext, PsiPoly, basic_series, check_minpoly, minpoly_table, psipoly_to_series,
)
from psicong.ring3 import min_degree_bound


def print_section(title):
    """Pretty print section headers"""
    print(f"\n{'='*60}")
    print(f"  {title}")
    print('='*60)


def explain_psi():
    """The product and its digit interpretation"""
    print_section("Psi(z) = (1 + z)(1 + z^3)(1 + z^9)(1 + z^27)...")
    print("""
Expanding the product picks each factor z^(3^j) at most once, so

    [z^n] Psi(z) = 1   if n has only digits 0 and 1 in base 3
                   0   otherwise

Everything below is computed modulo 3, 9 or 27; the integers never grow.
    """)
    s = basic_series(30, 3)
    print(f"{'n':>4} {'base 3':>8} {'[z^n] Psi':>10}")
    print("-"*26)
    for n in range(14):
        print(f"{n:>4} {to_word(n) or '0':>8} {s[n]:>10}")


def show_powers():
    """Psi^2 and Psi^3 modulo 27"""
    print_section("Powers of Psi modulo 27")
    N = 30
    psi = basic_series(N, 3)
    for k in (2, 3):
        print(f"\nPsi^{k}: {(psi ** k).terms(20)}")
    print("\nHigher powers are folded back onto Psi^0 .. Psi^5 by the")
    print("degree-6 relation that holds modulo 27:")
    ctx = PsiContext(1, 1, 1, 3)
    p7 = PsiPoly.psi_power(ctx, 7)
    ok = psipoly_to_series(p7, 200).agrees(basic_series(200, 3) ** 7, 200)
    print(f"\n{p7!r}")
    print(f"\n{'✓' if ok else '✗'} Psi^7 reduced form agrees with the series to z^200")


def show_derivative():
    """Psi' is again a polynomial in Psi"""
    print_section("Differentiating Psi")
    ctx = PsiContext(1, 1, 1, 3)
    d = PsiPoly.psi_power(ctx, 1).derivative()
    print(f"\nPsi'(z) = {d!r}")


def show_minimal_polynomials():
    """The A0, A1, A2 table"""
    print_section("Minimal Polynomials")
    N = 200
    print(f"\n{'Polynomial':<12} {'Modulus':>9} {'Degree':>7} {'Bound':>6}  Vanishes to z^{N}")
    print("-"*60)
    for fix in minpoly_table():
        ok = check_minpoly(fix, N)
        print(f"{fix.name:<12} {fix.modulus:>9} {fix.degree:>7} {min_degree_bound(fix.mod_exp):>6}  "
              f"{'✓' if ok else '✗'}")
    a0 = minpoly_table()[0]
    print(f"\n⚠️  A0 modulo 9 vanishes: {check_minpoly(a0, N, e=2)} (it only works modulo 3)")


def main():
    """Main demonstration function"""
    print("\n" + "="*60)
    print("  WALKTHROUGH 1: THE SERIES PSI(z)")
    print("="*60)

    explain_psi()
    show_powers()
    show_derivative()
    show_minimal_polynomials()

    print("\n✅ Demo complete! Continue to 02_solving_equations.py\n")


if __name__ == "__main__":
    main()
