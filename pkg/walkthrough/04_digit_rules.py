#!/usr/bin/env python3
"""
Walkthrough 4: Reading Coefficients off the Digits
==================================================

Once a generating function is a polynomial in Psi, its coefficients
modulo 9 or 27 follow from patterns in the base-3 digits of n.
You'll learn:
- Evaluating [z^n] Psi^3 for an n with hundreds of digits
- The carry automaton behind any power of Psi
- Auditing a printed case list against exact values

Run with: python3 walkthrough/04_digit_rules.py

EXPERIMENT IDEAS:
1. Audit the printed Psi^5 list up to 3^8
2. Try psi_power_coeff_carry(11, 3, 10**100)
3. Find the smallest n with [z^n] Psi^3 = 24 (mod 27)
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from psicong.carry import psi_power_coeff_carry
from psicong.digit_rules import digit_stats, printed_table_findings, psi_power_coeff
from psicong.patterns import to_word
from psicong.psi_core import basic_series


def print_section(title):
    """Pretty print section headers"""
    print(f"\n{'='*60}")
    print(f"  {title}")
    print('='*60)


def compare_small():
    print_section("Digit Rules vs Series, n < 30")
    psi3 = basic_series(30, 3) ** 3
    print(f"\n{'n':>4} {'base 3':>8} {'rule':>6} {'series':>7}  stats")
    print("-"*60)
    for n in range(1, 30, 4):
        st = digit_stats(n)
        rule = psi_power_coeff(3, 3, n).value
        print(f"{n:>4} {to_word(n):>8} {rule:>6} {psi3[n]:>7}  1-runs={st.estring} iso2={st.iso2}")


def huge_n():
    print_section("A Coefficient Far Out")
    n = 3 ** 200 + 3 ** 99 + 4
    print(f"\nn has {len(to_word(n))} base-3 digits")
    print(f"[z^n] Psi^3 = {psi_power_coeff(3, 3, n).value} (mod 27)")
    print(f"[z^n] Psi^5 = {psi_power_coeff(5, 3, n).value} (mod 27)")
    print(f"[z^n] Psi^8 = {psi_power_coeff_carry(8, 3, n).value} (mod 27, carry automaton)")


def audit():
    for e in (2, 3):
        print_section(f"Auditing the Printed Psi^5 List modulo {3 ** e}")
        found = printed_table_findings(5, e, 3 ** 5)
        for f in found[:5]:
            print(f"  ⚠️  n={f.n} ({to_word(f.n)}): printed {f.expected}, exact {f.actual}")
        print(f"\n{len(found)} disagreements below 3^5")


def main():
    """Main demonstration function"""
    print("\n" + "="*60)
    print("  WALKTHROUGH 4: DIGIT RULES")
    print("="*60)

    compare_small()
    huge_n()
    audit()

    print("\n✅ Demo complete! Continue to 05_free_subgroups_and_apery.py\n")


if __name__ == "__main__":
    main()
