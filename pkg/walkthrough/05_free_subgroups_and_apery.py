#!/usr/bin/env python3
"""
Walkthrough 5: Free Subgroup Numbers and Apery Numbers
======================================================

Two classifiers driven by the digits of the index: the number of free
subgroups of index 6 lambda in PSL2(Z), and the Apery numbers, whose
classes modulo 9 are conjectural.
You'll learn:
- Classifying f_lambda modulo 3 and 9 in constant time
- Checking a printed clause list modulo 27 against the recurrence
- Turning a conjecture into a scan that reports findings

Run with: python3 walkthrough/05_free_subgroups_and_apery.py

EXPERIMENT IDEAS:
1. Compare the printed and corrected free27 clause lists up to 5000
2. Scan the Apery classes up to 3^8
3. Tabulate f_lambda modulo 9 for lambda = 3^k
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from psicong.digit_rules import (
    apery_class, apery_scan, compare_free27_variants, free27_is_one, free_class,
)
from psicong.patterns import to_word
from psicong.sequences import apery_recurrence_terms, free_subgroup_terms


def print_section(title):
    """Pretty print section headers"""
    print(f"\n{'='*60}")
    print(f"  {title}")
    print('='*60)


def free_table():
    print_section("f_lambda modulo 9 and 27")
    terms = free_subgroup_terms(13, 1, 27)
    print(f"\n{'lambda':>6} {'base 3':>7} {'mod 9':>6} {'oracle':>7} {'= 1 mod 27':>11}")
    print("-"*42)
    for lam in range(1, 13):
        print(f"{lam:>6} {to_word(lam):>7} {free_class(lam, 2).value:>6} {terms[lam] % 9:>7} "
              f"{'✓' if free27_is_one(lam) else '':>11}")


def free27_variants():
    print_section("Printed and Corrected Clause Lists modulo 27")
    for variant, found in compare_free27_variants(500).items():
        first = f", first at lambda={found[0].n}" if found else ""
        print(f"  {'✓' if not found else '✗'} {variant:<10} {len(found)} mismatches up to 500{first}")


def apery():
    print_section("Apery Numbers modulo 9")
    exact = apery_recurrence_terms("zeta2", 10)
    print(f"\n{'n':>3} {'A_n':>9} {'mod 9':>6} {'class':>6}")
    for n in range(10):
        print(f"{n:>3} {exact[n]:>9} {exact[n] % 9:>6} {apery_class('zeta2', n).value:>6}")
    for kind in ("zeta2", "zeta3"):
        found = apery_scan(kind, 729)
        print(f"\n{'⚠️ ' if found else '✓'} {kind}: {len(found)} counterexamples up to 729")


def main():
    """Main demonstration function"""
    print("\n" + "="*60)
    print("  WALKTHROUGH 5: FREE SUBGROUPS AND APERY NUMBERS")
    print("="*60)

    free_table()
    free27_variants()
    apery()

    print("\n✅ Demo complete! See tools/psicong_tool.py for the command line.\n")


if __name__ == "__main__":
    main()
