#!/usr/bin/env python3
"""
Walkthrough 3: Central Eulerian Numbers modulo 9
================================================

The central Eulerian numbers satisfy no quadratic equation, but a
family of kernel series does, one for each class of the exponent.
You'll learn:
- How the kernel polynomials p_s come out of a finite difference
- Solving one equation per residue class and sectioning the solutions
- Patching the few terms below the floor

Run with: python3 walkthrough/03_eulerian_numbers.py

EXPERIMENT IDEAS:
1. Print euler_kernel("odd", s) for s up to 10
2. Run the mod-27 pipeline (beta=3) and count the sections
3. Compare the correction polynomial for both kinds
"""

import os
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

# the kernel solves only need a short branch check here
os.environ.setdefault("PSICONG_CHECK_DEGREE", "200")

from psicong.eulerian import KINDS, euler_kernel, eulerian_report
from psicong.psi_core import psipoly_to_series
from psicong.sequences import oracle_terms


def print_section(title):
    """Pretty print section headers"""
    print(f"\n{'='*60}")
    print(f"  {title}")
    print('='*60)


def show_kernels():
    print_section("Kernel Polynomials")
    for kind in KINDS:
        for s in range(1, 5):
            print(f"  {euler_kernel(kind, s)!r}")


def show_pipeline():
    N = 300
    for kind in KINDS:
        print_section(f"eulerian_{kind} modulo 9")
        report = eulerian_report(kind, 2)
        print(f"\nExponents used: {report.window}")
        print(f"Correction below the floor: {report.correction or 'none'}")
        got = psipoly_to_series(report.representation, N)
        want = oracle_terms("eulerian_" + kind, N + 1, 2)
        print(f"First terms: {got.terms(10)}")
        print(f"\n{'✓' if got.agrees(want) else '✗'} agrees with the oracle to z^{N}")


def main():
    """Main demonstration function"""
    print("\n" + "="*60)
    print("  WALKTHROUGH 3: CENTRAL EULERIAN NUMBERS")
    print("="*60)

    show_kernels()
    show_pipeline()

    print("\n✅ Demo complete! Continue to 04_digit_rules.py\n")


if __name__ == "__main__":
    main()
