#!/usr/bin/env python3
"""
Walkthrough 2: Solving a Functional Equation modulo 27
======================================================

This script follows the Catalan numbers from zC^2 - C + 1 = 0 to a
polynomial in Psi(-z) that reproduces C_n modulo 27.
You'll learn:
- What the mod-3 shape conditions on the equation look like
- How the base solution is lifted one power of 3 at a time
- Why some equations have no unique solution modulo 3^e

Run with: python3 walkthrough/02_solving_equations.py

EXPERIMENT IDEAS:
1. Swap in catalog("delannoy") or catalog("hex_tree")
2. Solve free_subgroups,m=4 and compare with m=1
3. Set PSICONG_CHECK_DEGREE=2187 and time the check
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from psicong.errors import NonUnique
from psicong.psi_core import PsiContext, psipoly_to_series
from psicong.sequences import (
    apery_shifted_equation, catalan_squared_equation, catalog, oracle_terms, printed_fixture,
)
from psicong.solver import base_solution, solve_mod3k, unique_series_solution, validate_equation

CHECK = 300


def print_section(title):
    """Pretty print section headers"""
    print(f"\n{'='*60}")
    print(f"  {title}")
    print('='*60)


def show_shape():
    print_section("Step 1: Shape of the Equation modulo 3")
    eqn = catalog("catalan")
    consts = validate_equation(eqn)
    print(f"\nEquation: {eqn.name}, terms {eqn.terms}")
    print(f"Structure constants (e1, e2, f1, f2): {consts.as_tuple()}")
    print(f"Sign of c2: {consts.sign:+d}, square factor W: {consts.root}")
    return eqn, consts


def show_base(eqn, consts):
    print_section("Step 2: The Solution modulo 3")
    ctx = PsiContext(eqn.epsilon, eqn.gamma, 1, 3)
    for sign in (1, -1):
        print(f"\nbranch {sign:+d}: {base_solution(eqn, ctx, consts, sign)!r}")


def show_lift(eqn):
    print_section("Step 3: Lifting to 27")
    report = solve_mod3k(eqn, 1, check_degree=CHECK)
    rep = report.representation
    print(f"\nKept branch {report.branch:+d}")
    print(f"\n{rep!r}")
    got = psipoly_to_series(rep, CHECK)
    oracle = oracle_terms("catalan", CHECK + 1, 3)
    printed = psipoly_to_series(printed_fixture("catalan", 3), CHECK)
    print(f"\nFirst terms:  {got.terms(10)}")
    print(f"Catalan % 27: {oracle.terms(10)}")
    print(f"\n{'✓' if got.agrees(oracle) else '✗'} agrees with the oracle to z^{CHECK}")
    print(f"{'✓' if got.agrees(printed) else '✗'} agrees with the printed representation")


def show_non_unique():
    print_section("Step 4: When the Series Is Not Unique")
    for eqn, e in ((apery_shifted_equation(), 1), (catalan_squared_equation(), 1),
                   (catalan_squared_equation(), 2)):
        try:
            s = unique_series_solution(eqn, e, 12)
            print(f"✓ {eqn.name} mod {3 ** e}: unique, {s.terms(8)}")
        except NonUnique as exc:
            print(f"✗ {eqn.name} mod {3 ** e}: {exc}")


def main():
    """Main demonstration function"""
    print("\n" + "="*60)
    print("  WALKTHROUGH 2: SOLVING FUNCTIONAL EQUATIONS")
    print("="*60)

    eqn, consts = show_shape()
    show_base(eqn, consts)
    show_lift(eqn)
    show_non_unique()

    print("\n✅ Demo complete! Continue to 03_eulerian_numbers.py\n")


if __name__ == "__main__":
    main()
