#!/usr/bin/env python3
"""
Psicong Tool
============

Command-line front end for the psicong package, runnable from a checkout.
You'll learn:
- Which questions the library answers and how to ask them
- How to chain derive and verify through a saved JSON file

Run with: python3 tools/psicong_tool.py <command> [options]

EXPERIMENT IDEAS:
1. Derive every quadratic sequence modulo 27 and verify with --jobs 4
2. Audit the printed Psi^5 list with psi-coeff --audit 6561
3. Compare the free27 readings up to 5000
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from psicong.cli import print_section, run


def overview():
    print("\n" + "="*60)
    print("  PSICONG TOOL")
    print("="*60)

    print_section("What You Can Do")
    print("""
With psicong you can:
✓ Derive a polynomial in Psi for a generating function modulo 27
✓ Verify representations against brute-force oracles
✓ Read [z^n] Psi^3 and Psi^5 off the digits of a huge n
✓ Classify free subgroup numbers modulo 3, 9 and 27
✓ Check the minimal polynomials of Psi
✓ Scan the Apery digit conjectures for counterexamples
    """)

    print_section("Quick Start")
    print("""
1. See the catalog:
   python3 tools/psicong_tool.py list

2. Derive and verify:
   python3 tools/psicong_tool.py derive --sequence motzkin --json > motzkin.json
   python3 tools/psicong_tool.py verify --sequence motzkin --representation motzkin.json

3. More examples:
   python3 tools/psicong_tool.py --examples
    """)


def main():
    if len(sys.argv) == 1:
        overview()
        return 0
    return run(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())
