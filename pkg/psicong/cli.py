#!/usr/bin/env python3
"""
psicong Command Line
====================

Derive, check and query Psi-polynomial representations of generating
functions modulo 3, 9 and 27.

You'll learn:
- Turning a functional equation into a finite polynomial in Psi
- Checking a representation against brute-force oracles
- Reading coefficients off the base-3 digits of huge n

Run with: python3 -m psicong.cli --help

EXPERIMENT IDEAS:
1. Derive the Catalan numbers modulo 27 and compare with the printed fixture
2. Ask for [z^n] Psi^3 modulo 9 with a 40-digit n
3. Scan the Apery conjectures further than 3^8
"""

import argparse
import json
import logging
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Optional

from tqdm import tqdm

from . import digit_rules
from .carry import psi_power_coeff_carry
from .config import SUPPORTED_MODULI, load_settings, modulus_exponent
from .errors import NoFixture, SolverError, Untabulated, UnsupportedId
from .eulerian import derive_eulerian
from .psi_core import check_minpoly, minpoly_series, minpoly_table, psipoly_to_series
from .sequences import (
    SequenceId, all_ids, apery_recurrence_terms, catalog, fixture_moduli,
    oracle_terms, printed_fixture, representation_from_doc,
)
from .solver import solve_mod3k

log = logging.getLogger(__name__)

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_SOLVER = 0, 1, 2, 3

# coefficient queries without a digit rule go through the series
MAX_SERIES_N = 20000


def print_section(title):
    """Pretty print section headers"""
    print(f"\n{'='*60}")
    print(f"  {title}")
    print('='*60)


def _alpha_for(e, alpha):
    """Smallest usable alpha with 3^alpha >= e, unless one was given"""
    if alpha is not None:
        if 3 ** alpha < e:
            raise ValueError(f"--alpha {alpha} only reaches modulus 3^{3 ** alpha}")
        return alpha
    return 1


def derive_representation(sid, e, alpha=None):
    """PsiPoly for sid modulo 3^e, through the solver or the Eulerian pipeline"""
    alpha = _alpha_for(e, alpha)
    if sid.kind == "eulerian":
        return derive_eulerian(sid.name.split("_")[1], e, alpha)
    if sid.kind == "apery":
        raise UnsupportedId(f"{sid} has no Psi representation; use apery-scan")
    report = solve_mod3k(catalog(sid), alpha)
    for note in report.notes:
        log.info("%s: %s", sid, note)
    return report.representation.reduce(e)


@dataclass
class VerifyRecord:
    """Outcome of checking one sequence at one modulus"""
    sequence: str
    modulus: int
    terms: int
    oracle_ok: bool
    fixture_ok: Optional[bool] = None
    first_mismatch: Optional[int] = None
    note: str = ""
    fixture_diffs: list = field(default_factory=list)

    @property
    def ok(self):
        return self.oracle_ok and self.fixture_ok is not False


def coeff_diffs(rep, printed):
    """Where two Psi-polynomials differ coefficient by coefficient (empty when equal)"""
    if rep.coeff_equal(printed):
        return []
    if rep.ctx != printed.ctx:
        return [f"context {rep.ctx} differs from the printed {printed.ctx}"]
    return [f"Psi^{i}: derived {a!r}, printed {b!r}"
            for i, (a, b) in enumerate(zip(rep.coeffs, printed.coeffs)) if a != b]


def verify_one(sid, e, terms, alpha=None, fixture_check=False, representation=None):
    """Compare a representation's series with the oracle, and its coefficients with the printed fixture"""
    rep = representation if representation is not None else derive_representation(sid, e, alpha)
    rep = rep.reduce(e) if rep.ctx.e > e else rep
    N = terms - 1
    got = psipoly_to_series(rep, N)
    want = oracle_terms(sid, terms, e)
    bad = got.first_mismatch(want, N)
    record = VerifyRecord(str(sid), 3 ** e, terms, bad is None, first_mismatch=bad)
    if fixture_check:
        try:
            printed = printed_fixture(sid, e)
        except NoFixture as exc:
            record.note = str(exc)
        else:
            record.fixture_diffs = coeff_diffs(rep, printed)
            record.fixture_ok = not record.fixture_diffs
            fbad = psipoly_to_series(printed, N).first_mismatch(want, N)
            if fbad is not None:
                record.note = f"printed representation differs from the oracle at z^{fbad}"
    log.info("verify %s mod %d: oracle %s fixture %s", sid, 3 ** e, record.oracle_ok, record.fixture_ok)
    return record


# --- commands -----------------------------------------------------------------------

def _sid(text):
    try:
        return SequenceId.parse(text)
    except UnsupportedId as exc:
        raise argparse.ArgumentTypeError(str(exc.args[0])) from None


def _modulus(text):
    try:
        return modulus_exponent(int(text))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def cmd_derive(args):
    rep = derive_representation(args.sequence, args.mod, args.alpha)
    if args.json:
        print(json.dumps({"sequence": str(args.sequence), "modulus": 3 ** args.mod,
                          "representation": rep.to_json()}, indent=2))
        return EXIT_OK
    print_section(f"{args.sequence} modulo {3 ** args.mod}")
    print(f"\n{rep!r}")
    print(f"\n✓ Derived with {sum(not c.is_zero() for c in rep.coeffs)} non-zero Psi powers")
    return EXIT_OK


def _load_representation(path, e, sid):
    with open(path) as fh:
        doc = json.load(fh)
    doc = doc.get("representation", doc)
    return representation_from_doc(doc, e, sid.m)


def cmd_verify(args):
    if args.sequence == "all":
        sids = [sid for sid in all_ids() if sid.kind != "apery"]
    else:
        sids = [SequenceId.parse(args.sequence)]
    if args.representation and len(sids) != 1:
        raise UnsupportedId("--representation needs a single --sequence")
    rep = _load_representation(args.representation, args.mod, sids[0]) if args.representation else None

    def job(sid):
        return verify_one(sid, args.mod, args.terms, args.alpha, args.fixture_check, rep)

    with ThreadPoolExecutor(max_workers=args.jobs) as pool:
        # map keeps the input order whatever finishes first
        records = list(tqdm(pool.map(job, sids), total=len(sids), desc="verify",
                            disable=args.quiet or args.json))

    failed = [r for r in records if not r.ok]
    if args.json:
        print(json.dumps([asdict(r) for r in records], indent=2))
        return EXIT_MISMATCH if failed else EXIT_OK

    print_section(f"Verification modulo {3 ** args.mod}, {args.terms} terms")
    print(f"\n{'Sequence':<28} {'Oracle':<8} {'Fixture':<9} {'First bad'}")
    print("-"*60)
    for r in records:
        fixture = {True: "✓", False: "✗", None: "-"}[r.fixture_ok]
        bad = "" if r.first_mismatch is None else str(r.first_mismatch)
        print(f"{r.sequence:<28} {'✓' if r.oracle_ok else '✗':<8} {fixture:<9} {bad}")
        if r.note:
            print(f"  ⚠️  {r.note}")
        for diff in r.fixture_diffs:
            print(f"  ✗ {diff}")
    if failed:
        print(f"\n✗ {len(failed)} of {len(records)} checks failed")
        return EXIT_MISMATCH
    print(f"\n✓ All {len(records)} checks passed")
    return EXIT_OK


def sequence_coeff(sid, e, n):
    """[z^n] of a catalog sequence modulo 3^e and the method that produced it"""
    if n < 0:
        raise ValueError("n must be non-negative")
    if sid.name == "free_subgroups" and sid.m == 1 and e <= 2 and n >= 1:
        return int(digit_rules.free_class(n, e)), "digit rule"
    if n > MAX_SERIES_N:
        raise Untabulated(f"{sid} has no digit rule modulo {3 ** e}; series evaluation "
                          f"is offered for n <= {MAX_SERIES_N}")
    if sid.kind == "apery":
        return apery_recurrence_terms(sid.name.split("_")[1], n + 1)[n] % 3 ** e, "recurrence"
    rep = derive_representation(sid, e)
    return psipoly_to_series(rep, n)[n], "series"


def cmd_coeff(args):
    value, method = sequence_coeff(args.sequence, args.mod, args.n)
    if args.json:
        print(json.dumps({"sequence": str(args.sequence), "n": str(args.n),
                          "modulus": 3 ** args.mod, "value": value, "method": method}))
    else:
        print(f"[z^{args.n}] {args.sequence} = {value} (mod {3 ** args.mod})  [{method}]")
    return EXIT_OK


def psi_coeff(power, e, n):
    """[z^n] Psi^power modulo 3^e, with the name of the evaluator that answered"""
    try:
        return digit_rules.psi_power_coeff(power, e, n), digit_rules.evaluator_name(power, e)
    except Untabulated:
        log.info("no digit rule for Psi^%d mod 3^%d, using the carry automaton", power, e)
        return psi_power_coeff_carry(power, e, n), "carry automaton (untabulated)"


def cmd_psi_coeff(args):
    if args.audit:
        findings = digit_rules.printed_table_findings(args.power, args.mod, args.audit,
                                                      quiet=args.quiet or args.json)
        if args.json:
            print(json.dumps([asdict(f) for f in findings], indent=2))
            return EXIT_OK
        print_section(f"Printed Psi^{args.power} table modulo {3 ** args.mod}, n < {args.audit}")
        for f in findings[:20]:
            print(f"  n={f.n:<8} printed {f.expected:<3} exact {f.actual}")
        if len(findings) > 20:
            print(f"  ... and {len(findings) - 20} more")
        print(f"\n{'⚠️ ' if findings else '✓'} {len(findings)} disagreements")
        return EXIT_OK
    if args.n is None:
        raise UnsupportedId("psi-coeff needs --n (or --audit)")
    value, evaluator = psi_coeff(args.power, args.mod, args.n)
    if args.json:
        print(json.dumps({"power": args.power, "n": str(args.n), "modulus": 3 ** args.mod,
                          "value": int(value), "evaluator": evaluator}))
    else:
        print(f"[z^{args.n}] Psi^{args.power} = {int(value)} (mod {3 ** args.mod})  [{evaluator}]")
    return EXIT_OK


def cmd_classify_free(args):
    if args.compare_variants:
        report = digit_rules.compare_free27_variants(args.compare_variants, quiet=args.quiet or args.json)
        if args.json:
            print(json.dumps({k: [asdict(f) for f in v] for k, v in report.items()}, indent=2))
            return EXIT_OK
        print_section(f"f_lambda = 1 (mod 27), lambda <= {args.compare_variants}")
        for variant, found in report.items():
            mark = "✓" if not found else "✗"
            print(f"  {mark} {variant:<10} {len(found)} mismatches"
                  + (f", first at lambda={found[0].n}" if found else ""))
        return EXIT_OK
    if args.n is None:
        raise UnsupportedId("classify-free needs --n (or --compare-variants)")
    if args.mod == 3:
        hit = digit_rules.free27_is_one(args.n, args.variant)
        result = {"lambda": str(args.n), "modulus": 27, "is_one": hit}
        text = f"f_{args.n} {'=' if hit else '!='} 1 (mod 27)"
    else:
        value = int(digit_rules.free_class(args.n, args.mod))
        result = {"lambda": str(args.n), "modulus": 3 ** args.mod, "value": value}
        text = f"f_{args.n} = {value} (mod {3 ** args.mod})"
    print(json.dumps(result) if args.json else text)
    return EXIT_OK


def cmd_minpoly(args):
    rows = []
    for fix in tqdm(minpoly_table(), desc="minpoly", disable=args.quiet or args.json):
        rows.append((fix.name, fix.modulus, fix.degree, check_minpoly(fix, args.degree)))
    # A0 annihilates Psi modulo 3 only
    control = minpoly_series(minpoly_table()[0], args.degree, e=2).is_zero()
    failed = [r for r in rows if not r[3]] or control
    if args.json:
        print(json.dumps({"rows": [dict(zip(("name", "modulus", "degree", "ok"), r)) for r in rows],
                          "a0_mod_9_vanishes": control}, indent=2))
        return EXIT_MISMATCH if failed else EXIT_OK
    print_section(f"Minimal polynomials of Psi, checked to z^{args.degree}")
    print(f"\n{'Polynomial':<14} {'Modulus':<10} {'Degree':<8} {'Vanishes'}")
    print("-"*60)
    for name, mod, deg, ok in rows:
        print(f"{name:<14} {mod:<10} {deg:<8} {'✓' if ok else '✗'}")
    print(f"\n{'✗' if control else '✓'} A0 modulo 9 {'vanishes (unexpected)' if control else 'does not vanish'}")
    return EXIT_MISMATCH if failed else EXIT_OK


def cmd_apery_scan(args):
    kinds = ["zeta2", "zeta3"] if args.sequence == "all" else [args.sequence.replace("apery_", "")]
    out = {}
    for kind in kinds:
        if kind not in ("zeta2", "zeta3"):
            raise UnsupportedId(f"unknown Apery sequence {args.sequence!r}")
        out[kind] = digit_rules.apery_scan(kind, args.max_n, quiet=args.quiet or args.json)
    if args.json:
        print(json.dumps({k: [asdict(f) for f in v] for k, v in out.items()}, indent=2))
        return EXIT_OK
    print_section(f"Apery numbers modulo 9, n <= {args.max_n}")
    for kind, found in out.items():
        if found:
            print(f"  ⚠️  {kind}: {len(found)} counterexamples, first n={found[0].n} "
                  f"(predicted {found[0].expected}, actual {found[0].actual})")
        else:
            print(f"  ✓ {kind}: conjectured classes hold")
    return EXIT_OK


def cmd_list(args):
    rows = []
    for sid in all_ids():
        rows.append({"sequence": str(sid), "kind": sid.kind, "fixtures": fixture_moduli(sid)})
    if args.json:
        print(json.dumps(rows, indent=2))
        return EXIT_OK
    print_section("Sequences")
    print(f"\n{'Sequence':<28} {'Kind':<11} {'Printed moduli'}")
    print("-"*60)
    for r in rows:
        print(f"{r['sequence']:<28} {r['kind']:<11} {', '.join(map(str, r['fixtures'])) or '-'}")
    print("\nDigit rules: Psi^1, Psi^3, Psi^5 (mod 3/9/27), free subgroups (mod 3/9, class 1 mod 27)")
    return EXIT_OK


def show_examples():
    """Show usage examples"""
    print_section("Usage Examples")
    print("""
1. Derive the Catalan numbers modulo 27:
   python3 -m psicong.cli derive --sequence catalan --alpha 1

2. Same, as JSON:
   python3 -m psicong.cli derive --sequence catalan --mod 27 --json > catalan.json

3. Check every sequence against its oracle modulo 27:
   python3 -m psicong.cli verify --sequence all --mod 27 --terms 729

4. Re-check a saved representation:
   python3 -m psicong.cli verify --sequence catalan --mod 27 --representation catalan.json

5. Compare with the printed fixture as well:
   python3 -m psicong.cli verify --sequence motzkin --mod 9 --fixture-check

6. A coefficient of Psi^3 for a huge n:
   python3 -m psicong.cli psi-coeff --power 3 --mod 9 --n 1000000000000000000000

7. Free subgroup numbers:
   python3 -m psicong.cli classify-free --n 9 --mod 27

8. Minimal polynomials:
   python3 -m psicong.cli minpoly --degree 2000

9. Apery conjectures:
   python3 -m psicong.cli apery-scan --sequence all --max-n 6561
    """)


def build_parser():
    moduli = "|".join(str(m) for m in sorted(SUPPORTED_MODULI))
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--json', action='store_true', help='Machine-readable output')
    common.add_argument('-v', '--verbose', action='count', default=0,
                        help='More logging (-vv for debug)')
    common.add_argument('-q', '--quiet', action='store_true', help='No progress bars')

    parser = argparse.ArgumentParser(
        prog="psicong",
        description="psicong - congruences of sequences modulo powers of 3 via Psi",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument('--examples', action='store_true', help='Show usage examples')
    sub = parser.add_subparsers(dest='command')

    p = sub.add_parser('derive', parents=[common], help='Solve for a Psi representation')
    p.add_argument('--sequence', type=_sid, required=True, help='Sequence id, e.g. catalan or free_subgroups,m=2')
    p.add_argument('--alpha', type=int, default=None, help='Reduction level (modulus up to 3^(3^alpha))')
    p.add_argument('--mod', type=_modulus, default=3, help=f'Modulus {moduli} (default 27)')
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser('verify', parents=[common], help='Check representations against oracles')
    p.add_argument('--sequence', default='all', help='Sequence id or "all"')
    p.add_argument('--alpha', type=int, default=None)
    p.add_argument('--mod', type=_modulus, default=3, help=f'Modulus {moduli} (default 27)')
    p.add_argument('--terms', type=int, default=3 ** 6, help='Number of terms (default 729)')
    p.add_argument('--fixture-check', action='store_true', help='Also compare coefficients with the printed representation')
    p.add_argument('--representation', help='PsiPoly JSON file (derive --json output) to check instead')
    p.add_argument('--jobs', type=int, default=1, help='Worker threads')
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser('coeff', parents=[common], help='One coefficient of a catalog sequence')
    p.add_argument('--sequence', type=_sid, required=True)
    p.add_argument('--mod', type=_modulus, default=3)
    p.add_argument('--n', type=int, required=True)
    p.set_defaults(func=cmd_coeff)

    p = sub.add_parser('psi-coeff', parents=[common], help='[z^n] Psi^power from the digits of n')
    p.add_argument('--power', type=int, required=True, help='Digit rules for 1, 3, 5; others use the carry automaton')
    p.add_argument('--mod', type=_modulus, default=2)
    p.add_argument('--n', type=int)
    p.add_argument('--audit', type=int, metavar='LIMIT',
                   help='Compare the printed case list with the exact values for n < LIMIT')
    p.set_defaults(func=cmd_psi_coeff)

    p = sub.add_parser('classify-free', parents=[common], help='Class of f_lambda modulo 3, 9 or 27')
    p.add_argument('--n', type=int, help='lambda')
    p.add_argument('--mod', type=_modulus, default=2)
    p.add_argument('--variant', choices=['printed', 'runs_of_2'], default='runs_of_2',
                   help='Clause list modulo 27: corrected (runs_of_2) or as printed')
    p.add_argument('--compare-variants', type=int, metavar='LIMIT',
                   help='Test both readings against the recurrence up to LIMIT')
    p.set_defaults(func=cmd_classify_free)

    p = sub.add_parser('minpoly', parents=[common], help='Check the minimal polynomial table')
    p.add_argument('--degree', type=int, default=2000)
    p.set_defaults(func=cmd_minpoly)

    p = sub.add_parser('apery-scan', parents=[common], help='Test the Apery digit conjectures')
    p.add_argument('--sequence', default='all', help='apery_zeta2, apery_zeta3 or all')
    p.add_argument('--max-n', type=int, default=3 ** 8)
    p.set_defaults(func=cmd_apery_scan)

    p = sub.add_parser('list', parents=[common], help='List the catalog')
    p.set_defaults(func=cmd_list)
    return parser


def _configure_logging(verbose):
    settings = load_settings()
    if verbose:
        level = logging.DEBUG if verbose > 1 else logging.INFO
    else:
        level = getattr(logging, settings.log_level, logging.WARNING)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")


def run(argv=None):
    """Parse argv, dispatch, and return the exit code"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE

    if args.examples:
        show_examples()
        return EXIT_OK
    if args.command is None:
        print("\n" + "="*60)
        print("  PSICONG")
        print("="*60)
        print("\nCongruences of combinatorial sequences modulo 3, 9 and 27.\n")
        parser.print_help()
        print("\nRun with --examples to see usage examples")
        return EXIT_OK

    _configure_logging(args.verbose)
    try:
        return args.func(args)
    except (UnsupportedId, NoFixture, Untabulated, ValueError) as exc:
        # KeyError subclasses quote their message
        print(f"✗ {exc.args[0] if exc.args else exc}", file=sys.stderr)
        return EXIT_USAGE
    except SolverError as exc:
        print(f"✗ solver: {exc}", file=sys.stderr)
        return EXIT_SOLVER


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
