"""Command-line interface: verify, analyze, derive, scan, abundancy, solitary.

Exit codes: 0 for any successful determination (including Invalid
classifications, conjecture counterexamples, and odd-perfect signals,
which succeed loudly), 1 for invalid input, 2 for an internal
theorem-violation (an arithmetic bug, never a property of the input).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from spoofnum import serialize
from spoofnum.analysis import (
    Applicability,
    ChainId,
    ChainReport,
    analyze_pair,
    assert_theorems,
)
from spoofnum.arith import (
    DomainError,
    abundancy,
    deficiency,
    exact_sqrt,
    greening_test,
    sigma_of,
)
from spoofnum.spoof import (
    Classification,
    InternalInconsistencyError,
    VerificationReport,
    verify_spoof,
)
from spoofnum.search import (
    CheckpointMismatchError,
    SearchCheckpoint,
    SearchConfig,
    SearchHit,
    direct_scan,
    structured_scan,
)

_CHECK_LABELS = {
    "k_is_odd_square": "k is an odd square",
    "m_congruent_1_mod_4": "m = 1 (mod 4)",
    "m_divides_sigma_k": "m divides sigma(k)",
    "m_plus_1_divides_2k": "m+1 divides 2k",
    "sigma_k_over_m_equals_deficiency": "sigma(k)/m equals 2k - sigma(k)",
}

_SIGNAL_BANNER = """\
!!! ======================================================== !!!
!!!  ODD PERFECT NUMBER SIGNAL: the cofactor m is PRIME, so  !!!
!!!  n = k*m satisfies sigma(n) = 2n. Re-check this input    !!!
!!!  independently before telling anyone.                    !!!
!!! ======================================================== !!!"""

_COUNTEREXAMPLE_BANNER = """\
*** CONJECTURE COUNTEREXAMPLE: one of the open predictions fails on
*** this pair. This is a reportable finding, not an error."""


class _Parser(argparse.ArgumentParser):
    """argparse variant that exits 1 (invalid input) instead of 2."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _integer(text: str) -> int:
    try:
        return int(text, 10)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a decimal integer: {text!r}")


def _ratio_text(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator} (~{serialize.approx_decimal(value)}, approximate)"


def _plus_one(decimal_text: str) -> str:
    whole, frac = decimal_text.split(".")
    return f"{int(whole) + 1}.{frac}"


def build_parser() -> _Parser:
    parser = _Parser(prog="spoofnum", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="verify a candidate pair (k, m)")
    verify.add_argument("--k", type=_integer, required=True)
    verify.add_argument("--m", type=_integer, required=True)
    verify.add_argument("--require-coprime", action="store_true")
    verify.add_argument("--require-m-not-dividing-k", action="store_true")
    verify.add_argument("--json", action="store_true")
    verify.set_defaults(handler=_cmd_verify)

    analyze = sub.add_parser("analyze", help="run every inequality chain on a verified pair")
    analyze.add_argument("--k", type=_integer, required=True)
    analyze.add_argument("--m", type=_integer, required=True)
    analyze.add_argument("--json", action="store_true")
    analyze.set_defaults(handler=_cmd_analyze)

    derive = sub.add_parser("derive", help="derive the forced cofactor m from an odd square k")
    derive.add_argument("--k", type=_integer, required=True)
    derive.add_argument("--json", action="store_true")
    derive.set_defaults(handler=_cmd_derive)

    scan = sub.add_parser("scan", help="exhaustive scan over odd roots s (k = s^2)")
    scan.add_argument("--s-min", type=_integer, required=True)
    scan.add_argument("--s-max", type=_integer, required=True)
    scan.add_argument("--jobs", type=_integer, default=1)
    scan.add_argument("--checkpoint", metavar="PATH")
    scan.add_argument("--require-coprime", action="store_true")
    scan.add_argument("--require-m-not-dividing-k", action="store_true")
    scan.add_argument("--json", action="store_true")
    scan.set_defaults(handler=_cmd_scan)

    structured = sub.add_parser(
        "scan-structured",
        help="enumerate squares by prime support with a distinct-prime bound",
    )
    structured.add_argument("--max-primes", type=_integer, required=True)
    structured.add_argument("--k-bound", type=_integer, required=True)
    structured.add_argument("--require-coprime", action="store_true")
    structured.add_argument("--require-m-not-dividing-k", action="store_true")
    structured.add_argument("--json", action="store_true")
    structured.set_defaults(handler=_cmd_scan_structured)

    abundancy_cmd = sub.add_parser("abundancy", help="exact abundancy index sigma(n)/n")
    abundancy_cmd.add_argument("n", type=_integer)
    abundancy_cmd.add_argument("--json", action="store_true")
    abundancy_cmd.set_defaults(handler=_cmd_abundancy)

    solitary = sub.add_parser("solitary", help="coprimality sufficiency test for solitude")
    solitary.add_argument("n", type=_integer)
    solitary.add_argument("--json", action="store_true")
    solitary.set_defaults(handler=_cmd_solitary)

    return parser


def _emit(doc: dict) -> None:
    print(json.dumps(doc, indent=2))


def _print_verification(report: VerificationReport) -> None:
    print(f"k = {report.k}")
    print(f"m = {report.m}")
    print(f"n = k*m = {report.n}")
    if report.sigma_k is not None:
        print(f"sigma(k) = {report.sigma_k}")
    print(f"defining equation sigma(k)*(m+1) = 2n: "
          f"{'PASS' if report.defining_equation else 'FAIL'}")
    print("structural checks:")
    for name, ok in report.structural_checks.items():
        print(f"  [{'PASS' if ok else 'FAIL'}] {_CHECK_LABELS[name]}")
    identity = report.gcd_identity
    print(f"gcd identity gcd(k, sigma(k)) = sigma(k)/m = 2k - sigma(k): "
          f"{'PASS' if identity.passes else 'FAIL'}")
    quotient = "-" if identity.sigma_k_over_m is None else identity.sigma_k_over_m
    print(f"  witness: {identity.gcd_k_sigma_k} | {quotient} | {identity.deficiency_k}")
    print(f"gcd(m, k) = {report.gcd_m_k}; m divides k: "
          f"{'yes' if report.m_divides_k else 'no'}")
    if report.require_coprime or report.require_m_not_dividing_k:
        print(f"filter flags passed: {'yes' if report.passes_filters else 'no'}")
    for problem in report.problems:
        print(f"problem: {problem}")
    print(f"classification: {report.classification.value}")
    if report.classification is Classification.ODD_PERFECT_SIGNAL:
        print(_SIGNAL_BANNER)


_CHAIN_NOTES = {
    ChainId.ROOT_INDEX_BOUNDS: lambda: (
        f"note: sqrt(9/5) = 3/sqrt(5) ~ {serialize.approx_sqrt_decimal(Fraction(9, 5))}"
        " (display only)"
    ),
    ChainId.ROOT_SUM_LOWER_BOUND: lambda: (
        "note: 1 + sqrt(9/5) ~ "
        f"{_plus_one(serialize.approx_sqrt_decimal(Fraction(9, 5)))} (display only)"
    ),
}


def _print_chain(chain: ChainReport) -> None:
    if chain.applicability is Applicability.VACUOUS:
        print(f"chain {chain.chain_id.value}: not applicable (hypothesis not met)")
        return
    print(f"chain {chain.chain_id.value}: {'PASS' if chain.overall else 'FAIL'}")
    note = _CHAIN_NOTES.get(chain.chain_id)
    if note:
        print(f"  {note()}")
    for link in chain.links:
        lhs = f"{link.lhs.numerator}/{link.lhs.denominator}"
        rhs = f"{link.rhs.numerator}/{link.rhs.denominator}"
        print(f"  [{'PASS' if link.holds else 'FAIL'}] {link.label}"
              f"  ({lhs} {link.relation} {rhs})")


def _print_bundle(bundle) -> None:
    print(f"I(n) = {_ratio_text(bundle.abundancy_n)}")
    print(f"sigma(sqrt(k)) = {bundle.sigma_sqrt_k}")
    quasi = bundle.quasi_primes
    print(f"quasi-Euler prime m = {quasi.quasi_euler_prime}; "
          f"largest quasi-prime factor = {quasi.largest_quasi_prime_factor}; "
          f"distinct quasi-primes = {quasi.distinct_quasi_prime_count} "
          f"(fully factored: {quasi.distinct_prime_count_full})")
    for chain in bundle.chains:
        _print_chain(chain)
    ineq = bundle.cross_inequation
    if ineq.applicability is Applicability.APPLIES:
        print(f"cross inequation m(m+1) != sqrt(k)*sigma(sqrt(k)): "
              f"{'PASS' if ineq.holds else 'FAIL'} "
              f"({ineq.lhs_product} vs {ineq.rhs_product})")
    else:
        print("cross inequation: not applicable (m shares a factor with sqrt(k))")
    order = bundle.root_order
    if order.applicability is Applicability.APPLIES:
        print("root ordering (coprime cofactors):")
        print(f"  m < sqrt(k): {order.p1_m_below_root}")
        print(f"  m+1 < sigma(sqrt(k)): {order.p2_m_plus_1_below_sigma_root}")
        print(f"  (m+1)/sqrt(k) < sigma(sqrt(k))/m: {order.p3_cross_ratio_less}")
        print(f"  (m+1)/sigma(sqrt(k)) < m/sqrt(k): {order.shifted_ratio_holds}")
        bic = "n/a (m above the root)" if order.full_biconditional is None \
            else order.full_biconditional
        print(f"  three-way biconditional under m < sqrt(k): {bic}")
    else:
        print("root ordering: not applicable (gcd(m, k) > 1)")
    if bundle.conjectures is not None:
        conj = bundle.conjectures
        print("conjecture checks:")
        print(f"  abundant (I(n) > 2): {conj.abundant}")
        if conj.sandwich_root_m_k is None:
            print("  sandwich sqrt(k) < m < k: skipped (gcd(m, k) > 1)")
            print("  sigma(sqrt(k)) < m: skipped (gcd(m, k) > 1)")
        else:
            print(f"  sandwich sqrt(k) < m < k: {conj.sandwich_root_m_k}")
            print(f"  sigma(sqrt(k)) < m: {conj.sigma_root_below_m}")
        if conj.violated():
            print(_COUNTEREXAMPLE_BANNER)


def _cmd_verify(args) -> int:
    report = verify_spoof(
        args.k,
        args.m,
        require_coprime=args.require_coprime,
        require_m_not_dividing_k=args.require_m_not_dividing_k,
    )
    if args.json:
        _emit(serialize.document(
            "verify",
            {
                "k": str(args.k),
                "m": str(args.m),
                "require_coprime": args.require_coprime,
                "require_m_not_dividing_k": args.require_m_not_dividing_k,
            },
            {"verification": serialize.verification_to_json(report)},
        ))
    else:
        _print_verification(report)
    return 0


def _cmd_analyze(args) -> int:
    report = verify_spoof(args.k, args.m)
    if report.pair is None:
        print("cannot analyze: the pair is not a spoof", file=sys.stderr)
        for problem in report.problems:
            print(f"  {problem}", file=sys.stderr)
        return 1
    bundle = analyze_pair(report.pair)
    assert_theorems(report.pair, bundle)
    if args.json:
        _emit(serialize.document(
            "analyze",
            {"k": str(args.k), "m": str(args.m)},
            {
                "verification": serialize.verification_to_json(report),
                "analysis": serialize.bundle_to_json(bundle),
            },
        ))
    else:
        _print_verification(report)
        _print_bundle(bundle)
    return 0


def _cmd_derive(args) -> int:
    k = args.k
    if k <= 1 or k % 2 == 0 or not _is_square(k):
        raise DomainError(f"derive needs an odd perfect square k > 1, got {k}")
    sigma_k = sigma_of(k)
    d_k = 2 * k - sigma_k
    m = None
    reason = None
    if d_k <= 0:
        reason = f"k is not deficient (2k - sigma(k) = {d_k})"
    elif sigma_k % d_k != 0:
        reason = f"deficiency {d_k} does not divide sigma(k) = {sigma_k}"
    elif sigma_k // d_k <= 1:
        reason = "derived cofactor would not exceed 1"
    else:
        m = sigma_k // d_k
    verification = verify_spoof(k, m) if m is not None else None
    if args.json:
        _emit(serialize.document(
            "derive",
            {"k": str(k)},
            {
                "sigma_k": str(sigma_k),
                "deficiency_k": str(d_k),
                "m": None if m is None else str(m),
                "reason": reason,
                "verification": (
                    None if verification is None
                    else serialize.verification_to_json(verification)
                ),
            },
        ))
    else:
        print(f"k = {k}")
        print(f"sigma(k) = {sigma_k}")
        print(f"D(k) = 2k - sigma(k) = {d_k}")
        if m is None:
            print(f"no admissible cofactor: {reason}")
        else:
            print(f"m = sigma(k)/D(k) = {m}")
            _print_verification(verification)
    return 0


def _hit_line(hit: SearchHit) -> str:
    return (f"HIT k={hit.pair.k} m={hit.pair.m} n={hit.pair.n} "
            f"classification={hit.report.classification.value}")


def _scan_results_json(hits, checkpoint) -> dict:
    return {
        "hits": [serialize.hit_to_json(hit) for hit in hits],
        "hit_count": str(len(hits)),
        "covered_ranges": [[str(lo), str(hi)] for lo, hi in checkpoint.covered_ranges],
        "config_fingerprint": checkpoint.config_fingerprint,
    }


def _post_scan_notices(hits) -> None:
    if any(h.report.classification is Classification.ODD_PERFECT_SIGNAL for h in hits):
        print(_SIGNAL_BANNER)
    if any(h.conjectures is not None and h.conjectures.violated() for h in hits):
        print(_COUNTEREXAMPLE_BANNER)


def _cmd_scan(args) -> int:
    config = SearchConfig.direct(
        args.s_min,
        args.s_max,
        worker_count=args.jobs,
        require_coprime=args.require_coprime,
        require_m_not_dividing_k=args.require_m_not_dividing_k,
    )
    checkpoint = None
    if args.checkpoint and os.path.exists(args.checkpoint):
        checkpoint = SearchCheckpoint.load(args.checkpoint)
        print(f"resuming from checkpoint {args.checkpoint}", file=sys.stderr)

    def on_progress(chunk, state):
        if args.checkpoint:
            state.save(args.checkpoint)
        print(f"scanned s in [{chunk[0]}, {chunk[1]}]", file=sys.stderr)

    def on_hit(hit):
        if not args.json:
            print(_hit_line(hit), flush=True)

    hits, final = direct_scan(
        config, checkpoint, on_hit=on_hit, on_progress=on_progress
    )
    if args.checkpoint:
        final.save(args.checkpoint)
    if args.json:
        _emit(serialize.document(
            "scan",
            {
                "s_min": str(args.s_min),
                "s_max": str(args.s_max),
                "jobs": str(args.jobs),
                "require_coprime": args.require_coprime,
                "require_m_not_dividing_k": args.require_m_not_dividing_k,
            },
            _scan_results_json(hits, final),
        ))
    else:
        covered = ", ".join(f"[{lo}, {hi}]" for lo, hi in final.covered_ranges)
        print(f"new hits: {len(hits)}; covered s-ranges: {covered}")
        _post_scan_notices(hits)
    return 0


def _cmd_scan_structured(args) -> int:
    config = SearchConfig.structured(
        args.max_primes,
        args.k_bound,
        require_coprime=args.require_coprime,
        require_m_not_dividing_k=args.require_m_not_dividing_k,
    )
    hits = structured_scan(config)
    if args.json:
        _emit(serialize.document(
            "scan-structured",
            {
                "max_primes": str(args.max_primes),
                "k_bound": str(args.k_bound),
                "require_coprime": args.require_coprime,
                "require_m_not_dividing_k": args.require_m_not_dividing_k,
            },
            {
                "hits": [serialize.hit_to_json(hit) for hit in hits],
                "hit_count": str(len(hits)),
            },
        ))
    else:
        for hit in hits:
            print(_hit_line(hit))
        print(f"hits: {len(hits)} (k <= {args.k_bound}, "
              f"at most {args.max_primes} distinct primes in k)")
        _post_scan_notices(hits)
    return 0


def _cmd_abundancy(args) -> int:
    n = args.n
    index = abundancy(n)  # raises DomainError for n < 1
    sigma_n = sigma_of(n)
    d_n = deficiency(n)
    if d_n > 0:
        shape = "almost perfect" if d_n == 1 else "deficient"
    elif d_n == 0:
        shape = "perfect"
    else:
        shape = "abundant"
    if args.json:
        _emit(serialize.document(
            "abundancy",
            {"n": str(n)},
            {
                "sigma": str(sigma_n),
                "index": serialize.ratio_to_json(index),
                "deficiency": str(d_n),
                "shape": shape,
            },
        ))
    else:
        print(f"n = {n}")
        print(f"sigma(n) = {sigma_n}")
        print(f"I(n) = {_ratio_text(index)}")
        print(f"shape: {shape} (D(n) = {d_n})")
    return 0


def _cmd_solitary(args) -> int:
    n = args.n
    verdict = greening_test(n)
    if args.json:
        _emit(serialize.document(
            "solitary",
            {"n": str(n)},
            {"greening": serialize.solitary_to_json(verdict)},
        ))
    else:
        print(f"n = {n}")
        print(f"gcd(n, sigma(n)) = {verdict.witness_gcd}")
        if verdict.provably_solitary:
            print("verdict: provably solitary (gcd is 1)")
        else:
            print("verdict: inconclusive (the gcd test is sufficient, not necessary)")
    return 0


def _is_square(n: int) -> bool:
    return exact_sqrt(n) is not None


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except (DomainError, CheckpointMismatchError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except InternalInconsistencyError as exc:
        print("INTERNAL INCONSISTENCY: a proved statement failed; "
              "this is an implementation bug, not a property of the input.",
              file=sys.stderr)
        print(f"detail: {exc}", file=sys.stderr)
        print(f"dump: {exc.dump}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
