"""JSON rendering of reports with lossless integers.

Every integer is serialized as a decimal string so no magnitude is ever
truncated by a 64-bit reader; exact rationals carry their reduced
numerator and denominator plus a 5-place decimal `approx` field that is
display-only, never an input to any comparison.  Each report type has a
matching parser so that from_json(to_json(report)) == report.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

from spoofnum.analysis import (
    AnalysisBundle,
    Applicability,
    ChainId,
    ChainLink,
    ChainReport,
    ConjectureReport,
    CrossInequation,
    OrderingCase,
    OrderingOutcome,
    RootOrderReport,
)
from spoofnum.arith import Factorization, SolitaryVerdict
from spoofnum.spoof import (
    Classification,
    GcdIdentityWitness,
    QuasiPrimeSummary,
    SpoofPair,
    VerificationReport,
)
from spoofnum.search import HitSummary, SearchCheckpoint, SearchHit

SCHEMA_VERSION = "1"
APPROX_PLACES = 5


def approx_decimal(value: Fraction, places: int = APPROX_PLACES) -> str:
    """Fixed-point decimal rendering (round half up), display-only."""
    sign = "-" if value < 0 else ""
    num, den = abs(value.numerator), value.denominator
    scaled = (num * 10**places + den // 2) // den
    digits = str(scaled).rjust(places + 1, "0")
    return f"{sign}{digits[:-places]}.{digits[-places:]}"


def approx_sqrt_decimal(value: Fraction, places: int = APPROX_PLACES) -> str:
    """Display-only decimal for sqrt(value) of a nonnegative rational."""
    num, den = value.numerator, value.denominator
    # one guard digit, rounded away after the integer square root
    scaled = (isqrt(num * 10 ** (2 * places + 2) // den) + 5) // 10
    digits = str(scaled).rjust(places + 1, "0")
    return f"{digits[:-places]}.{digits[-places:]}"


def ratio_to_json(value: Fraction) -> dict:
    return {
        "num": str(value.numerator),
        "den": str(value.denominator),
        "approx": approx_decimal(value),
    }


def ratio_from_json(doc: dict) -> Fraction:
    return Fraction(int(doc["num"]), int(doc["den"]))


def factorization_to_json(f: Factorization) -> list[list[str]]:
    return [[str(p), str(e)] for p, e in f]


def factorization_from_json(doc: list) -> Factorization:
    return Factorization(tuple((int(p), int(e)) for p, e in doc))


def pair_to_json(pair: SpoofPair) -> dict:
    return {
        "k": str(pair.k),
        "m": str(pair.m),
        "n": str(pair.n),
        "sigma_k": str(pair.sigma_k),
        "deficiency_k": str(pair.d_k),
        "sqrt_k": str(pair.sqrt_k),
        "k_factors": factorization_to_json(pair.k_factors),
        "m_factors": factorization_to_json(pair.m_factors),
    }


def pair_from_json(doc: dict) -> SpoofPair:
    return SpoofPair(
        k=int(doc["k"]),
        m=int(doc["m"]),
        n=int(doc["n"]),
        sigma_k=int(doc["sigma_k"]),
        d_k=int(doc["deficiency_k"]),
        sqrt_k=int(doc["sqrt_k"]),
        k_factors=factorization_from_json(doc["k_factors"]),
        m_factors=factorization_from_json(doc["m_factors"]),
    )


def verification_to_json(report: VerificationReport) -> dict:
    identity = report.gcd_identity
    return {
        "k": str(report.k),
        "m": str(report.m),
        "n": str(report.n),
        "classification": report.classification.value,
        "defining_equation": report.defining_equation,
        "structural_checks": dict(report.structural_checks),
        "gcd_identity": {
            "passes": identity.passes,
            "gcd_k_sigma_k": str(identity.gcd_k_sigma_k),
            "sigma_k_over_m": (
                None if identity.sigma_k_over_m is None else str(identity.sigma_k_over_m)
            ),
            "deficiency_k": str(identity.deficiency_k),
        },
        "gcd_m_k": str(report.gcd_m_k),
        "m_divides_k": report.m_divides_k,
        "filters": {
            "require_coprime": report.require_coprime,
            "require_m_not_dividing_k": report.require_m_not_dividing_k,
            "passed": report.passes_filters,
        },
        "sigma_k": None if report.sigma_k is None else str(report.sigma_k),
        "pair": None if report.pair is None else pair_to_json(report.pair),
        "problems": list(report.problems),
    }


def verification_from_json(doc: dict) -> VerificationReport:
    identity = doc["gcd_identity"]
    return VerificationReport(
        k=int(doc["k"]),
        m=int(doc["m"]),
        n=int(doc["n"]),
        classification=Classification(doc["classification"]),
        defining_equation=doc["defining_equation"],
        structural_checks=dict(doc["structural_checks"]),
        gcd_identity=GcdIdentityWitness(
            passes=identity["passes"],
            gcd_k_sigma_k=int(identity["gcd_k_sigma_k"]),
            sigma_k_over_m=(
                None
                if identity["sigma_k_over_m"] is None
                else int(identity["sigma_k_over_m"])
            ),
            deficiency_k=int(identity["deficiency_k"]),
        ),
        gcd_m_k=int(doc["gcd_m_k"]),
        m_divides_k=doc["m_divides_k"],
        require_coprime=doc["filters"]["require_coprime"],
        require_m_not_dividing_k=doc["filters"]["require_m_not_dividing_k"],
        passes_filters=doc["filters"]["passed"],
        sigma_k=None if doc["sigma_k"] is None else int(doc["sigma_k"]),
        pair=None if doc["pair"] is None else pair_from_json(doc["pair"]),
        problems=tuple(doc["problems"]),
    )


def chain_to_json(report: ChainReport) -> dict:
    return {
        "chain": report.chain_id.value,
        "applicability": report.applicability.value,
        "overall": report.overall,
        "links": [
            {
                "label": link.label,
                "lhs": ratio_to_json(link.lhs),
                "relation": link.relation,
                "rhs": ratio_to_json(link.rhs),
                "holds": link.holds,
            }
            for link in report.links
        ],
    }


def chain_from_json(doc: dict) -> ChainReport:
    return ChainReport(
        chain_id=ChainId(doc["chain"]),
        applicability=Applicability(doc["applicability"]),
        overall=doc["overall"],
        links=tuple(
            ChainLink(
                label=link["label"],
                lhs=ratio_from_json(link["lhs"]),
                relation=link["relation"],
                rhs=ratio_from_json(link["rhs"]),
                holds=link["holds"],
            )
            for link in doc["links"]
        ),
    )


def cross_inequation_to_json(report: CrossInequation) -> dict:
    return {
        "applicability": report.applicability.value,
        "lhs_product": None if report.lhs_product is None else str(report.lhs_product),
        "rhs_product": None if report.rhs_product is None else str(report.rhs_product),
        "holds": report.holds,
    }


def cross_inequation_from_json(doc: dict) -> CrossInequation:
    return CrossInequation(
        applicability=Applicability(doc["applicability"]),
        lhs_product=None if doc["lhs_product"] is None else int(doc["lhs_product"]),
        rhs_product=None if doc["rhs_product"] is None else int(doc["rhs_product"]),
        holds=doc["holds"],
    )


def ordering_to_json(outcome: OrderingOutcome) -> dict:
    return {
        "case": outcome.case.value,
        "biconditional_holds": outcome.biconditional_holds,
        "index_sum": ratio_to_json(outcome.index_sum),
        "cross_sum": ratio_to_json(outcome.cross_sum),
    }


def ordering_from_json(doc: dict) -> OrderingOutcome:
    return OrderingOutcome(
        case=OrderingCase(doc["case"]),
        biconditional_holds=doc["biconditional_holds"],
        index_sum=ratio_from_json(doc["index_sum"]),
        cross_sum=ratio_from_json(doc["cross_sum"]),
    )


def root_order_to_json(report: RootOrderReport) -> dict:
    return {
        "applicability": report.applicability.value,
        "p1_m_below_root": report.p1_m_below_root,
        "p2_m_plus_1_below_sigma_root": report.p2_m_plus_1_below_sigma_root,
        "p3_cross_ratio_less": report.p3_cross_ratio_less,
        "shifted_ratio_holds": report.shifted_ratio_holds,
        "implication_p1_to_p2": report.implication_p1_to_p2,
        "implication_not_p2_to_not_p1": report.implication_not_p2_to_not_p1,
        "full_biconditional": report.full_biconditional,
    }


def root_order_from_json(doc: dict) -> RootOrderReport:
    return RootOrderReport(
        applicability=Applicability(doc["applicability"]),
        p1_m_below_root=doc["p1_m_below_root"],
        p2_m_plus_1_below_sigma_root=doc["p2_m_plus_1_below_sigma_root"],
        p3_cross_ratio_less=doc["p3_cross_ratio_less"],
        shifted_ratio_holds=doc["shifted_ratio_holds"],
        implication_p1_to_p2=doc["implication_p1_to_p2"],
        implication_not_p2_to_not_p1=doc["implication_not_p2_to_not_p1"],
        full_biconditional=doc["full_biconditional"],
    )


def conjectures_to_json(report: ConjectureReport) -> dict:
    return {
        "abundant": report.abundant,
        "sandwich_root_m_k": report.sandwich_root_m_k,
        "sigma_root_below_m": report.sigma_root_below_m,
    }


def conjectures_from_json(doc: dict) -> ConjectureReport:
    return ConjectureReport(
        abundant=doc["abundant"],
        sandwich_root_m_k=doc["sandwich_root_m_k"],
        sigma_root_below_m=doc["sigma_root_below_m"],
    )


def quasi_primes_to_json(summary: QuasiPrimeSummary) -> dict:
    return {
        "quasi_euler_prime": str(summary.quasi_euler_prime),
        "largest_quasi_prime_factor": str(summary.largest_quasi_prime_factor),
        "distinct_quasi_prime_count": str(summary.distinct_quasi_prime_count),
        "distinct_prime_count_full": str(summary.distinct_prime_count_full),
    }


def quasi_primes_from_json(doc: dict) -> QuasiPrimeSummary:
    return QuasiPrimeSummary(
        quasi_euler_prime=int(doc["quasi_euler_prime"]),
        largest_quasi_prime_factor=int(doc["largest_quasi_prime_factor"]),
        distinct_quasi_prime_count=int(doc["distinct_quasi_prime_count"]),
        distinct_prime_count_full=int(doc["distinct_prime_count_full"]),
    )


def solitary_to_json(verdict: SolitaryVerdict) -> dict:
    return {
        "verdict": verdict.verdict,
        "witness_gcd": str(verdict.witness_gcd),
    }


def solitary_from_json(doc: dict) -> SolitaryVerdict:
    return SolitaryVerdict(
        provably_solitary=doc["verdict"] == "provably_solitary",
        witness_gcd=int(doc["witness_gcd"]),
    )


def bundle_to_json(bundle: AnalysisBundle) -> dict:
    return {
        "chains": [chain_to_json(chain) for chain in bundle.chains],
        "cross_inequation": cross_inequation_to_json(bundle.cross_inequation),
        "root_ordering": root_order_to_json(bundle.root_order),
        "conjectures": (
            None if bundle.conjectures is None else conjectures_to_json(bundle.conjectures)
        ),
        "abundancy_n": ratio_to_json(bundle.abundancy_n),
        "sigma_sqrt_k": str(bundle.sigma_sqrt_k),
        "quasi_primes": quasi_primes_to_json(bundle.quasi_primes),
    }


def bundle_from_json(doc: dict) -> AnalysisBundle:
    return AnalysisBundle(
        chains=tuple(chain_from_json(chain) for chain in doc["chains"]),
        cross_inequation=cross_inequation_from_json(doc["cross_inequation"]),
        root_order=root_order_from_json(doc["root_ordering"]),
        conjectures=(
            None if doc["conjectures"] is None else conjectures_from_json(doc["conjectures"])
        ),
        abundancy_n=ratio_from_json(doc["abundancy_n"]),
        sigma_sqrt_k=int(doc["sigma_sqrt_k"]),
        quasi_primes=quasi_primes_from_json(doc["quasi_primes"]),
    )


def hit_to_json(hit: SearchHit) -> dict:
    return {
        "pair": pair_to_json(hit.pair),
        "verification": verification_to_json(hit.report),
        "conjectures": (
            None if hit.conjectures is None else conjectures_to_json(hit.conjectures)
        ),
        "chains": [chain_to_json(chain) for chain in hit.chains],
        "analysis": bundle_to_json(hit.bundle),
    }


def hit_from_json(doc: dict) -> SearchHit:
    bundle = bundle_from_json(doc["analysis"])
    return SearchHit(
        pair=pair_from_json(doc["pair"]),
        report=verification_from_json(doc["verification"]),
        conjectures=(
            None if doc["conjectures"] is None else conjectures_from_json(doc["conjectures"])
        ),
        chains=tuple(chain_from_json(chain) for chain in doc["chains"]),
        bundle=bundle,
    )


def checkpoint_to_json(checkpoint: SearchCheckpoint) -> dict:
    return checkpoint.to_json()


def checkpoint_from_json(doc: dict) -> SearchCheckpoint:
    return SearchCheckpoint.from_json(doc)


def document(command: str, inputs: dict, results: dict) -> dict:
    """Top-level machine-readable envelope for one CLI invocation."""
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "inputs": inputs,
        "results": results,
    }
