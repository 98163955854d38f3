"""Exact inequality chains and biconditionals over verified spoof pairs.

Each chain is reported link by link as exact rationals.  Radical bounds
(multiples of sqrt(5)) are decided by comparing squares with integer
cross-multiplication; the squared values are what the report carries.
Chains whose hypothesis a pair does not meet come back as vacuous rather
than failed.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Union

from spoofnum.arith import DomainError, compare_with_sqrt, sigma_of
from spoofnum.spoof import (
    Classification,
    InternalInconsistencyError,
    QuasiPrimeSummary,
    SpoofPair,
    quasi_prime_summary,
    spoof_abundancy,
)

Rational = Union[int, Fraction]


class TheoremViolationError(InternalInconsistencyError):
    """A proved statement failed on a verified pair: implementation bug."""


class ChainId(Enum):
    INDEX_BOUNDS = "index_bounds"
    ROOT_INDEX_BOUNDS = "root_index_bounds"
    CROSS_RATIO_BOUNDS = "cross_ratio_bounds"
    RATIO_SUM_BOUNDS = "ratio_sum_bounds"
    ROOT_SUM_LOWER_BOUND = "root_sum_lower_bound"


class Applicability(Enum):
    APPLIES = "applies"
    VACUOUS = "vacuous_hypothesis_failed"


@dataclass(frozen=True)
class ChainLink:
    label: str
    lhs: Fraction
    relation: str  # one of "<", "<=", "=", "!="
    rhs: Fraction
    holds: bool


@dataclass(frozen=True)
class ChainReport:
    chain_id: ChainId
    links: tuple[ChainLink, ...]
    overall: bool
    applicability: Applicability


def _link(label: str, lhs: Rational, relation: str, rhs: Rational) -> ChainLink:
    lhs, rhs = Fraction(lhs), Fraction(rhs)
    holds = {
        "<": lhs < rhs,
        "<=": lhs <= rhs,
        "=": lhs == rhs,
        "!=": lhs != rhs,
    }[relation]
    return ChainLink(label, lhs, relation, rhs, holds)


def _sqrt_link(label: str, below: Fraction, value: Fraction) -> ChainLink:
    # sqrt(below) < value, stored as the squared comparison below < value^2
    holds = compare_with_sqrt(value, below) > 0
    return ChainLink(label, Fraction(below), "<", value * value, holds)


def _chain(chain_id: ChainId, links: tuple[ChainLink, ...]) -> ChainReport:
    return ChainReport(
        chain_id=chain_id,
        links=links,
        overall=all(link.holds for link in links),
        applicability=Applicability.APPLIES,
    )


def _vacuous(chain_id: ChainId) -> ChainReport:
    return ChainReport(chain_id, (), True, Applicability.VACUOUS)


def index_bounds_chain(pair: SpoofPair) -> ChainReport:
    """1 < 2k/sigma(k) = (m+1)/m <= 10/9 < 9/5 <= sigma(k)/k < 2.

    Needs a composite cofactor: m = 1 mod 4 and composite force m >= 9,
    which is where the 10/9 and 9/5 constants come from.  Vacuous for an
    odd-perfect signal (prime m).
    """
    if pair.m_is_prime:
        return _vacuous(ChainId.INDEX_BOUNDS)
    ratio_m = Fraction(pair.m + 1, pair.m)
    index_k = Fraction(pair.sigma_k, pair.k)
    return _chain(
        ChainId.INDEX_BOUNDS,
        (
            _link("1 < (m+1)/m", 1, "<", ratio_m),
            _link("2k/sigma(k) = (m+1)/m", Fraction(2 * pair.k, pair.sigma_k), "=", ratio_m),
            _link("(m+1)/m <= 10/9", ratio_m, "<=", Fraction(10, 9)),
            _link("10/9 < 9/5", Fraction(10, 9), "<", Fraction(9, 5)),
            _link("9/5 <= sigma(k)/k", Fraction(9, 5), "<=", index_k),
            _link("sigma(k)/k < 2", index_k, "<", 2),
        ),
    )


def root_index_chain(pair: SpoofPair) -> ChainReport:
    """sqrt(9/5) < sigma(sqrt(k))/sqrt(k) < 2, and the root index sits
    below the index of k itself."""
    if pair.m_is_prime:
        return _vacuous(ChainId.ROOT_INDEX_BOUNDS)
    root_index = Fraction(sigma_of(pair.sqrt_k), pair.sqrt_k)
    index_k = Fraction(pair.sigma_k, pair.k)
    return _chain(
        ChainId.ROOT_INDEX_BOUNDS,
        (
            _sqrt_link(
                "sqrt(9/5) < sigma(sqrt(k))/sqrt(k)  [squares compared]",
                Fraction(9, 5),
                root_index,
            ),
            _link("sigma(sqrt(k))/sqrt(k) < 2", root_index, "<", 2),
            _link(
                "sigma(sqrt(k))/sqrt(k) < sigma(k)/k", root_index, "<", index_k
            ),
        ),
    )


def cross_ratio_chain(pair: SpoofPair) -> ChainReport:
    """(m+1)/k <= 2/3 < 3 <= sigma(k)/m, under the hypothesis m < k.

    Also pins the premise behind it: the deficiency of k is at least 3
    (it is odd and not 1 when m < k).
    """
    if pair.m >= pair.k:
        return _vacuous(ChainId.CROSS_RATIO_BOUNDS)
    quotient = Fraction(pair.sigma_k, pair.m)  # always the integer D(k)
    return _chain(
        ChainId.CROSS_RATIO_BOUNDS,
        (
            _link("(m+1)/k <= 2/3", Fraction(pair.m + 1, pair.k), "<=", Fraction(2, 3)),
            _link("2/3 < 3", Fraction(2, 3), "<", 3),
            _link("3 <= sigma(k)/m", 3, "<=", quotient),
            _link("3 <= D(k)", 3, "<=", pair.d_k),
        ),
    )


def ratio_sum_chain(pair: SpoofPair) -> ChainReport:
    """131/45 <= (m+1)/m + sigma(k)/k < 3 < 11/3 <= (m+1)/k + sigma(k)/m.

    Hypothesis taken as m < k with D(k) != 1; for a spoof those two
    readings coincide (k is almost perfect exactly when k < m).
    """
    if pair.m >= pair.k or pair.d_k == 1:
        return _vacuous(ChainId.RATIO_SUM_BOUNDS)
    same_side = Fraction(pair.m + 1, pair.m) + Fraction(pair.sigma_k, pair.k)
    crossed = Fraction(pair.m + 1, pair.k) + Fraction(pair.sigma_k, pair.m)
    return _chain(
        ChainId.RATIO_SUM_BOUNDS,
        (
            _link("131/45 <= (m+1)/m + sigma(k)/k", Fraction(131, 45), "<=", same_side),
            _link("(m+1)/m + sigma(k)/k < 3", same_side, "<", 3),
            _link("3 < 11/3", 3, "<", Fraction(11, 3)),
            _link("11/3 <= (m+1)/k + sigma(k)/m", Fraction(11, 3), "<=", crossed),
        ),
    )


def root_sum_lower_bound(pair: SpoofPair) -> ChainReport:
    """1 + sqrt(9/5) < (m+1)/m + sigma(sqrt(k))/sqrt(k), exactly.

    The sum minus 1 is compared against sqrt(9/5) through its square;
    the displayed approximation 2.34164 is rendering-only.
    """
    if pair.m_is_prime:
        return _vacuous(ChainId.ROOT_SUM_LOWER_BOUND)
    total = Fraction(pair.m + 1, pair.m) + Fraction(sigma_of(pair.sqrt_k), pair.sqrt_k)
    return _chain(
        ChainId.ROOT_SUM_LOWER_BOUND,
        (
            _sqrt_link(
                "sqrt(9/5) < (m+1)/m + sigma(sqrt(k))/sqrt(k) - 1  [squares compared]",
                Fraction(9, 5),
                total - 1,
            ),
        ),
    )


@dataclass(frozen=True)
class CrossInequation:
    """m(m+1) != sqrt(k)*sigma(sqrt(k)), under gcd(m, sqrt(k)) = 1."""

    applicability: Applicability
    lhs_product: int | None
    rhs_product: int | None
    holds: bool


def root_cross_inequation(pair: SpoofPair) -> CrossInequation:
    """(m+1)/sqrt(k) and sigma(sqrt(k))/m can never be equal when m is
    coprime to sqrt(k); inapplicable otherwise."""
    if pair.gcd_m_sqrt_k != 1:
        return CrossInequation(Applicability.VACUOUS, None, None, True)
    lhs = pair.m * (pair.m + 1)
    rhs = pair.sqrt_k * sigma_of(pair.sqrt_k)
    return CrossInequation(Applicability.APPLIES, lhs, rhs, lhs != rhs)


class OrderingCase(Enum):
    INDEX_SUM_LESS = "index_sum_less"
    EQUAL = "equal"
    CROSS_SUM_LESS = "cross_sum_less"


@dataclass(frozen=True)
class OrderingOutcome:
    """Trichotomy of sa/a + sb/b against sa/b + sb/a.

    Pure algebra over any four positive quantities: the index sum is
    smaller exactly when (a-b) and (sa-sb) share a sign, in which case
    a < b iff sa < sb; when the crossed sum is smaller the directions
    flip.  `biconditional_holds` records the implied equivalence for the
    given quadruple and is True by construction whenever case != EQUAL
    (and vacuously True for EQUAL).
    """

    case: OrderingCase
    biconditional_holds: bool
    index_sum: Fraction
    cross_sum: Fraction


def cross_sum_ordering(
    a: Rational, b: Rational, sa: Rational, sb: Rational
) -> OrderingOutcome:
    a, b, sa, sb = (Fraction(x) for x in (a, b, sa, sb))
    if a <= 0 or b <= 0 or sa <= 0 or sb <= 0:
        raise DomainError("cross_sum_ordering requires positive operands")
    index_sum = sa / a + sb / b
    cross_sum = sa / b + sb / a
    if index_sum < cross_sum:
        case = OrderingCase.INDEX_SUM_LESS
        biconditional = (a < b) == (sa < sb)
    elif index_sum == cross_sum:
        case = OrderingCase.EQUAL
        biconditional = True
    else:
        case = OrderingCase.CROSS_SUM_LESS
        biconditional = (a < b) == (sb < sa)
    return OrderingOutcome(case, biconditional, index_sum, cross_sum)


@dataclass(frozen=True)
class RootOrderReport:
    """Ordering of m against sqrt(k) and of m+1 against sigma(sqrt(k)).

    p1: m < sqrt(k);  p2: m+1 < sigma(sqrt(k));
    p3: (m+1)/sqrt(k) < sigma(sqrt(k))/m.
    `shifted_ratio_holds` is the unconditional (m+1)/sigma(sqrt(k)) <
    m/sqrt(k), from which p1 => p2 and not-p2 => not-p1 follow; the full
    three-way equivalence is only claimed under the hypothesis p1, so
    `full_biconditional` stays None for pairs with m above the root.
    Requires gcd(m, k) = 1.
    """

    applicability: Applicability
    p1_m_below_root: bool | None
    p2_m_plus_1_below_sigma_root: bool | None
    p3_cross_ratio_less: bool | None
    shifted_ratio_holds: bool | None
    implication_p1_to_p2: bool | None
    implication_not_p2_to_not_p1: bool | None
    full_biconditional: bool | None


def root_order_biconditionals(pair: SpoofPair) -> RootOrderReport:
    if pair.gcd_m_k != 1:
        return RootOrderReport(
            Applicability.VACUOUS, None, None, None, None, None, None, None
        )
    m, root = pair.m, pair.sqrt_k
    sigma_root = sigma_of(root)
    p1 = m < root
    p2 = m + 1 < sigma_root
    p3 = m * (m + 1) < root * sigma_root
    shifted = (m + 1) * root < m * sigma_root
    return RootOrderReport(
        applicability=Applicability.APPLIES,
        p1_m_below_root=p1,
        p2_m_plus_1_below_sigma_root=p2,
        p3_cross_ratio_less=p3,
        shifted_ratio_holds=shifted,
        implication_p1_to_p2=(not p1) or p2,
        implication_not_p2_to_not_p1=p2 or not p1,
        full_biconditional=(p1 == p2 == p3) if p1 else None,
    )


@dataclass(frozen=True)
class ConjectureReport:
    """Open predictions evaluated on a pair; a False here is a finding
    (a counterexample), not a failure.

    The sandwich sqrt(k) < m < k and the bound sigma(sqrt(k)) < m are
    only conjectured for coprime cofactors, so both stay None when
    gcd(m, k) != 1.
    """

    abundant: bool
    sandwich_root_m_k: bool | None
    sigma_root_below_m: bool | None

    def violated(self) -> bool:
        return (
            not self.abundant
            or self.sandwich_root_m_k is False
            or self.sigma_root_below_m is False
        )


def conjecture_checks(pair: SpoofPair) -> ConjectureReport:
    if pair.m_is_prime:
        raise DomainError("conjecture checks apply to composite cofactors only")
    abundant = spoof_abundancy(pair) > 2
    if pair.gcd_m_k != 1:
        return ConjectureReport(abundant, None, None)
    return ConjectureReport(
        abundant=abundant,
        sandwich_root_m_k=pair.sqrt_k < pair.m < pair.k,
        sigma_root_below_m=sigma_of(pair.sqrt_k) < pair.m,
    )


@dataclass(frozen=True)
class AnalysisBundle:
    """Everything the analyzers can say about one verified pair."""

    chains: tuple[ChainReport, ...]
    cross_inequation: CrossInequation
    root_order: RootOrderReport
    conjectures: ConjectureReport | None
    abundancy_n: Fraction
    sigma_sqrt_k: int
    quasi_primes: QuasiPrimeSummary


def analyze_pair(pair: SpoofPair) -> AnalysisBundle:
    """Run every applicable chain, inequation, and conjecture check."""
    chains = (
        index_bounds_chain(pair),
        root_index_chain(pair),
        cross_ratio_chain(pair),
        ratio_sum_chain(pair),
        root_sum_lower_bound(pair),
    )
    return AnalysisBundle(
        chains=chains,
        cross_inequation=root_cross_inequation(pair),
        root_order=root_order_biconditionals(pair),
        conjectures=None if pair.m_is_prime else conjecture_checks(pair),
        abundancy_n=spoof_abundancy(pair),
        sigma_sqrt_k=sigma_of(pair.sqrt_k),
        quasi_primes=quasi_prime_summary(pair),
    )


def assert_theorems(pair: SpoofPair, bundle: AnalysisBundle) -> None:
    """Abort if any proved statement fails on a verified pair.

    Conjecture outcomes are exempt: a counterexample is a result to
    report, not a bug.  The proven slice of the abundancy conjecture
    (coprime cofactors force I(n) > 2) is checked here as a theorem.
    """
    violations: list[str] = []
    for chain in bundle.chains:
        if chain.applicability is Applicability.APPLIES and not chain.overall:
            bad = [link.label for link in chain.links if not link.holds]
            violations.append(f"chain {chain.chain_id.value} failed: {bad}")
    ineq = bundle.cross_inequation
    if ineq.applicability is Applicability.APPLIES and not ineq.holds:
        violations.append("cross products m(m+1) and sqrt(k)*sigma(sqrt(k)) collide")
    order = bundle.root_order
    if order.applicability is Applicability.APPLIES:
        if not order.shifted_ratio_holds:
            violations.append("shifted ratio inequality failed")
        if not order.implication_p1_to_p2 or not order.implication_not_p2_to_not_p1:
            violations.append("one-way root-order implication failed")
        if order.full_biconditional is False:
            violations.append("root-order biconditional failed under its hypothesis")
    if (
        pair.classification is Classification.PROPER_SPOOF
        and pair.gcd_m_k == 1
        and bundle.abundancy_n <= 2
    ):
        violations.append("coprime proper spoof must be abundant")
    if (pair.d_k == 1) != (pair.k < pair.m):
        violations.append("deficiency-1 must coincide with k < m")
    if violations:
        raise TheoremViolationError(
            "proved statement failed on a verified pair",
            dump={"k": pair.k, "m": pair.m, "violations": violations},
        )
