import random
from fractions import Fraction

import pytest

from spoofnum.analysis import (
    Applicability,
    ChainId,
    OrderingCase,
    TheoremViolationError,
    analyze_pair,
    assert_theorems,
    conjecture_checks,
    cross_ratio_chain,
    cross_sum_ordering,
    index_bounds_chain,
    ratio_sum_chain,
    root_cross_inequation,
    root_index_chain,
    root_order_biconditionals,
    root_sum_lower_bound,
)
from spoofnum.arith import DomainError, factorize
from spoofnum.spoof import SpoofPair, verify_spoof

DESCARTES = verify_spoof(9018009, 22021).pair


def synthetic_pair(k, m, sigma_k, sqrt_k):
    # hand-built pair for exercising hypothesis gates; not a real spoof
    return SpoofPair(
        k=k, m=m, n=k * m, sigma_k=sigma_k, d_k=2 * k - sigma_k,
        sqrt_k=sqrt_k, k_factors=factorize(k), m_factors=factorize(m),
    )


class TestIndexBoundsChain:
    def test_descartes_all_links_pass(self):
        chain = index_bounds_chain(DESCARTES)
        assert chain.applicability is Applicability.APPLIES
        assert chain.overall
        by_label = {link.label: link for link in chain.links}
        identity = by_label["2k/sigma(k) = (m+1)/m"]
        assert identity.lhs == identity.rhs == Fraction(22022, 22021)
        assert by_label["9/5 <= sigma(k)/k"].rhs == Fraction(22021, 11011)
        assert by_label["(m+1)/m <= 10/9"].lhs == Fraction(22022, 22021)

    def test_constant_ordering_link_present(self):
        chain = index_bounds_chain(DESCARTES)
        constants = [l for l in chain.links if l.label == "10/9 < 9/5"]
        assert constants and constants[0].holds

    def test_prime_cofactor_makes_chain_vacuous(self):
        pair = synthetic_pair(9, 13, 13, 3)
        chain = index_bounds_chain(pair)
        assert chain.applicability is Applicability.VACUOUS
        assert chain.links == ()
        assert chain.overall  # empty conjunction


class TestRootIndexChain:
    def test_descartes(self):
        chain = root_index_chain(DESCARTES)
        assert chain.overall
        radical = chain.links[0]
        # stored as squares: 9/5 < (256/143)^2, decided by 5*256^2 > 9*143^2
        assert radical.lhs == Fraction(9, 5)
        assert radical.rhs == Fraction(65536, 20449)
        assert 5 * 256**2 == 327680 > 184041 == 9 * 143**2
        assert chain.links[2].rhs == Fraction(22021, 11011)


class TestCrossRatioChain:
    def test_descartes_applies(self):
        chain = cross_ratio_chain(DESCARTES)
        assert chain.applicability is Applicability.APPLIES
        assert chain.overall
        by_label = {link.label: link for link in chain.links}
        assert by_label["(m+1)/k <= 2/3"].lhs == Fraction(22022, 9018009)
        assert by_label["3 <= sigma(k)/m"].rhs == 819
        assert by_label["3 <= D(k)"].rhs == 819

    def test_vacuous_when_m_above_k(self):
        pair = synthetic_pair(9, 13, 13, 3)
        assert cross_ratio_chain(pair).applicability is Applicability.VACUOUS


class TestRatioSumChain:
    def test_descartes(self):
        chain = ratio_sum_chain(DESCARTES)
        assert chain.applicability is Applicability.APPLIES
        assert chain.overall
        same_side = Fraction(22022, 22021) + Fraction(22021, 11011)
        by_label = {link.label: link for link in chain.links}
        assert by_label["(m+1)/m + sigma(k)/k < 3"].lhs == same_side
        assert Fraction(131, 45) <= same_side < 3
        crossed = Fraction(22022, 9018009) + Fraction(18035199, 22021)
        assert by_label["11/3 <= (m+1)/k + sigma(k)/m"].rhs == crossed

    def test_constants_sane(self):
        assert Fraction(131, 45) < 3 < Fraction(11, 3)

    def test_gate(self):
        pair = synthetic_pair(9, 13, 13, 3)  # m > k
        assert ratio_sum_chain(pair).applicability is Applicability.VACUOUS


class TestRootSumLowerBound:
    def test_descartes(self):
        chain = root_sum_lower_bound(DESCARTES)
        assert chain.applicability is Applicability.APPLIES
        assert chain.overall
        total = Fraction(22022, 22021) + Fraction(256, 143)
        link = chain.links[0]
        assert link.lhs == Fraction(9, 5)
        assert link.rhs == (total - 1) ** 2


class TestRootCrossInequation:
    def test_descartes(self):
        report = root_cross_inequation(DESCARTES)
        assert report.applicability is Applicability.APPLIES
        assert report.lhs_product == 22021 * 22022 == 484946462
        assert report.rhs_product == 3003 * 5376 == 16144128
        assert report.holds

    def test_gcd_confirmed_coprime(self):
        assert DESCARTES.gcd_m_sqrt_k == 1
        assert DESCARTES.gcd_m_k == 1

    def test_gate_on_shared_factor(self):
        pair = synthetic_pair(441, 21, 741, 21)
        report = root_cross_inequation(pair)
        assert report.applicability is Applicability.VACUOUS
        assert report.lhs_product is None


class TestCrossSumOrdering:
    def test_small_example(self):
        outcome = cross_sum_ordering(2, 3, 3, 4)
        assert outcome.case is OrderingCase.INDEX_SUM_LESS
        assert outcome.index_sum == Fraction(17, 6)
        assert outcome.cross_sum == 3
        assert outcome.biconditional_holds  # 2 < 3 and 3 < 4

    def test_equal_case(self):
        outcome = cross_sum_ordering(5, 5, 9, 9)
        assert outcome.case is OrderingCase.EQUAL
        assert outcome.biconditional_holds

    def test_descartes_values(self):
        outcome = cross_sum_ordering(22021, 3003, 22022, 5376)
        assert outcome.case is OrderingCase.INDEX_SUM_LESS
        assert (22021 - 3003) * (22022 - 5376) > 0
        assert outcome.biconditional_holds

    def test_rejects_nonpositive(self):
        with pytest.raises(DomainError):
            cross_sum_ordering(0, 3, 3, 4)

    def test_trichotomy_matches_sign_product(self):
        # case is determined by the sign of (a - b)(sa - sb)
        rng = random.Random(1723)
        for _ in range(2000):
            a = Fraction(rng.randrange(1, 500), rng.randrange(1, 500))
            b = Fraction(rng.randrange(1, 500), rng.randrange(1, 500))
            sa = Fraction(rng.randrange(1, 500), rng.randrange(1, 500))
            sb = Fraction(rng.randrange(1, 500), rng.randrange(1, 500))
            outcome = cross_sum_ordering(a, b, sa, sb)
            sign = (a - b) * (sa - sb)
            if sign > 0:
                assert outcome.case is OrderingCase.INDEX_SUM_LESS
            elif sign == 0:
                assert outcome.case is OrderingCase.EQUAL
            else:
                assert outcome.case is OrderingCase.CROSS_SUM_LESS
            assert outcome.biconditional_holds


class TestRootOrderBiconditionals:
    def test_descartes_all_three_false(self):
        report = root_order_biconditionals(DESCARTES)
        assert report.applicability is Applicability.APPLIES
        assert report.p1_m_below_root is False
        assert report.p2_m_plus_1_below_sigma_root is False  # 22022 > 5376
        assert report.p3_cross_ratio_less is False
        # sigma(sqrt(k))/m < 1 < (m+1)/sqrt(k)
        assert Fraction(5376, 22021) < 1 < Fraction(22022, 3003)

    def test_implications_hold_vacuously(self):
        report = root_order_biconditionals(DESCARTES)
        assert report.implication_p1_to_p2 is True
        assert report.implication_not_p2_to_not_p1 is True
        assert report.full_biconditional is None  # hypothesis m < sqrt(k) fails

    def test_shifted_ratio(self):
        report = root_order_biconditionals(DESCARTES)
        assert report.shifted_ratio_holds
        assert 22022 * 3003 < 22021 * 5376

    def test_gate_on_shared_factor(self):
        pair = synthetic_pair(441, 21, 741, 21)
        assert root_order_biconditionals(pair).applicability is Applicability.VACUOUS


class TestConjectures:
    def test_descartes(self):
        report = conjecture_checks(DESCARTES)
        assert report.abundant  # 23622/11011 > 2 since 23622 > 22022
        assert 23622 > 2 * 11011
        assert report.sandwich_root_m_k  # 3003 < 22021 < 9018009
        assert report.sigma_root_below_m  # 5376 < 22021
        assert not report.violated()

    def test_optional_fields_absent_without_coprimality(self):
        pair = synthetic_pair(441, 21, 741, 21)
        report = conjecture_checks(pair)
        assert report.sandwich_root_m_k is None
        assert report.sigma_root_below_m is None

    def test_violation_is_flagged_not_raised(self):
        pair = synthetic_pair(441, 21, 741, 21)
        report = conjecture_checks(pair)
        assert report.violated() == (not report.abundant)


class TestBundle:
    def test_all_chains_present(self):
        bundle = analyze_pair(DESCARTES)
        assert [c.chain_id for c in bundle.chains] == [
            ChainId.INDEX_BOUNDS,
            ChainId.ROOT_INDEX_BOUNDS,
            ChainId.CROSS_RATIO_BOUNDS,
            ChainId.RATIO_SUM_BOUNDS,
            ChainId.ROOT_SUM_LOWER_BOUND,
        ]
        assert bundle.abundancy_n == Fraction(23622, 11011)
        assert bundle.sigma_sqrt_k == 5376

    def test_assert_theorems_passes_on_descartes(self):
        bundle = analyze_pair(DESCARTES)
        assert_theorems(DESCARTES, bundle)

    def test_assert_theorems_raises_on_failed_chain(self):
        bundle = analyze_pair(DESCARTES)
        broken_chain = bundle.chains[0]
        bad_link = type(broken_chain.links[0])(
            label="forced failure", lhs=Fraction(2), relation="<",
            rhs=Fraction(1), holds=False,
        )
        broken = type(broken_chain)(
            chain_id=broken_chain.chain_id,
            links=(bad_link,),
            overall=False,
            applicability=Applicability.APPLIES,
        )
        tampered = type(bundle)(
            chains=(broken,) + bundle.chains[1:],
            cross_inequation=bundle.cross_inequation,
            root_order=bundle.root_order,
            conjectures=bundle.conjectures,
            abundancy_n=bundle.abundancy_n,
            sigma_sqrt_k=bundle.sigma_sqrt_k,
            quasi_primes=bundle.quasi_primes,
        )
        with pytest.raises(TheoremViolationError) as excinfo:
            assert_theorems(DESCARTES, tampered)
        assert "index_bounds" in str(excinfo.value.dump)

    def test_reanalysis_is_deterministic(self):
        assert analyze_pair(DESCARTES) == analyze_pair(DESCARTES)
