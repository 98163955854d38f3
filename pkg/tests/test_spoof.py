import random
from fractions import Fraction
from math import gcd

import pytest

from spoofnum.arith import DomainError, abundancy, factorize, sigma
from spoofnum.spoof import (
    CHECK_K_ODD_SQUARE,
    Classification,
    CofactorClass,
    InternalInconsistencyError,
    classify_m,
    derive_m,
    quasi_prime_summary,
    spoof_abundancy,
    verify_spoof,
)
import spoofnum.spoof as spoof_module

DESCARTES_K = 9018009
DESCARTES_M = 22021


def descartes_pair():
    return verify_spoof(DESCARTES_K, DESCARTES_M).pair


class TestVerify:
    def test_descartes_is_proper_spoof(self):
        report = verify_spoof(DESCARTES_K, DESCARTES_M)
        assert report.classification is Classification.PROPER_SPOOF
        assert report.defining_equation
        assert all(report.structural_checks.values())
        assert report.gcd_identity.passes
        assert (
            report.gcd_identity.gcd_k_sigma_k
            == report.gcd_identity.sigma_k_over_m
            == report.gcd_identity.deficiency_k
            == 819
        )
        assert report.gcd_m_k == 1
        assert not report.m_divides_k

    def test_unit_cofactor_invalid(self):
        report = verify_spoof(9, 1)
        assert report.classification is Classification.INVALID
        assert any("m must exceed" in p for p in report.problems)

    def test_failing_equation_invalid(self):
        # sigma(441) * 6 = 4446 but 2n = 4410
        report = verify_spoof(441, 5)
        assert report.classification is Classification.INVALID
        assert not report.defining_equation
        assert report.sigma_k == 741

    def test_even_n_invalid(self):
        report = verify_spoof(10, 3)
        assert report.classification is Classification.INVALID
        assert any("odd" in p for p in report.problems)

    def test_zero_inputs_invalid_without_crashing(self):
        assert verify_spoof(0, 5).classification is Classification.INVALID
        assert verify_spoof(9, 0).classification is Classification.INVALID

    def test_negative_inputs_rejected(self):
        with pytest.raises(DomainError):
            verify_spoof(-9, 5)

    def test_invalid_iff_rule(self):
        rng = random.Random(77)
        for _ in range(300):
            k = rng.randrange(0, 2000)
            m = rng.randrange(0, 2000)
            report = verify_spoof(k, m)
            should_be_invalid = (
                not report.defining_equation or k <= 1 or m <= 1 or (k * m) % 2 == 0
            )
            assert (report.classification is Classification.INVALID) == should_be_invalid

    def test_filter_flags_do_not_change_classification(self):
        plain = verify_spoof(DESCARTES_K, DESCARTES_M)
        flagged = verify_spoof(
            DESCARTES_K, DESCARTES_M, require_coprime=True,
            require_m_not_dividing_k=True,
        )
        assert flagged.classification is plain.classification
        assert flagged.passes_filters  # Descartes passes both published variants

    def test_filter_flags_record_failures(self):
        # 21 divides 441 and shares a factor with it, so both variants reject
        report = verify_spoof(441, 21, require_coprime=True)
        assert not report.passes_filters
        assert report.gcd_m_k == 21
        report = verify_spoof(441, 21, require_m_not_dividing_k=True)
        assert not report.passes_filters
        assert report.m_divides_k
        unfiltered = verify_spoof(441, 21)
        assert unfiltered.passes_filters

    def test_inconsistency_aborts_with_dump(self, monkeypatch):
        def broken_checks(k, m, sigma_k):
            checks = dict.fromkeys(spoof_module.STRUCTURAL_CHECK_NAMES, True)
            checks[CHECK_K_ODD_SQUARE] = False
            return checks

        monkeypatch.setattr(spoof_module, "_structural_checks", broken_checks)
        with pytest.raises(InternalInconsistencyError) as excinfo:
            verify_spoof(DESCARTES_K, DESCARTES_M)
        assert excinfo.value.dump["failed_checks"] == [CHECK_K_ODD_SQUARE]

    def test_prime_cofactor_would_signal(self, monkeypatch):
        # No genuine input can reach this branch (it would certify an odd
        # perfect number), so force the cofactor factorization to look prime.
        real_factorize = spoof_module.factorize

        def fake_factorize(n):
            if n == DESCARTES_M:
                return type(real_factorize(2))(((DESCARTES_M, 1),))
            return real_factorize(n)

        monkeypatch.setattr(spoof_module, "factorize", fake_factorize)
        report = verify_spoof(DESCARTES_K, DESCARTES_M)
        assert report.classification is Classification.ODD_PERFECT_SIGNAL


class TestDeriveM:
    def test_descartes(self):
        assert derive_m(DESCARTES_K) == DESCARTES_M

    def test_9_has_no_cofactor(self):
        assert derive_m(9) is None  # D(9) = 5 does not divide sigma(9) = 13

    def test_441_has_no_cofactor(self):
        assert derive_m(441) is None  # D = 141 does not divide 741

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            derive_m(1)
        with pytest.raises(DomainError):
            derive_m(10)  # even
        with pytest.raises(DomainError):
            derive_m(27)  # odd but not a square

    def test_derived_pairs_always_verify(self):
        # every odd square k <= 10^7 with a derivable cofactor verifies
        # cleanly, with all structural checks and the gcd identity passing
        found = []
        for s in range(3, 3163, 2):
            k = s * s
            m = derive_m(k)
            if m is None:
                continue
            found.append(k)
            report = verify_spoof(k, m)
            assert report.classification is not Classification.INVALID
            assert all(report.structural_checks.values())
            assert report.gcd_identity.passes
            # three-way identity: gcd(k, sigma(k)) = sigma(k)/m = 2k - sigma(k)
            assert report.gcd_identity.gcd_k_sigma_k == report.gcd_identity.deficiency_k
        assert DESCARTES_K in found

    def test_uniqueness_of_cofactor(self):
        # the defining equation admits at most the derived m: perturbing it
        # in any direction must fail verification
        rng = random.Random(4)
        for _ in range(200):
            s = rng.randrange(1, 500) * 2 + 1
            k = s * s
            m = derive_m(k)
            candidates = set()
            if m is not None:
                candidates.update((m - 2, m + 2, m - 1, m + 1))
            else:
                candidates.update(rng.randrange(2, 10**6) for _ in range(4))
            for wrong in candidates:
                if wrong <= 1 or (m is not None and wrong == m):
                    continue
                assert verify_spoof(k, wrong).classification is Classification.INVALID


class TestClassifyM:
    def test_descartes_cofactor_composite(self):
        assert classify_m(22021) is CofactorClass.COMPOSITE

    def test_prime(self):
        assert classify_m(13) is CofactorClass.PRIME

    def test_unit(self):
        assert classify_m(1) is CofactorClass.UNIT

    def test_zero_rejected(self):
        with pytest.raises(DomainError):
            classify_m(0)


class TestQuasiPrimeSummary:
    def test_descartes(self):
        summary = quasi_prime_summary(descartes_pair())
        assert summary.quasi_euler_prime == 22021
        assert summary.largest_quasi_prime_factor == 22021
        assert summary.distinct_quasi_prime_count == 5  # 3, 7, 11, 13, and m
        assert summary.distinct_prime_count_full == 6  # m = 19^2 * 61

    def test_max_semantics_when_k_has_larger_prime(self):
        pair = descartes_pair()
        # rebuild the pair with a cofactor smaller than k's largest prime
        shrunk = type(pair)(
            k=pair.k, m=7, n=pair.k * 7, sigma_k=pair.sigma_k, d_k=pair.d_k,
            sqrt_k=pair.sqrt_k, k_factors=pair.k_factors, m_factors=factorize(7),
        )
        assert quasi_prime_summary(shrunk).largest_quasi_prime_factor == 13


class TestSpoofAbundancy:
    def test_descartes_value(self):
        assert spoof_abundancy(descartes_pair()) == Fraction(23622, 11011)

    def test_matches_direct_factorization(self):
        pair = descartes_pair()
        assert spoof_abundancy(pair) == abundancy(pair.n)

    def test_merges_shared_primes(self):
        # k = 441 = 21^2 and m = 21 share every prime; I(n) must come from n,
        # not from sigma(k)*sigma(m)
        pair_type = type(descartes_pair())
        k, m = 441, 21
        pair = pair_type(
            k=k, m=m, n=k * m, sigma_k=741, d_k=141, sqrt_k=21,
            k_factors=factorize(k), m_factors=factorize(m),
        )
        assert spoof_abundancy(pair) == abundancy(k * m)
        assert spoof_abundancy(pair) != Fraction(741 * sigma(factorize(m)), k * m)

    def test_exceeds_two_for_coprime_proper_spoof(self):
        pair = descartes_pair()
        assert gcd(pair.m, pair.k) == 1
        assert spoof_abundancy(pair) > 2


class TestSquareCofactorTheorems:
    def test_k_equals_m_never_verifies(self):
        # exhaustive for odd k = m <= 10^4
        for k in range(1, 10_001, 2):
            assert verify_spoof(k, k).classification is Classification.INVALID

    def test_almost_perfect_iff_k_below_m(self):
        # testable form of the almost-perfect equivalence on the one known spoof
        pair = descartes_pair()
        assert (pair.d_k == 1) == (pair.k < pair.m)
        assert pair.d_k == 819 and pair.m < pair.k

    def test_proper_spoof_cofactor_at_least_nine(self):
        report = verify_spoof(DESCARTES_K, DESCARTES_M)
        assert report.classification is Classification.PROPER_SPOOF
        assert report.m >= 9

    def test_odd_square_sigma_is_odd_to_ten_million(self):
        for s in range(1, 3163, 2):
            assert sigma(factorize(s * s)) % 2 == 1
