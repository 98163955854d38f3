"""Spoof odd perfect pairs: verification, cofactor derivation, classification.

A pair (k, m) with k, m > 1 and odd n = k*m is a spoof when
sigma(k) * (m + 1) = 2n.  That single equation forces a cluster of
structural facts (k is an odd square, m = 1 mod 4, m | sigma(k),
(m+1) | 2k, sigma(k)/m = 2k - sigma(k) = gcd(k, sigma(k))); verification
recomputes each one and treats any failure after the defining equation
passed as an internal bug, never as data.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import gcd

from spoofnum.arith import (
    DomainError,
    Factorization,
    exact_sqrt,
    factorize,
    sigma,
)
from spoofnum.primes import is_prime


class Classification(Enum):
    PROPER_SPOOF = "ProperSpoof"
    ODD_PERFECT_SIGNAL = "OddPerfectSignal"
    INVALID = "Invalid"


class CofactorClass(Enum):
    PRIME = "prime"
    COMPOSITE = "composite"
    UNIT = "unit"


class InternalInconsistencyError(AssertionError):
    """A consequence of the defining equation failed to hold.

    These states are mathematically impossible, so reaching one means the
    implementation is wrong; the raiser attaches a diagnostic dump instead
    of returning a report.
    """

    def __init__(self, message: str, dump: dict):
        super().__init__(message)
        self.dump = dump


# Ordered names of the structural checks forced by the defining equation.
CHECK_K_ODD_SQUARE = "k_is_odd_square"
CHECK_M_MOD_4 = "m_congruent_1_mod_4"
CHECK_M_DIVIDES_SIGMA = "m_divides_sigma_k"
CHECK_M1_DIVIDES_2K = "m_plus_1_divides_2k"
CHECK_QUOTIENT_IS_DEFICIENCY = "sigma_k_over_m_equals_deficiency"

STRUCTURAL_CHECK_NAMES = (
    CHECK_K_ODD_SQUARE,
    CHECK_M_MOD_4,
    CHECK_M_DIVIDES_SIGMA,
    CHECK_M1_DIVIDES_2K,
    CHECK_QUOTIENT_IS_DEFICIENCY,
)


@dataclass(frozen=True)
class SpoofPair:
    """A spoof pair with its derived quantities, structurally coherent.

    Construction recomputes every derived field, so a pair whose numbers
    disagree (including one deserialized from tampered JSON) cannot exist.
    The defining equation itself is deliberately NOT an existence
    condition: analysis gates are exercised against hypothetical pairs
    that no actual spoof can realize.
    """

    k: int
    m: int
    n: int
    sigma_k: int
    d_k: int
    sqrt_k: int
    k_factors: Factorization
    m_factors: Factorization

    def __post_init__(self) -> None:
        coherent = (
            self.n == self.k * self.m
            and self.sqrt_k * self.sqrt_k == self.k
            and self.k_factors.value() == self.k
            and self.m_factors.value() == self.m
            and sigma(self.k_factors) == self.sigma_k
            and self.d_k == 2 * self.k - self.sigma_k
        )
        if not coherent:
            raise DomainError(f"incoherent pair: k={self.k}, m={self.m}")

    @property
    def gcd_m_k(self) -> int:
        return gcd(self.m, self.k)

    @property
    def gcd_m_sqrt_k(self) -> int:
        return gcd(self.m, self.sqrt_k)

    @property
    def m_is_prime(self) -> bool:
        return len(self.m_factors.factors) == 1 and self.m_factors.factors[0][1] == 1

    @property
    def classification(self) -> Classification:
        if self.m_is_prime:
            return Classification.ODD_PERFECT_SIGNAL
        return Classification.PROPER_SPOOF


@dataclass(frozen=True)
class GcdIdentityWitness:
    """Witness triple for gcd(k, sigma(k)) = sigma(k)/m = 2k - sigma(k)."""

    passes: bool
    gcd_k_sigma_k: int
    sigma_k_over_m: int | None  # None when m does not divide sigma(k)
    deficiency_k: int


@dataclass(frozen=True)
class VerificationReport:
    k: int
    m: int
    n: int
    classification: Classification
    defining_equation: bool
    structural_checks: dict[str, bool]
    gcd_identity: GcdIdentityWitness
    gcd_m_k: int
    m_divides_k: bool
    require_coprime: bool
    require_m_not_dividing_k: bool
    passes_filters: bool
    sigma_k: int | None
    pair: SpoofPair | None
    problems: tuple[str, ...] = field(default=())

    @property
    def is_spoof(self) -> bool:
        return self.classification is not Classification.INVALID


def _structural_checks(k: int, m: int, sigma_k: int | None) -> dict[str, bool]:
    checks = dict.fromkeys(STRUCTURAL_CHECK_NAMES, False)
    if k >= 1:
        checks[CHECK_K_ODD_SQUARE] = k % 2 == 1 and exact_sqrt(k) is not None
    if m >= 1:
        checks[CHECK_M_MOD_4] = m % 4 == 1
    if sigma_k is None or m < 1:
        return checks
    d_k = 2 * k - sigma_k
    checks[CHECK_M_DIVIDES_SIGMA] = sigma_k % m == 0
    checks[CHECK_M1_DIVIDES_2K] = (2 * k) % (m + 1) == 0
    checks[CHECK_QUOTIENT_IS_DEFICIENCY] = (
        checks[CHECK_M_DIVIDES_SIGMA] and sigma_k // m == d_k
    )
    return checks


def _gcd_identity(k: int, m: int, sigma_k: int | None) -> GcdIdentityWitness:
    if sigma_k is None or k < 1 or m < 1:
        return GcdIdentityWitness(False, 0, None, 0)
    g = gcd(k, sigma_k)
    d_k = 2 * k - sigma_k
    quotient = sigma_k // m if sigma_k % m == 0 else None
    return GcdIdentityWitness(
        passes=(quotient is not None and g == quotient == d_k),
        gcd_k_sigma_k=g,
        sigma_k_over_m=quotient,
        deficiency_k=d_k,
    )


def verify_spoof(
    k: int,
    m: int,
    *,
    require_coprime: bool = False,
    require_m_not_dividing_k: bool = False,
) -> VerificationReport:
    """Full verification of a candidate pair (k, m).

    Classification is Invalid exactly when the defining equation fails or
    k <= 1 or m <= 1 or k*m is even; otherwise ProperSpoof for composite m
    and OddPerfectSignal for prime m (the pair would then certify an odd
    perfect number).  The optional filter flags never change the
    classification; they only set `passes_filters`, letting callers apply
    the stricter published variants (gcd(m,k)=1 or m not dividing k).

    Raises InternalInconsistencyError if the defining equation holds but
    any of its theorem-level consequences fails: that cannot happen for
    correct arithmetic.
    """
    if k < 0 or m < 0:
        raise DomainError("k and m must be nonnegative integers")
    problems: list[str] = []
    if k <= 1:
        problems.append(f"k must exceed 1 (got {k})")
    if m <= 1:
        problems.append(f"m must exceed 1 (got {m})")
    n = k * m
    if k >= 1 and m >= 1 and n % 2 == 0:
        problems.append(f"n = k*m = {n} must be odd")

    k_factors = factorize(k) if k >= 1 else None
    sigma_k = sigma(k_factors) if k_factors is not None else None
    defining = sigma_k is not None and m >= 1 and sigma_k * (m + 1) == 2 * n
    if not defining:
        problems.append("defining equation sigma(k)*(m+1) = 2*k*m fails")

    checks = _structural_checks(k, m, sigma_k)
    identity = _gcd_identity(k, m, sigma_k)
    gcd_m_k = gcd(m, k)
    m_divides_k = m >= 1 and k % m == 0

    valid = defining and k > 1 and m > 1 and n % 2 == 1
    pair = None
    if valid:
        failed = [name for name, ok in checks.items() if not ok]
        if failed or not identity.passes:
            raise InternalInconsistencyError(
                "defining equation holds but derived constraints failed",
                dump={
                    "k": k,
                    "m": m,
                    "n": n,
                    "sigma_k": sigma_k,
                    "failed_checks": failed,
                    "gcd_identity": identity,
                },
            )
        sqrt_k = exact_sqrt(k)
        assert sqrt_k is not None  # guaranteed by CHECK_K_ODD_SQUARE
        pair = SpoofPair(
            k=k,
            m=m,
            n=n,
            sigma_k=sigma_k,
            d_k=2 * k - sigma_k,
            sqrt_k=sqrt_k,
            k_factors=k_factors,
            m_factors=factorize(m),
        )
        classification = pair.classification
        if classification is Classification.PROPER_SPOOF and m < 9:
            raise InternalInconsistencyError(
                "composite cofactor below 9 contradicts m = 1 mod 4",
                dump={"k": k, "m": m},
            )
    else:
        classification = Classification.INVALID

    passes_filters = (not require_coprime or gcd_m_k == 1) and (
        not require_m_not_dividing_k or not m_divides_k
    )
    return VerificationReport(
        k=k,
        m=m,
        n=n,
        classification=classification,
        defining_equation=defining,
        structural_checks=checks,
        gcd_identity=identity,
        gcd_m_k=gcd_m_k,
        m_divides_k=m_divides_k,
        require_coprime=require_coprime,
        require_m_not_dividing_k=require_m_not_dividing_k,
        passes_filters=passes_filters,
        sigma_k=sigma_k,
        pair=pair,
        problems=tuple(problems),
    )


def derive_m(k: int) -> int | None:
    """The unique cofactor m making (k, m) a spoof, if one exists.

    Solving the defining equation for m gives m = sigma(k) / (2k - sigma(k)),
    so the search over pairs collapses to a search over odd squares k.
    Returns None when the deficiency is nonpositive, does not divide
    sigma(k), or yields m <= 1.
    """
    if k <= 1:
        raise DomainError(f"derive_m requires k > 1, got {k}")
    if k % 2 == 0 or exact_sqrt(k) is None:
        raise DomainError(f"derive_m requires an odd perfect square, got {k}")
    sigma_k = sigma(factorize(k))
    d_k = 2 * k - sigma_k
    if d_k <= 0 or sigma_k % d_k != 0:
        return None
    m = sigma_k // d_k
    return m if m > 1 else None


def classify_m(m: int) -> CofactorClass:
    """Exact classification of the cofactor: unit, prime, or composite."""
    if m < 1:
        raise DomainError(f"classify_m requires m >= 1, got {m}")
    if m == 1:
        return CofactorClass.UNIT
    return CofactorClass.PRIME if is_prime(m) else CofactorClass.COMPOSITE


@dataclass(frozen=True)
class QuasiPrimeSummary:
    """Quasi-prime bookkeeping: m counts as a single prime-like unit.

    `distinct_quasi_prime_count` is the distinct primes of k plus one for
    m (Descartes' example counts 5); `distinct_prime_count_full` is the
    transparency figure with m actually factored (6 for Descartes).
    """

    quasi_euler_prime: int
    largest_quasi_prime_factor: int
    distinct_quasi_prime_count: int
    distinct_prime_count_full: int


def quasi_prime_summary(pair: SpoofPair) -> QuasiPrimeSummary:
    merged = pair.k_factors.merged_with(pair.m_factors)
    return QuasiPrimeSummary(
        quasi_euler_prime=pair.m,
        largest_quasi_prime_factor=max(pair.m, pair.k_factors.largest_prime()),
        distinct_quasi_prime_count=pair.k_factors.distinct_prime_count() + 1,
        distinct_prime_count_full=merged.distinct_prime_count(),
    )


def spoof_abundancy(pair: SpoofPair) -> Fraction:
    """I(n) for n = k*m, from the merged factorization of k and m.

    Shared primes merge by adding exponents, so the value is right even
    when gcd(m, k) > 1; for coprime cofactors it equals
    sigma(k)*sigma(m)/(k*m).
    """
    merged = pair.k_factors.merged_with(pair.m_factors)
    return Fraction(sigma(merged), pair.n)
