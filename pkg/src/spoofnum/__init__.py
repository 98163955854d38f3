"""Exact arithmetic for spoof odd perfect numbers (Descartes numbers).

A spoof odd perfect number is an odd n = k*m with k, m > 1 such that
sigma(k) * (m + 1) = 2n, i.e. n would be an odd perfect number if the
cofactor m were treated as a prime.  Everything here is computed with
arbitrary-precision integers and exact rationals; floating point only
ever appears in clearly-marked display strings.
"""

from spoofnum.arith import (
    DomainError,
    Factorization,
    SolitaryVerdict,
    abundancy,
    compare_with_sqrt,
    deficiency,
    exact_sqrt,
    factorize,
    greening_test,
    sigma,
    sigma_of,
    sigma_product_bounds,
)
from spoofnum.spoof import (
    Classification,
    CofactorClass,
    InternalInconsistencyError,
    QuasiPrimeSummary,
    SpoofPair,
    VerificationReport,
    classify_m,
    derive_m,
    quasi_prime_summary,
    spoof_abundancy,
    verify_spoof,
)

__all__ = [
    "DomainError",
    "Factorization",
    "SolitaryVerdict",
    "abundancy",
    "compare_with_sqrt",
    "deficiency",
    "exact_sqrt",
    "factorize",
    "greening_test",
    "sigma",
    "sigma_of",
    "sigma_product_bounds",
    "Classification",
    "CofactorClass",
    "InternalInconsistencyError",
    "QuasiPrimeSummary",
    "SpoofPair",
    "VerificationReport",
    "classify_m",
    "derive_m",
    "quasi_prime_summary",
    "spoof_abundancy",
    "verify_spoof",
]
