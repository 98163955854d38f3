"""Factorization, sum-of-divisors, abundancy index, and exact comparisons.

All operations are pure functions over Python's arbitrary-precision ints
and `fractions.Fraction`; every inequality verdict is decided by integer
cross-multiplication, never floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from spoofnum.primes import is_prime, pollard_brent, sieve_primes


class DomainError(ValueError):
    """Input outside an operation's mathematical domain (e.g. sigma(0))."""


@dataclass(frozen=True)
class Factorization:
    """Canonical prime-power decomposition: ((p1, e1), (p2, e2), ...).

    Primes strictly increase, exponents are >= 1, and the empty tuple
    represents 1.  `validate()` additionally certifies primality of every
    listed prime; construction keeps only the cheap structural checks so
    the hot search path stays fast.
    """

    factors: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        fs = self.factors
        if any(e < 1 or p < 2 for p, e in fs):
            raise DomainError(f"malformed factorization: {fs}")
        if any(fs[i][0] >= fs[i + 1][0] for i in range(len(fs) - 1)):
            raise DomainError(f"primes must strictly increase: {fs}")

    def value(self) -> int:
        n = 1
        for p, e in self.factors:
            n *= p**e
        return n

    def distinct_prime_count(self) -> int:
        return len(self.factors)

    def largest_prime(self) -> int:
        """Largest prime factor; 1 for the empty factorization."""
        return self.factors[-1][0] if self.factors else 1

    def merged_with(self, other: "Factorization") -> "Factorization":
        """Factorization of the product (exponents of shared primes add)."""
        counts: dict[int, int] = {}
        for p, e in self.factors + other.factors:
            counts[p] = counts.get(p, 0) + e
        return Factorization(tuple(sorted(counts.items())))

    def validate(self) -> None:
        """Full invariant check, including primality of every base."""
        for p, _ in self.factors:
            if not is_prime(p):
                raise DomainError(f"{p} is not prime in {self.factors}")

    def __iter__(self):
        return iter(self.factors)


def _split(n: int, out: dict[int, int]) -> None:
    # recursively split a cofactor that survived trial division
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    d = pollard_brent(n)
    _split(d, out)
    _split(n // d, out)


def factorize(n: int) -> Factorization:
    """Canonical factorization of n >= 1.

    Trial division by sieved primes below 10^6 with primality early-outs,
    then deterministic Pollard-Brent for any remaining cofactor.
    """
    if n < 1:
        raise DomainError(f"factorize requires n >= 1, got {n}")
    if n == 1:
        return Factorization(())
    m = n
    found: list[tuple[int, int]] = []
    # below 7^2 the trial loop settles faster than a Miller-Rabin round
    if m >= 49 and is_prime(m):
        return Factorization(((m, 1),))
    for p in sieve_primes():
        if p * p > m:
            break
        if m % p:
            continue
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        found.append((p, e))
        if m == 1:
            break
        if is_prime(m):
            found.append((m, 1))
            m = 1
            break
    if m > 1:
        if is_prime(m):
            found.append((m, 1))
        else:
            extra: dict[int, int] = {}
            _split(m, extra)
            found.extend(sorted(extra.items()))
    return Factorization(tuple(found))


def sigma(f: Factorization) -> int:
    """Sum of divisors from a factorization: prod (p^(e+1) - 1) / (p - 1)."""
    total = 1
    for p, e in f:
        total *= (p ** (e + 1) - 1) // (p - 1)
    return total


def sigma_of(n: int) -> int:
    """sigma(n) for a raw integer n >= 1."""
    return sigma(factorize(n))


def abundancy(n: int) -> Fraction:
    """Abundancy index I(n) = sigma(n)/n in lowest terms."""
    if n < 1:
        raise DomainError(f"abundancy requires n >= 1, got {n}")
    return Fraction(sigma_of(n), n)


def deficiency(n: int) -> int:
    """D(n) = 2n - sigma(n); positive for deficient n, 1 for almost
    perfect, 0 for perfect, negative for abundant."""
    if n < 1:
        raise DomainError(f"deficiency requires n >= 1, got {n}")
    return 2 * n - sigma_of(n)


def exact_sqrt(n: int) -> int | None:
    """Integer square root when n is a perfect square, else None."""
    if n < 0:
        raise DomainError(f"exact_sqrt requires n >= 0, got {n}")
    r = isqrt(n)
    return r if r * r == n else None


@dataclass(frozen=True)
class SolitaryVerdict:
    """Outcome of the coprimality sufficiency test for solitude."""

    provably_solitary: bool
    witness_gcd: int

    @property
    def verdict(self) -> str:
        return "provably_solitary" if self.provably_solitary else "inconclusive"


def greening_test(n: int) -> SolitaryVerdict:
    """gcd(n, sigma(n)) = 1 proves n solitary; anything else is inconclusive."""
    if n < 1:
        raise DomainError(f"greening_test requires n >= 1, got {n}")
    g = gcd(n, sigma_of(n))
    return SolitaryVerdict(provably_solitary=(g == 1), witness_gcd=g)


def compare_with_sqrt(r: Fraction, c: Fraction) -> int:
    """Sign of r - sqrt(c) for positive rationals, via cross-multiplication.

    Compares r^2 with c as integers (num(r)^2 * den(c) vs num(c) * den(r)^2),
    so no radical is ever evaluated in floating point.
    """
    if r <= 0 or c <= 0:
        raise DomainError("compare_with_sqrt requires positive operands")
    lhs = r.numerator * r.numerator * c.denominator
    rhs = c.numerator * r.denominator * r.denominator
    return (lhs > rhs) - (lhs < rhs)


def sigma_product_bounds(a: int, b: int) -> tuple[int, int, int]:
    """(a*sigma(b), sigma(a*b), sigma(a)*sigma(b)).

    The middle term always sits between the outer two, with the upper
    bound attained exactly when gcd(a, b) = 1.
    """
    if a < 1 or b < 1:
        raise DomainError("sigma_product_bounds requires a, b >= 1")
    sb = sigma_of(b)
    return (a * sb, sigma_of(a * b), sigma_of(a) * sb)
