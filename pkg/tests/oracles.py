"""Independent oracles for the test suite.

Everything here recomputes results from first principles (divisor
enumeration, direct equation evaluation) without touching the library's
factorization or sigma code, so agreement between the two is evidence,
not circularity.
"""

from __future__ import annotations

from math import isqrt


def sigma_by_enumeration(n: int) -> int:
    """Sum of divisors by walking d <= sqrt(n) and pairing d with n/d."""
    assert n >= 1
    total = 0
    d = 1
    root = isqrt(n)
    while d <= root:
        if n % d == 0:
            total += d
            paired = n // d
            if paired != d:
                total += paired
        d += 1
    return total


def spoof_hits_by_enumeration(s_min: int, s_max: int) -> list[tuple[int, int]]:
    """All spoof pairs (k = s^2, m) for odd s in [s_min, s_max].

    For each odd square k the candidate cofactor is read off from the
    defining equation and then the equation is re-evaluated literally
    with an enumerated sigma, so this never trusts the derivation step.
    """
    hits = []
    for s in range(s_min, s_max + 1, 2):
        k = s * s
        sigma_k = sigma_by_enumeration(k)
        d_k = 2 * k - sigma_k
        if d_k <= 0 or sigma_k % d_k != 0:
            continue
        m = sigma_k // d_k
        if m > 1 and (k * m) % 2 == 1 and sigma_k * (m + 1) == 2 * k * m:
            hits.append((k, m))
    return hits
