"""Exhaustive scans for spoof pairs with checkpointed, resumable ranges.

The direct scan walks odd roots s, sets k = s^2, and derives the unique
cofactor m = sigma(k) / (2k - sigma(k)) when it exists; skipping roots
without an admissible m loses nothing because the defining equation fixes
m.  sigma(k) comes from the factorization of s (doubling exponents), so
only the root is ever factorized.  The structured scan instead enumerates
squares by their prime support, bounding the number of distinct primes.

Checkpoints store covered s-ranges as disjoint closed odd intervals plus
hit summaries; merging is associative and commutative for checkpoints of
the same configuration fingerprint, and files are written atomically.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from math import isqrt
from typing import Callable, Iterable, Sequence

from spoofnum.analysis import (
    AnalysisBundle,
    ChainReport,
    ConjectureReport,
    analyze_pair,
    assert_theorems,
)
from spoofnum.arith import DomainError, factorize
from spoofnum.primes import primes_below
from spoofnum.spoof import (
    Classification,
    SpoofPair,
    VerificationReport,
    verify_spoof,
)

OddRange = tuple[int, int]  # closed interval with odd endpoints


class ScanMode(Enum):
    DIRECT = "DirectScan"
    STRUCTURED = "StructuredScan"


class CheckpointMismatchError(ValueError):
    """Refusing to resume: checkpoint belongs to a different configuration."""


@dataclass(frozen=True)
class SearchConfig:
    mode: ScanMode
    s_min: int = 3
    s_max: int = 3
    max_distinct_primes: int | None = None
    k_bound: int | None = None
    worker_count: int = 1
    require_coprime: bool = False
    require_m_not_dividing_k: bool = False
    chunk_size: int = 1024  # odd values per work unit

    def __post_init__(self) -> None:
        if self.worker_count < 1:
            raise DomainError("worker_count must be at least 1")
        if self.chunk_size < 1:
            raise DomainError("chunk_size must be at least 1")
        if self.mode is ScanMode.DIRECT:
            if self.s_min % 2 == 0 or self.s_max % 2 == 0:
                raise DomainError("scan bounds must be odd")
            if not 3 <= self.s_min <= self.s_max:
                raise DomainError("need 3 <= s_min <= s_max")
        else:
            if self.max_distinct_primes is None or self.k_bound is None:
                raise DomainError(
                    "structured scans need max_distinct_primes and k_bound"
                )
            if self.max_distinct_primes < 1 or self.k_bound < 1:
                raise DomainError("structured scan bounds must be positive")

    def fingerprint(self) -> str:
        """Content hash of the semantic configuration.

        Excludes the s-range (it lives in covered_ranges, and extending a
        scan must be resumable), worker_count, and chunk_size (results are
        independent of partitioning by construction).
        """
        payload = json.dumps(
            {
                "mode": self.mode.value,
                "require_coprime": self.require_coprime,
                "require_m_not_dividing_k": self.require_m_not_dividing_k,
                "max_distinct_primes": self.max_distinct_primes,
                "k_bound": self.k_bound,
            },
            sort_keys=True,
        )
        return hashlib.sha256(payload.encode()).hexdigest()

    @classmethod
    def direct(cls, s_min: int, s_max: int, **kwargs) -> "SearchConfig":
        return cls(mode=ScanMode.DIRECT, s_min=s_min, s_max=s_max, **kwargs)

    @classmethod
    def structured(
        cls, max_distinct_primes: int, k_bound: int, **kwargs
    ) -> "SearchConfig":
        return cls(
            mode=ScanMode.STRUCTURED,
            max_distinct_primes=max_distinct_primes,
            k_bound=k_bound,
            **kwargs,
        )


@dataclass(frozen=True)
class SearchHit:
    pair: SpoofPair
    report: VerificationReport
    conjectures: ConjectureReport | None
    chains: tuple[ChainReport, ...]
    bundle: AnalysisBundle


@dataclass(frozen=True)
class HitSummary:
    k: int
    m: int
    classification: Classification


@dataclass(frozen=True)
class SearchCheckpoint:
    config_fingerprint: str
    covered_ranges: tuple[OddRange, ...]
    hits: tuple[HitSummary, ...]

    @classmethod
    def empty(cls, fingerprint: str) -> "SearchCheckpoint":
        return cls(fingerprint, (), ())

    def covers(self, s: int) -> bool:
        return any(lo <= s <= hi for lo, hi in self.covered_ranges)

    def to_json(self) -> dict:
        return {
            "schema_version": "1",
            "config_fingerprint": self.config_fingerprint,
            "covered_ranges": [[str(lo), str(hi)] for lo, hi in self.covered_ranges],
            "hits": [
                {"k": str(h.k), "m": str(h.m), "classification": h.classification.value}
                for h in self.hits
            ],
        }

    @classmethod
    def from_json(cls, doc: dict) -> "SearchCheckpoint":
        return cls(
            config_fingerprint=doc["config_fingerprint"],
            covered_ranges=tuple((int(lo), int(hi)) for lo, hi in doc["covered_ranges"]),
            hits=tuple(
                HitSummary(int(h["k"]), int(h["m"]), Classification(h["classification"]))
                for h in doc["hits"]
            ),
        )

    def save(self, path: str) -> None:
        """Atomic write: temp file in the same directory, then rename."""
        directory = os.path.dirname(os.path.abspath(path))
        fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as handle:
                json.dump(self.to_json(), handle, indent=2)
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    @classmethod
    def load(cls, path: str) -> "SearchCheckpoint":
        with open(path) as handle:
            return cls.from_json(json.load(handle))


def normalize_ranges(ranges: Iterable[OddRange]) -> tuple[OddRange, ...]:
    """Sort, drop empties, and coalesce adjacent or overlapping odd intervals."""
    cleaned = sorted((lo, hi) for lo, hi in ranges if lo <= hi)
    merged: list[list[int]] = []
    for lo, hi in cleaned:
        if merged and lo <= merged[-1][1] + 2:  # +2: adjacent odd values touch
            merged[-1][1] = max(merged[-1][1], hi)
        else:
            merged.append([lo, hi])
    return tuple((lo, hi) for lo, hi in merged)


def subtract_ranges(target: OddRange, covered: Sequence[OddRange]) -> tuple[OddRange, ...]:
    """Parts of target not covered, as disjoint odd intervals."""
    lo, hi = target
    remaining: list[OddRange] = []
    cursor = lo
    for c_lo, c_hi in normalize_ranges(covered):
        if c_hi < cursor or c_lo > hi:
            continue
        if c_lo > cursor:
            remaining.append((cursor, min(hi, c_lo - 2)))
        cursor = max(cursor, c_hi + 2)
        if cursor > hi:
            break
    if cursor <= hi:
        remaining.append((cursor, hi))
    return tuple(remaining)


def merge_checkpoints(a: SearchCheckpoint, b: SearchCheckpoint) -> SearchCheckpoint:
    """Union of coverage and hits; requires matching fingerprints."""
    if a.config_fingerprint != b.config_fingerprint:
        raise CheckpointMismatchError(
            "cannot merge checkpoints with different configuration fingerprints"
        )
    merged_hits = {(h.k, h.m): h for h in a.hits + b.hits}
    return SearchCheckpoint(
        config_fingerprint=a.config_fingerprint,
        covered_ranges=normalize_ranges(a.covered_ranges + b.covered_ranges),
        hits=tuple(merged_hits[key] for key in sorted(merged_hits)),
    )


def _sigma_of_square(s_factors) -> int:
    # sigma(s^2) from the factorization of s: double each exponent
    total = 1
    for p, e in s_factors:
        total *= (p ** (2 * e + 1) - 1) // (p - 1)
    return total


def derive_candidate(s: int) -> int | None:
    """The forced cofactor for k = s^2, or None when no spoof is possible.

    Mirrors derive_m but factorizes only the root; skipping s on a None
    here is lossless pruning since the defining equation admits at most
    this one m.
    """
    k = s * s
    sigma_k = _sigma_of_square(factorize(s))
    d_k = 2 * k - sigma_k
    if d_k <= 0 or sigma_k % d_k != 0:
        return None
    m = sigma_k // d_k
    return m if m > 1 else None


def _scan_chunk(chunk: OddRange) -> list[tuple[int, int]]:
    # worker body: (s, m) for every admissible odd root in the chunk
    lo, hi = chunk
    return [(s, m) for s in range(lo, hi + 1, 2) if (m := derive_candidate(s))]


def _chop(ranges: Sequence[OddRange], chunk_size: int) -> list[OddRange]:
    chunks: list[OddRange] = []
    step = 2 * chunk_size
    for lo, hi in ranges:
        start = lo
        while start <= hi:
            chunks.append((start, min(hi, start + step - 2)))
            start += step
    return chunks


def _build_hit(k: int, m: int, config: SearchConfig) -> SearchHit | None:
    """Verify a candidate from scratch and attach its full analysis.

    Returns None when the pair fails the configured filter flags; raises
    through verify_spoof/assert_theorems if arithmetic is inconsistent.
    """
    report = verify_spoof(
        k,
        m,
        require_coprime=config.require_coprime,
        require_m_not_dividing_k=config.require_m_not_dividing_k,
    )
    assert report.pair is not None  # derived candidates always verify
    if not report.passes_filters:
        return None
    bundle = analyze_pair(report.pair)
    assert_theorems(report.pair, bundle)
    return SearchHit(
        pair=report.pair,
        report=report,
        conjectures=bundle.conjectures,
        chains=bundle.chains,
        bundle=bundle,
    )


def direct_scan(
    config: SearchConfig,
    checkpoint: SearchCheckpoint | None = None,
    *,
    on_hit: Callable[[SearchHit], None] | None = None,
    on_progress: Callable[[OddRange, SearchCheckpoint], None] | None = None,
) -> tuple[list[SearchHit], SearchCheckpoint]:
    """Scan odd roots in [s_min, s_max], skipping ranges already covered.

    Returns the hits found in newly covered territory (hits inside the
    resumed checkpoint's coverage are never re-reported) and the updated
    checkpoint.  The hit list is sorted by k and is identical for any
    worker_count or chunk partitioning.  on_progress fires after each
    completed chunk with the cumulative checkpoint, which is what a
    caller should persist for crash-safe resumption.
    """
    if config.mode is not ScanMode.DIRECT:
        raise DomainError("direct_scan requires a DirectScan configuration")
    fingerprint = config.fingerprint()
    if checkpoint is None:
        checkpoint = SearchCheckpoint.empty(fingerprint)
    elif checkpoint.config_fingerprint != fingerprint:
        raise CheckpointMismatchError(
            "checkpoint fingerprint does not match this configuration"
        )

    todo = subtract_ranges((config.s_min, config.s_max), checkpoint.covered_ranges)
    chunks = _chop(todo, config.chunk_size)
    covered = list(checkpoint.covered_ranges)
    summaries = {(h.k, h.m): h for h in checkpoint.hits}
    hits: list[SearchHit] = []

    def fold(chunk: OddRange, candidates: list[tuple[int, int]]) -> SearchCheckpoint:
        nonlocal covered
        for s, m in candidates:
            hit = _build_hit(s * s, m, config)
            if hit is None:
                continue
            hits.append(hit)
            summaries[(hit.pair.k, hit.pair.m)] = HitSummary(
                hit.pair.k, hit.pair.m, hit.report.classification
            )
            if on_hit is not None:
                on_hit(hit)
        covered = list(normalize_ranges(covered + [chunk]))
        state = SearchCheckpoint(
            config_fingerprint=fingerprint,
            covered_ranges=tuple(covered),
            hits=tuple(summaries[key] for key in sorted(summaries)),
        )
        if on_progress is not None:
            on_progress(chunk, state)
        return state

    state = checkpoint
    if config.worker_count == 1 or len(chunks) <= 1:
        for chunk in chunks:
            state = fold(chunk, _scan_chunk(chunk))
    else:
        with ProcessPoolExecutor(max_workers=config.worker_count) as pool:
            for chunk, candidates in zip(chunks, pool.map(_scan_chunk, chunks)):
                state = fold(chunk, candidates)

    # the requested range is now fully covered even if it was empty
    final = SearchCheckpoint(
        config_fingerprint=fingerprint,
        covered_ranges=normalize_ranges(
            state.covered_ranges + ((config.s_min, config.s_max),)
        ),
        hits=state.hits,
    )
    hits.sort(key=lambda h: h.pair.k)
    return hits, final


def structured_scan(config: SearchConfig) -> list[SearchHit]:
    """Enumerate odd squares by prime support and verify each candidate.

    Depth-first over ascending odd primes p with k multiplied by p^(2e),
    pruning as soon as the partial product exceeds k_bound; every
    candidate therefore appears exactly once.  m counts as a single
    quasi-prime regardless of how it factors, so the distinct-prime bound
    applies to k alone.
    """
    if config.mode is not ScanMode.STRUCTURED:
        raise DomainError("structured_scan requires a StructuredScan configuration")
    assert config.max_distinct_primes is not None and config.k_bound is not None
    k_bound = config.k_bound
    prime_pool = [p for p in primes_below(isqrt(k_bound) + 1) if p % 2 == 1]
    hits: dict[tuple[int, int], SearchHit] = {}

    def consider(k: int, factors: list[tuple[int, int]]) -> None:
        sigma_k = 1
        for p, e in factors:
            sigma_k *= (p ** (e + 1) - 1) // (p - 1)
        d_k = 2 * k - sigma_k
        if d_k <= 0 or sigma_k % d_k != 0:
            return
        m = sigma_k // d_k
        if m <= 1:
            return
        hit = _build_hit(k, m, config)
        if hit is not None:
            hits[(k, m)] = hit

    def dfs(start: int, k_acc: int, factors: list[tuple[int, int]]) -> None:
        for idx in range(start, len(prime_pool)):
            p = prime_pool[idx]
            square = p * p
            value = k_acc * square
            if value > k_bound:
                break  # later primes are larger still
            exponent = 2
            while value <= k_bound:
                chosen = factors + [(p, exponent)]
                consider(value, chosen)
                if len(chosen) < config.max_distinct_primes:
                    dfs(idx + 1, value, chosen)
                exponent += 2
                value *= square
    dfs(0, 1, [])
    return [hits[key] for key in sorted(hits)]
