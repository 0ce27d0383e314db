"""Zipf-like content popularity and ideal transparent-cache hit ratio.

Request probability for the rank-``n`` content is proportional to
``n**-alpha`` with alpha typically between 0.64 and 0.83 for web/video
workloads. A transparent cache holding the top-K contents then serves a
request with probability ``HR = sum(j**-alpha, j<=K) / sum(j**-alpha, j<=N)``.

Sums are exact finite summations, never the continuous-integral shortcut:
at catalog sizes up to ~1e7 the summation is cheap (compiled kernel when
available) and avoids the several-point hit-ratio error the integral
approximation introduces. Prefix sums are memoized per (catalog size,
alpha); cached arrays are written once and must be treated as read-only,
which makes concurrent readers safe.

Steady state only: the cache always holds exactly the top-K contents, with
no churn or eviction dynamics.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import isfinite
from typing import Sequence

from ._backend import power_prefix_sums

__all__ = [
    "CachePolicy",
    "ZipfCatalog",
    "hit_ratio",
    "min_fraction_for_hit_ratio",
    "min_stored_for_hit_ratio",
    "popularity",
]


@dataclass(frozen=True, kw_only=True)
class ZipfCatalog:
    """Content catalog: size and popularity skew."""

    n_items: int
    alpha: float

    def __post_init__(self) -> None:
        if not isinstance(self.n_items, int) or self.n_items < 1:
            raise ValueError(f"n_items must be an integer >= 1, got {self.n_items!r}")
        if not (isfinite(self.alpha) and self.alpha > 0):
            raise ValueError(f"alpha must be > 0, got {self.alpha!r}")


@dataclass(frozen=True, kw_only=True)
class CachePolicy:
    """Ideal top-K cache: stores the K most popular contents."""

    stored_items: int

    def __post_init__(self) -> None:
        if not isinstance(self.stored_items, int) or self.stored_items < 0:
            raise ValueError(
                f"stored_items must be an integer >= 0, got {self.stored_items!r}")


@lru_cache(maxsize=8)
def _prefix_sums(n_items: int, alpha: float) -> Sequence[float]:
    # Write-once per key; lru_cache makes concurrent readers safe.
    return power_prefix_sums(n_items, -alpha)


def popularity(catalog: ZipfCatalog, rank: int) -> float:
    """Request probability of the ``rank``-th most popular content (1-based)."""
    if not 1 <= rank <= catalog.n_items:
        raise ValueError(f"rank must lie in 1..{catalog.n_items}, got {rank!r}")
    total = _prefix_sums(catalog.n_items, catalog.alpha)[-1]
    return float(rank) ** -catalog.alpha / total


def hit_ratio(catalog: ZipfCatalog, policy: CachePolicy) -> float:
    """Probability that a request is served from the top-K cache.

    Parameters
    ----------
    catalog : ZipfCatalog
        Catalog size N and skew alpha.
    policy : CachePolicy
        Number of stored contents K, 0 <= K <= N.

    Returns
    -------
    float
        ``sum(j**-alpha, j<=K) / sum(j**-alpha, j<=N)``; 0.0 for an empty
        cache and exactly 1.0 for K = N.
    """
    k = policy.stored_items
    if k > catalog.n_items:
        raise ValueError(
            f"stored_items={k} exceeds catalog size {catalog.n_items}")
    if k == 0:
        return 0.0
    prefix = _prefix_sums(catalog.n_items, catalog.alpha)
    return prefix[k - 1] / prefix[-1]


def min_stored_for_hit_ratio(catalog: ZipfCatalog, target_hr: float) -> int:
    """Smallest K whose hit ratio reaches ``target_hr`` (monotone search)."""
    if not 0 <= target_hr <= 1:
        raise ValueError(f"target_hr must lie in [0, 1], got {target_hr!r}")
    if target_hr == 0:
        return 0
    prefix = _prefix_sums(catalog.n_items, catalog.alpha)
    total = prefix[-1]
    # Binary search on the realized ratio so the minimality contract holds in
    # float arithmetic: HR(k) >= target and HR(k-1) < target.
    lo, hi = 1, catalog.n_items
    while lo < hi:
        mid = (lo + hi) // 2
        if prefix[mid - 1] / total >= target_hr:
            hi = mid
        else:
            lo = mid + 1
    return lo


def min_fraction_for_hit_ratio(catalog: ZipfCatalog, target_hr: float) -> float:
    """Smallest stored fraction K/N whose hit ratio reaches ``target_hr``."""
    return min_stored_for_hit_ratio(catalog, target_hr) / catalog.n_items
