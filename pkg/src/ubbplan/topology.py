"""Three-tier network model and power-law traffic distribution.

Core nodes feed metro nodes over rings, metro nodes feed access nodes over
rings. Total downstream traffic is split across metro nodes by a power law
``i**m`` and, within each metro ring, across access nodes by ``k**m'``; an
access node's share of the network total is the product of the two
normalized weights. Ring membership is kept as metadata only (parent ids);
no link capacities are modelled.

Access shares are constructed so that the shares under one metro node sum
to that metro node's share *exactly* in floating point: the last node of
each ring absorbs the accumulated rounding residual (a sub-ulp correction,
computed with compensated arithmetic). Downstream prefix-sum consumers rely
on this.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import fsum, isfinite
from pathlib import Path
from typing import Sequence

__all__ = [
    "NodeTraffic",
    "TopologyParams",
    "TrafficDistribution",
    "access_shares",
    "load_order_file",
    "metro_shares",
    "sort_by_traffic",
]


@dataclass(frozen=True, kw_only=True)
class TopologyParams:
    """Node counts and ring sizes of the regular three-tier model."""

    n_core: int = 5
    n_metro: int = 25
    n_access: int = 250
    metro_per_ring: int = 5
    access_per_ring: int = 10

    def __post_init__(self) -> None:
        for name in ("n_core", "n_metro", "n_access", "metro_per_ring", "access_per_ring"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 1:
                raise ValueError(f"{name} must be an integer >= 1, got {value!r}")
        if self.n_metro != self.n_core * self.metro_per_ring:
            raise ValueError(
                f"irregular topology: n_metro={self.n_metro} but "
                f"n_core * metro_per_ring = {self.n_core * self.metro_per_ring}"
            )
        if self.n_access != self.n_metro * self.access_per_ring:
            raise ValueError(
                f"irregular topology: n_access={self.n_access} but "
                f"n_metro * access_per_ring = {self.n_metro * self.access_per_ring}"
            )


@dataclass(frozen=True, kw_only=True)
class TrafficDistribution:
    """Power-law exponents and the network-wide peak downstream rate."""

    metro_exponent: float = -0.6
    access_exponent: float = -0.99
    total_throughput: float = 1.0  # bits/second

    def __post_init__(self) -> None:
        if not (isfinite(self.metro_exponent) and self.metro_exponent <= 0):
            raise ValueError(f"metro_exponent must be <= 0, got {self.metro_exponent!r}")
        if not (isfinite(self.access_exponent) and self.access_exponent <= 0):
            raise ValueError(f"access_exponent must be <= 0, got {self.access_exponent!r}")
        if not (isfinite(self.total_throughput) and self.total_throughput > 0):
            raise ValueError(
                f"total_throughput must be > 0 bits/s, got {self.total_throughput!r}")


@dataclass(frozen=True)
class NodeTraffic:
    """One access node's slice of the network traffic."""

    node_id: int
    metro_id: int
    share: float
    throughput: float


def _normalized_power_weights(n: int, exponent: float) -> list[float]:
    weights = [float(i) ** exponent for i in range(1, n + 1)]
    total = fsum(weights)
    return [w / total for w in weights]


def _two_sum(a: float, b: float) -> tuple[float, float]:
    # Knuth TwoSum: s + err reproduces a + b exactly.
    s = a + b
    bv = s - a
    err = (a - (s - bv)) + (b - bv)
    return s, err


def _partition_exact(amount: float, weights: Sequence[float]) -> list[float]:
    """Split ``amount`` by ``weights`` (which sum to ~1) so the parts sum back
    to ``amount`` exactly: the last part absorbs the rounding residual."""
    if len(weights) == 1:
        return [amount]
    parts = [amount * w for w in weights[:-1]]
    hi = 0.0
    lo = 0.0
    for p in parts:
        hi, err = _two_sum(hi, p)
        lo += err
    parts.append((amount - hi) - lo)
    return parts


def metro_shares(params: TopologyParams, dist: TrafficDistribution) -> list[float]:
    """Fraction of total downstream traffic per metro node, busiest first.

    ``share(i) = i**m / sum(j**m, j=1..n_metro)``; the list is non-increasing
    and sums to 1 to within accumulated rounding (< 1e-12 at these sizes).
    """
    return _normalized_power_weights(params.n_metro, dist.metro_exponent)


def access_shares(params: TopologyParams, dist: TrafficDistribution) -> list[NodeTraffic]:
    """Per-access-node traffic, metro by metro, ring position by position.

    Node ids run 1..n_access; metro ``i`` owns ids
    ``(i-1)*access_per_ring + 1 .. i*access_per_ring``, ordered by within-ring
    rank. Each node's ``share`` is metro share times its normalized in-ring
    weight, with the ring's last node carrying the rounding residual so the
    ring sums exactly to the metro share. ``throughput`` is
    ``share * total_throughput``.
    """
    metro = metro_shares(params, dist)
    ring_weights = _normalized_power_weights(params.access_per_ring, dist.access_exponent)
    nodes: list[NodeTraffic] = []
    node_id = 1
    for metro_id, mshare in enumerate(metro, start=1):
        for share in _partition_exact(mshare, ring_weights):
            nodes.append(NodeTraffic(node_id=node_id, metro_id=metro_id, share=share,
                                     throughput=share * dist.total_throughput))
            node_id += 1
    return nodes


def sort_by_traffic(nodes: Sequence[NodeTraffic]) -> list[int]:
    """Node ids in non-increasing share order; ties break on ascending id.

    Default deployment order: a stated proxy for an external cost-saving
    ranking, which can be supplied via :func:`load_order_file` instead.
    """
    if not nodes:
        raise ValueError("nodes must be non-empty")
    return [n.node_id for n in sorted(nodes, key=lambda n: (-n.share, n.node_id))]


def load_order_file(path: str | Path, n_access: int) -> list[int]:
    """Read a deployment order: one node id per line, blank lines ignored.

    The ids must form a permutation of 1..n_access.
    """
    order: list[int] = []
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        try:
            order.append(int(line))
        except ValueError:
            raise ValueError(f"{path}:{lineno}: not a node id: {line!r}") from None
    if sorted(order) != list(range(1, n_access + 1)):
        raise ValueError(
            f"{path}: order must be a permutation of 1..{n_access} "
            f"(got {len(order)} ids)"
        )
    return order
