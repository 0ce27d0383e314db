"""Edge-cache speed-up per node and network-wide speed-up curves.

Placing a transparent cache in an access node multiplies the node's
aggregate throughput by ``SU = HR * (RTT/RTT_q - 1) + 1`` where RTT and
RTT_q are the round-trip times to the origin and to the edge cache, and HR
is the cache hit ratio. Packet loss is assumed unchanged by the deployment
(a conservative reading), so the factor depends on RTT ratios and HR only;
a per-node loss override widens the ratio when that assumption is dropped.

The network speed-up after equipping the first k nodes of a deployment
order is the traffic-share-weighted mean of per-node factors, with
unequipped nodes contributing factor 1:

    NSU(k) = 1 + sum(share(j) * (SU(j) - 1) for the k equipped nodes)

which is exactly 1 at k = 0 and the full weighted mean at k = n. Curve
evaluation folds the per-node gains in deployment order with compensated
summation, so results are deterministic for a given order.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import fsum, isfinite, sqrt
from typing import Mapping, Sequence

from .topology import NodeTraffic

__all__ = [
    "CalibrationError",
    "NodeEccConfig",
    "PlacementPlan",
    "SpeedupCurve",
    "calibrate_uniform_scenario",
    "greedy_order",
    "network_speedup",
    "node_speedup",
    "speedup_curve",
]

DEFAULT_MAX_RTT_RATIO = 1e4


class CalibrationError(ValueError):
    """No RTT ratio can realize the requested network speed-up."""


@dataclass(frozen=True, kw_only=True)
class NodeEccConfig:
    """Edge-cache parameters of one access node.

    ``rtt_without`` is the average end-user round-trip to the origin server,
    ``rtt_with`` the average round-trip to the cache at this node; the cache
    can never be farther than the origin (equality allowed).

    Loss is conservatively assumed unchanged by the deployment. The optional
    ``plr_without``/``plr_with`` pair overrides that: when set, the node's
    distance gain becomes the full ``(rtt * sqrt(plr))`` ratio instead of the
    RTT ratio alone. Defaults off.
    """

    node_id: int
    rtt_without: float
    rtt_with: float
    hit_ratio: float
    plr_without: float | None = None
    plr_with: float | None = None

    def __post_init__(self) -> None:
        if not (isfinite(self.rtt_with) and self.rtt_with > 0):
            raise ValueError(f"rtt_with must be > 0 seconds, got {self.rtt_with!r}")
        if not (isfinite(self.rtt_without) and self.rtt_without >= self.rtt_with):
            raise ValueError(
                f"rtt_without must be >= rtt_with, got "
                f"{self.rtt_without!r} < {self.rtt_with!r}")
        if not 0 <= self.hit_ratio <= 1:
            raise ValueError(f"hit_ratio must lie in [0, 1], got {self.hit_ratio!r}")
        if (self.plr_without is None) != (self.plr_with is None):
            raise ValueError("plr_without and plr_with go together")
        if self.plr_with is not None:
            if not 0 < self.plr_with <= 1:
                raise ValueError(f"plr_with must lie in (0, 1], got {self.plr_with!r}")
            if not self.plr_without >= self.plr_with:
                raise ValueError(
                    f"plr_without must be >= plr_with, got "
                    f"{self.plr_without!r} < {self.plr_with!r}")
            if not self.plr_without <= 1:
                raise ValueError(f"plr_without must lie in (0, 1], got {self.plr_without!r}")


@dataclass(frozen=True, kw_only=True)
class PlacementPlan:
    """Deployment sequence and how many of its nodes are equipped."""

    order: tuple[int, ...]
    equipped_count: int

    def __post_init__(self) -> None:
        if len(set(self.order)) != len(self.order):
            raise ValueError("order contains duplicate node ids")
        if not 0 <= self.equipped_count <= len(self.order):
            raise ValueError(
                f"equipped_count must lie in 0..{len(self.order)}, "
                f"got {self.equipped_count!r}")


@dataclass(frozen=True)
class SpeedupCurve:
    """Network speed-up as a function of equipped-node count.

    ``points[k] == (k, NSU(k))`` for k = 0..n; the first point is (0, 1.0).
    """

    points: tuple[tuple[int, float], ...]

    @property
    def final(self) -> float:
        return self.points[-1][1]


def node_speedup(cfg: NodeEccConfig) -> float:
    """Throughput multiplier from the cache at one node; >= 1 by construction."""
    distance_ratio = cfg.rtt_without / cfg.rtt_with
    if cfg.plr_with is not None:
        distance_ratio *= sqrt(cfg.plr_without) / sqrt(cfg.plr_with)
    return cfg.hit_ratio * (distance_ratio - 1.0) + 1.0


def _shares_by_id(traffic: Sequence[NodeTraffic]) -> dict[int, float]:
    if not traffic:
        raise ValueError("traffic must be non-empty")
    shares = {n.node_id: n.share for n in traffic}
    if len(shares) != len(traffic):
        raise ValueError("duplicate node ids in traffic")
    total = fsum(shares.values())
    if abs(total - 1.0) > 1e-9:
        raise ValueError(f"traffic shares must sum to 1, got {total!r}")
    return shares


def _gain(share: float, cfg: NodeEccConfig) -> float:
    return share * (node_speedup(cfg) - 1.0)


def network_speedup(traffic: Sequence[NodeTraffic],
                    configs: Mapping[int, NodeEccConfig],
                    plan: PlacementPlan) -> float:
    """Network-wide speed-up with the plan's first ``equipped_count`` nodes equipped."""
    shares = _shares_by_id(traffic)
    unknown = set(plan.order) - shares.keys()
    if unknown:
        raise ValueError(f"order references unknown node ids: {sorted(unknown)}")
    if set(plan.order) != shares.keys():
        raise ValueError("order must cover every traffic node exactly once")
    equipped = plan.order[: plan.equipped_count]
    missing = [j for j in equipped if j not in configs]
    if missing:
        raise ValueError(f"no ECC config for equipped nodes: {missing}")
    return 1.0 + fsum(_gain(shares[j], configs[j]) for j in equipped)


def speedup_curve(traffic: Sequence[NodeTraffic],
                  configs: Mapping[int, NodeEccConfig],
                  order: Sequence[int]) -> SpeedupCurve:
    """Evaluate the network speed-up for every prefix of ``order``.

    Non-decreasing in k because per-node factors are >= 1. The fold order is
    the deployment order, with Neumaier compensation, so the curve is
    bit-reproducible.
    """
    shares = _shares_by_id(traffic)
    if set(order) != shares.keys() or len(set(order)) != len(order):
        raise ValueError("order must be a permutation of the traffic node ids")
    missing = [j for j in order if j not in configs]
    if missing:
        raise ValueError(f"no ECC config for nodes: {missing}")
    points = [(0, 1.0)]
    s = 0.0
    comp = 0.0
    for k, j in enumerate(order, start=1):
        gain = _gain(shares[j], configs[j])
        t = s + gain
        if abs(s) >= abs(gain):
            comp += (s - t) + gain
        else:
            comp += (gain - t) + s
        s = t
        points.append((k, 1.0 + (s + comp)))
    return SpeedupCurve(points=tuple(points))


def greedy_order(traffic: Sequence[NodeTraffic],
                 configs: Mapping[int, NodeEccConfig]) -> list[int]:
    """Deployment order by descending ``share * (SU - 1)``, ties on ascending id.

    Maximizes NSU(k) for every k simultaneously: each prefix then holds the k
    largest gains.
    """
    shares = _shares_by_id(traffic)
    missing = [j for j in shares if j not in configs]
    if missing:
        raise ValueError(f"no ECC config for nodes: {sorted(missing)}")
    return sorted(shares, key=lambda j: (-_gain(shares[j], configs[j]), j))


def calibrate_uniform_scenario(target_nsu: float, hit_ratio: float,
                               max_ratio: float = DEFAULT_MAX_RTT_RATIO) -> float:
    """RTT/RTT_q ratio making every node's speed-up equal ``target_nsu``.

    Inverse of the per-node factor under a uniform hit ratio:
    ``ratio = (target_nsu - 1) / hit_ratio + 1``. Raises
    :class:`CalibrationError` when no ratio at or below ``max_ratio`` can
    reach the target (including a zero hit ratio with target > 1).
    """
    if not (isfinite(target_nsu) and target_nsu >= 1):
        raise ValueError(f"target_nsu must be >= 1, got {target_nsu!r}")
    if not 0 <= hit_ratio <= 1:
        raise ValueError(f"hit_ratio must lie in [0, 1], got {hit_ratio!r}")
    if target_nsu == 1.0:
        return 1.0
    if hit_ratio == 0:
        raise CalibrationError(
            f"target_nsu={target_nsu} is unreachable with hit_ratio=0 "
            f"(the cache never hits)")
    ratio = (target_nsu - 1.0) / hit_ratio + 1.0
    if ratio > max_ratio:
        raise CalibrationError(
            f"target_nsu={target_nsu} needs RTT ratio {ratio:.6g} "
            f"> max_ratio {max_ratio:.6g} at hit_ratio={hit_ratio}")
    return ratio
