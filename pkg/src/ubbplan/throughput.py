"""End-to-end application throughput bounds and the UBB access trap.

A TCP flow's steady-state throughput is capped by the smaller of the
available bit-rate and a latency/loss term ``c * MSS / (RTT * sqrt(PLR))``.
On ultra-broadband access links the latency/loss term usually binds, so the
bandwidth utilization ratio ``r = throughput / bit_rate`` collapses well
below 1 and added access capacity buys nothing: the "UBB access trap".

Units are canonical throughout: durations in seconds, rates in bits/second,
segment sizes in bytes, loss ratios as dimensionless fractions in (0, 1].
Milliseconds, percent and Mbit/s exist only at explicit conversion
boundaries (:meth:`PathMetrics.from_display_units`, CLI flags), because the
``sqrt(PLR)`` term silently absorbs unit mistakes otherwise.

Everything here is an upper bound derived from a deterministic-loss model,
never a measurement; field names say "term", "estimate" or "bound"
accordingly.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from math import fsum
from typing import Sequence

__all__ = [
    "DEFAULT_MSS_BYTES",
    "LTE_MEAN_UTILIZATION",
    "LTE_MEDIAN_UTILIZATION",
    "Limit",
    "PathMetrics",
    "PlrBreakdown",
    "ThroughputEstimate",
    "TrapAssessment",
    "compose_plr",
    "mathis_throughput",
    "required_rtt_for_throughput",
    "throughput_table",
    "ubb_trap_headroom",
    "waste_band",
]

DEFAULT_MSS_BYTES = 1460

# Measured bandwidth utilization of large TCP downlink flows on LTE radio
# links (mean and median); reported as context lines by the trap report.
LTE_MEAN_UTILIZATION = 0.346
LTE_MEDIAN_UTILIZATION = 0.198


class Limit(enum.Enum):
    """Which side of the throughput bound binds."""

    LATENCY_LOSS = "Latency-Loss"
    BIT_RATE = "Bit-Rate"
    NONE = "None"


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ValueError(message)


def _check_rtt(rtt: float) -> None:
    _require(math.isfinite(rtt) and rtt > 0, f"rtt must be > 0 seconds, got {rtt!r}")


def _check_plr(plr: float) -> None:
    _require(math.isfinite(plr) and 0 < plr <= 1,
             f"plr must be a fraction in (0, 1], got {plr!r}")


def _check_mss(mss: float) -> None:
    _require(mss > 0, f"mss must be > 0 bytes, got {mss!r}")


def _check_c(c: float) -> None:
    # Sanity bound, deliberately wider than the typical 0.9-1.2 range so
    # calibration experiments are not rejected.
    _require(math.isfinite(c) and 0.5 <= c <= 2.0,
             f"c must lie in [0.5, 2.0], got {c!r}")


@dataclass(frozen=True, kw_only=True)
class PathMetrics:
    """End-to-end channel parameters of one flow.

    Attributes
    ----------
    rtt : float
        Round-trip time in seconds, > 0.
    plr : float
        Packet-loss ratio as a fraction in (0, 1].
    bit_rate : float
        Available bit-rate for the flow in bits/second, > 0.
    mss : int
        Maximum TCP segment size in bytes (default 1460).
    c : float
        Congestion-control constant; must lie in the [0.5, 2.0] sanity band.
    """

    rtt: float
    plr: float
    bit_rate: float
    mss: int = DEFAULT_MSS_BYTES
    c: float = 1.0

    def __post_init__(self) -> None:
        _check_rtt(self.rtt)
        _check_plr(self.plr)
        _require(math.isfinite(self.bit_rate) and self.bit_rate > 0,
                 f"bit_rate must be > 0 bits/s, got {self.bit_rate!r}")
        _check_mss(self.mss)
        _check_c(self.c)

    @classmethod
    def from_display_units(cls, *, rtt_ms: float, plr_percent: float,
                           bit_rate_mbps: float, mss_bytes: int = DEFAULT_MSS_BYTES,
                           c: float = 1.0) -> "PathMetrics":
        """Build from the display units used in reports (ms, %, Mbit/s)."""
        return cls(rtt=rtt_ms * 1e-3, plr=plr_percent / 100.0,
                   bit_rate=bit_rate_mbps * 1e6, mss=mss_bytes, c=c)


@dataclass(frozen=True, kw_only=True)
class PlrBreakdown:
    """Additive packet-loss decomposition.

    ``plr1`` is the core/big-internet queuing component, ``plr2`` the access
    plus home-network physical-layer component. The two are treated as
    independent, so the end-to-end ratio is their sum. No functional model
    ties ``plr1`` to RTT here; it is an exogenous input.
    """

    plr1: float
    plr2: float

    def __post_init__(self) -> None:
        _require(0 <= self.plr1 <= 1, f"plr1 must lie in [0, 1], got {self.plr1!r}")
        _require(0 <= self.plr2 <= 1, f"plr2 must lie in [0, 1], got {self.plr2!r}")
        _require(self.plr1 + self.plr2 <= 1,
                 f"plr1 + plr2 must not exceed 1, got {self.plr1 + self.plr2!r}")


@dataclass(frozen=True, kw_only=True)
class ThroughputEstimate:
    """Upper-bound throughput estimate for one flow.

    ``throughput`` is exactly ``min(mathis_term, bit_rate)``; ``utilization``
    is ``throughput / bit_rate`` and equals 1.0 exactly when the bit-rate
    side binds (ties resolve to Bit-Rate).
    """

    mathis_term: float
    throughput: float
    utilization: float
    limited_by: Limit


@dataclass(frozen=True, kw_only=True)
class TrapAssessment:
    """Access bit-rate vs. what latency/loss let the flows actually use."""

    required_rate: float
    headroom: float
    trapped: bool


def _loss_latency_term(*, rtt: float, plr: float, mss: float, c: float) -> float:
    return c * (mss * 8.0) / (rtt * math.sqrt(plr))


def mathis_throughput(path: PathMetrics) -> ThroughputEstimate:
    """Estimate the throughput bound for one flow.

    Parameters
    ----------
    path : PathMetrics
        Channel parameters; validated at construction.

    Returns
    -------
    ThroughputEstimate
        The latency/loss term ``c * mss*8 / (rtt * sqrt(plr))`` in bits/s,
        capped at the available bit-rate, with the utilization ratio and the
        binding side of the min.
    """
    term = _loss_latency_term(rtt=path.rtt, plr=path.plr, mss=path.mss, c=path.c)
    if path.bit_rate <= term:
        return ThroughputEstimate(mathis_term=term, throughput=path.bit_rate,
                                  utilization=1.0, limited_by=Limit.BIT_RATE)
    return ThroughputEstimate(mathis_term=term, throughput=term,
                              utilization=term / path.bit_rate,
                              limited_by=Limit.LATENCY_LOSS)


def throughput_table(rtt_grid: Sequence[float], plr_grid: Sequence[float],
                     mss: int = DEFAULT_MSS_BYTES, c: float = 1.0) -> list[list[float]]:
    """Latency/loss throughput terms over an RTT x PLR grid.

    Row ``i`` covers ``plr_grid[i]``, column ``j`` covers ``rtt_grid[j]``;
    cells are in bits/second. The bit-rate cap is deliberately excluded (the
    grid describes what latency and loss alone allow).
    """
    _require(len(rtt_grid) > 0, "rtt_grid must be non-empty")
    _require(len(plr_grid) > 0, "plr_grid must be non-empty")
    _check_mss(mss)
    _check_c(c)
    for rtt in rtt_grid:
        _check_rtt(rtt)
    for plr in plr_grid:
        _check_plr(plr)
    return [
        [_loss_latency_term(rtt=rtt, plr=plr, mss=mss, c=c) for rtt in rtt_grid]
        for plr in plr_grid
    ]


def ubb_trap_headroom(access_bit_rate: float, flows: Sequence[PathMetrics],
                      trap_threshold: float = 1.0) -> TrapAssessment:
    """Check an access link against the rate its flows can actually use.

    ``required_rate`` sums ``mss*8 / (rtt * sqrt(plr))`` over the
    simultaneously active flows, with the congestion constant fixed at 1
    (each flow's own ``c`` is ignored here; the limit condition is defined
    that way). ``headroom`` is ``access_bit_rate / required_rate``; the link
    is flagged trapped when headroom exceeds ``trap_threshold`` (default
    1.0) -- headroom far above 1 means paid-for access capacity sits idle.
    """
    _require(len(flows) > 0, "flows must be non-empty")
    _require(math.isfinite(access_bit_rate) and access_bit_rate > 0,
             f"access_bit_rate must be > 0 bits/s, got {access_bit_rate!r}")
    required = fsum(
        _loss_latency_term(rtt=f.rtt, plr=f.plr, mss=f.mss, c=1.0) for f in flows
    )
    headroom = access_bit_rate / required
    return TrapAssessment(required_rate=required, headroom=headroom,
                          trapped=headroom > trap_threshold)


def waste_band(headroom: float) -> str:
    """Bucket a headroom ratio for reporting.

    ``none`` (<= 1), ``1-2x``, ``2-10x``, ``>10x``. The buckets make the
    qualitative "bit-rate greatly exceeds need" condition actionable.
    """
    if headroom <= 1.0:
        return "none"
    if headroom <= 2.0:
        return "1-2x"
    if headroom <= 10.0:
        return "2-10x"
    return ">10x"


def compose_plr(breakdown: PlrBreakdown) -> float:
    """Total packet-loss ratio from its two independent components."""
    return breakdown.plr1 + breakdown.plr2


def required_rtt_for_throughput(target: float, plr: float,
                                mss: int = DEFAULT_MSS_BYTES, c: float = 1.0) -> float:
    """Largest RTT (seconds) at which the latency/loss term still meets ``target``.

    Inverse of the bound: ``rtt_max = c * mss*8 / (target * sqrt(plr))``.
    """
    _require(math.isfinite(target) and target > 0,
             f"target must be > 0 bits/s, got {target!r}")
    _check_plr(plr)
    _check_mss(mss)
    _check_c(c)
    return c * (mss * 8.0) / (target * math.sqrt(plr))
