"""Service requirement catalog and feasibility checks.

The built-in catalog lists downstream throughput figures published by the
major video platforms per resolution/device, the generic 4K VoD/live
figures, and the four mobile VR/AR (MoVAR) evolution stages up to the
1 Gbit/s, sub-millisecond "ultimate experience". Rows with a published
range store the upper bound as the planning requirement and keep the range
as metadata. The catalog can be replaced from a TOML file
(:func:`load_catalog_file`).

The MoVAR calculator multiplies pixels x bits/pixel x frame rate into a
gross rate and divides by the lossy-compression band for the net range.
For the reference 215M-pixel workload the product (51.6 Gbit/s) disagrees
with the widely quoted 48 Gbit/s planning figure and its 0.7-1.4 Gbit/s
net range; the calculator reports the computed values and flags the
mismatch instead of reconciling it silently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Sequence

from ._toml import InputFileError, load_toml, reject_unknown_keys, typed
from .throughput import Limit, PathMetrics, mathis_throughput, required_rtt_for_throughput

__all__ = [
    "MovarParams",
    "MovarRequirement",
    "FeasibilityResult",
    "ServiceProfile",
    "builtin_catalog",
    "compression_gain",
    "feasibility",
    "load_catalog_file",
    "lookup",
    "movar_requirement",
]

MBPS = 1e6
GBPS = 1e9

# Widely quoted planning figures for the minimum 215M-pixel mobile-VR
# workload; kept for comparison because the straight pixel-rate product
# does not reproduce them.
REFERENCE_GROSS_RATE = 48 * GBPS
REFERENCE_NET_RATE_MIN = 0.7 * GBPS
REFERENCE_NET_RATE_MAX = 1.4 * GBPS
_REFERENCE_REL_TOL = 0.05


@dataclass(frozen=True, kw_only=True)
class ServiceProfile:
    """A named application and what it needs from the network."""

    name: str
    required_throughput: float  # bits/second
    max_rtt: float | None = None  # seconds
    live: bool = False
    throughput_range: tuple[float, float] | None = None
    metadata: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not (math.isfinite(self.required_throughput) and self.required_throughput > 0):
            raise ValueError(
                f"required_throughput must be > 0 bits/s, got {self.required_throughput!r}")
        if self.max_rtt is not None and not (math.isfinite(self.max_rtt) and self.max_rtt > 0):
            raise ValueError(f"max_rtt must be > 0 seconds, got {self.max_rtt!r}")
        if self.throughput_range is not None:
            lo, hi = self.throughput_range
            if not 0 < lo <= hi:
                raise ValueError(f"throughput_range must satisfy 0 < lo <= hi, got {self.throughput_range!r}")


def _movar(name: str, mbps: float, minutes: int, **meta: str) -> ServiceProfile:
    return ServiceProfile(
        name=name, required_throughput=mbps * MBPS, live=True,
        max_rtt=1e-3 if name == "MoVAR-UE" else None,
        metadata={"class": "MoVAR", "max_time_of_use": f"{minutes} min", **meta},
    )


def builtin_catalog() -> list[ServiceProfile]:
    """The built-in service catalog (platform figures plus MoVAR stages)."""
    tv = {"device": "TV"}
    phone = {"device": "smartphone"}
    return [
        ServiceProfile(name="Netflix SD TV", required_throughput=3.0 * MBPS,
                       metadata={"resolution": "SD", **tv}),
        ServiceProfile(name="Netflix HD TV", required_throughput=5.0 * MBPS,
                       metadata={"resolution": "HD", **tv}),
        ServiceProfile(name="Netflix UHD", required_throughput=25.0 * MBPS,
                       metadata={"resolution": "UHD", **tv}),
        ServiceProfile(name="YouTube SD smartphone", required_throughput=0.5 * MBPS,
                       metadata={"resolution": "SD", **phone}),
        ServiceProfile(name="YouTube SD TV", required_throughput=3.0 * MBPS,
                       metadata={"resolution": "SD", **tv}),
        ServiceProfile(name="YouTube HD smartphone", required_throughput=3.0 * MBPS,
                       metadata={"resolution": "HD", **phone}),
        ServiceProfile(name="YouTube HD TV", required_throughput=5.0 * MBPS,
                       throughput_range=(2.5 * MBPS, 5.0 * MBPS),
                       metadata={"resolution": "HD", "notes": "lower bound is 720p", **tv}),
        ServiceProfile(name="YouTube HD TV live", required_throughput=13.0 * MBPS,
                       throughput_range=(7.0 * MBPS, 13.0 * MBPS), live=True,
                       metadata={"resolution": "HD", **tv}),
        ServiceProfile(name="YouTube UHD TV", required_throughput=25.0 * MBPS,
                       throughput_range=(15.0 * MBPS, 25.0 * MBPS),
                       metadata={"resolution": "UHD", **tv}),
        ServiceProfile(name="Amazon Prime Video SD TV", required_throughput=0.9 * MBPS,
                       metadata={"resolution": "SD", **tv}),
        ServiceProfile(name="Amazon Prime Video HD TV", required_throughput=3.5 * MBPS,
                       metadata={"resolution": "HD", **tv}),
        ServiceProfile(name="Apple TV SD", required_throughput=2.5 * MBPS,
                       metadata={"resolution": "SD", **tv}),
        ServiceProfile(name="Apple TV HD", required_throughput=8.0 * MBPS,
                       metadata={"resolution": "HD", "notes": "6.0 for 720p mid definition", **tv}),
        ServiceProfile(name="DAZN SD smartphone", required_throughput=2.0 * MBPS,
                       metadata={"resolution": "SD", **phone}),
        ServiceProfile(name="DAZN HD smartphone", required_throughput=3.5 * MBPS,
                       metadata={"resolution": "HD", **phone}),
        ServiceProfile(name="DAZN HD TV", required_throughput=8.0 * MBPS,
                       throughput_range=(6.5 * MBPS, 8.0 * MBPS),
                       metadata={"resolution": "HD", "notes": "high frame rate", **tv}),
        # Generic 4K streaming floors: VoD compresses further, live cannot.
        ServiceProfile(name="VoD-4K", required_throughput=15.0 * MBPS,
                       metadata={"resolution": "UHD"}),
        ServiceProfile(name="live-4K", required_throughput=25.0 * MBPS, live=True,
                       metadata={"resolution": "UHD"}),
        _movar("MoVAR-ES", 25.0, 20, stage="Early", field_of_view="90 deg",
               resolution="2K 3840x1920", color_depth="8 bit", frame_rate="30 fps",
               compression_ratio="165:1", equivalent_tv="240p"),
        _movar("MoVAR-EL", 100.0, 20, stage="Entry level", field_of_view="90 deg",
               resolution="4K 7680x3840", color_depth="8 bit", frame_rate="30 fps",
               compression_ratio="165:1", equivalent_tv="SD"),
        _movar("MoVAR-AE", 400.0, 60, stage="Advanced experience", field_of_view="120 deg",
               resolution="8K 11520x5760", color_depth="10 bit", frame_rate="60 fps",
               compression_ratio="215:1", equivalent_tv="HD"),
        _movar("MoVAR-UE", 1000.0, 60, stage="Ultimate experience", field_of_view="120 deg",
               resolution="16K 23040x11520", color_depth="12 bit", frame_rate="120 fps",
               compression_ratio="350:1", equivalent_tv="UHD"),
    ]


def lookup(name: str, catalog: Sequence[ServiceProfile] | None = None) -> ServiceProfile:
    """Find a profile by exact name; error lists the known names."""
    profiles = builtin_catalog() if catalog is None else catalog
    for profile in profiles:
        if profile.name == name:
            return profile
    known = ", ".join(p.name for p in profiles)
    raise ValueError(f"unknown service {name!r}; known services: {known}")


_CATALOG_KEYS = ("name", "throughput_mbps", "throughput_range_mbps", "live",
                 "max_rtt_ms", "metadata")


def profile_from_table(entry: dict, where: str) -> ServiceProfile:
    """Build a profile from one TOML service table (catalog file or inline)."""
    reject_unknown_keys(entry, _CATALOG_KEYS, where)
    name = typed(entry, "name", str, where, required=True)
    mbps = typed(entry, "throughput_mbps", (int, float), where)
    range_mbps = typed(entry, "throughput_range_mbps", list, where)
    if (mbps is None) == (range_mbps is None):
        raise InputFileError(
            f"{where}: give exactly one of throughput_mbps / throughput_range_mbps")
    rng = None
    if range_mbps is not None:
        if len(range_mbps) != 2 or not all(isinstance(v, (int, float)) for v in range_mbps):
            raise InputFileError(f"{where}: throughput_range_mbps must be [low, high]")
        rng = (range_mbps[0] * MBPS, range_mbps[1] * MBPS)
        required = rng[1]
    else:
        required = mbps * MBPS
    max_rtt_ms = typed(entry, "max_rtt_ms", (int, float), where)
    metadata = typed(entry, "metadata", dict, where, default={})
    for key, value in metadata.items():
        if not isinstance(value, str):
            raise InputFileError(f"{where}.metadata.{key}: values must be strings")
    try:
        return ServiceProfile(
            name=name, required_throughput=required,
            max_rtt=None if max_rtt_ms is None else max_rtt_ms * 1e-3,
            live=typed(entry, "live", bool, where, default=False),
            throughput_range=rng, metadata=dict(metadata))
    except ValueError as exc:
        raise InputFileError(f"{where}: {exc}") from None


def load_catalog_file(path: str | Path) -> list[ServiceProfile]:
    """Load a replacement catalog from a TOML file of ``[[service]]`` tables.

    Keys per service: ``name`` (required), exactly one of ``throughput_mbps``
    / ``throughput_range_mbps`` (range rows plan on the upper bound),
    optional ``live``, ``max_rtt_ms`` and a string-valued ``metadata`` table.
    """
    data = load_toml(path)
    reject_unknown_keys(data, ("service",), str(path))
    entries = data.get("service")
    if not isinstance(entries, list) or not entries:
        raise InputFileError(f"{path}: expected at least one [[service]] table")
    profiles = []
    seen: set[str] = set()
    for idx, entry in enumerate(entries):
        profile = profile_from_table(entry, f"{path}:[[service]] #{idx + 1}")
        if profile.name in seen:
            raise InputFileError(f"{path}: duplicate service name {profile.name!r}")
        seen.add(profile.name)
        profiles.append(profile)
    return profiles


@dataclass(frozen=True, kw_only=True)
class MovarParams:
    """Inputs of the mobile-VR throughput budget.

    Defaults are the minimum full-FOV workload: 215M pixels (170M foveal +
    45M peripheral), 8 bits/pixel, 30 frames/s, lossy compression between
    15x and 30x. ``foveation_divisor`` optionally applies the ~10x foveated-
    rendering workload cut before compression; it defaults to off (1.0)
    because whether that cut is already inside the 15-30x factor is
    undetermined.
    """

    total_pixels: int = 215_000_000
    bits_per_pixel: int = 8
    frame_rate: float = 30.0
    compression_min: float = 15.0
    compression_max: float = 30.0
    foveation_divisor: float = 1.0

    def __post_init__(self) -> None:
        for name in ("total_pixels", "bits_per_pixel", "frame_rate",
                     "compression_min", "compression_max"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be > 0, got {getattr(self, name)!r}")
        if self.compression_min > self.compression_max:
            raise ValueError(
                f"compression_min must be <= compression_max, got "
                f"{self.compression_min!r} > {self.compression_max!r}")
        if not self.foveation_divisor >= 1:
            raise ValueError(
                f"foveation_divisor must be >= 1, got {self.foveation_divisor!r}")


@dataclass(frozen=True, kw_only=True)
class MovarRequirement:
    """Computed VR throughput budget plus the reference figures it is checked against.

    ``matches_reference`` is False when the computed gross rate strays more
    than 5% from the quoted 48 Gbit/s; the mismatch is reported, never
    absorbed into the computation.
    """

    gross_rate: float
    net_rate_min: float
    net_rate_max: float
    reference_gross_rate: float = REFERENCE_GROSS_RATE
    reference_net_rate_min: float = REFERENCE_NET_RATE_MIN
    reference_net_rate_max: float = REFERENCE_NET_RATE_MAX
    matches_reference: bool = False


def movar_requirement(p: MovarParams) -> MovarRequirement:
    """Gross pixel rate and the net range after lossy compression."""
    gross = p.total_pixels * p.bits_per_pixel * p.frame_rate / p.foveation_divisor
    return MovarRequirement(
        gross_rate=gross,
        net_rate_min=gross / p.compression_max,
        net_rate_max=gross / p.compression_min,
        matches_reference=math.isclose(gross, REFERENCE_GROSS_RATE,
                                       rel_tol=_REFERENCE_REL_TOL),
    )


@dataclass(frozen=True, kw_only=True)
class FeasibilityResult:
    """Can a path carry a service, and if not, which constraint binds."""

    feasible: bool
    binding: Limit
    rtt_needed: float  # seconds


def feasibility(service: ServiceProfile, path: PathMetrics) -> FeasibilityResult:
    """Check a service against a path.

    Feasible when the throughput estimate covers the requirement and any
    hard latency bound is met. ``binding`` is Bit-Rate when the access rate
    itself is short (no latency work can fix that), Latency-Loss when the
    latency/loss side binds or the hard RTT bound fails, None when feasible.
    ``rtt_needed`` is the RTT at which the latency/loss term would exactly
    meet the requirement on this path's loss ratio.
    """
    estimate = mathis_throughput(path)
    meets_throughput = estimate.throughput >= service.required_throughput
    meets_rtt = service.max_rtt is None or path.rtt <= service.max_rtt
    rtt_needed = required_rtt_for_throughput(
        service.required_throughput, path.plr, path.mss, path.c)
    if meets_throughput and meets_rtt:
        binding = Limit.NONE
    elif path.bit_rate < service.required_throughput:
        binding = Limit.BIT_RATE
    else:
        binding = Limit.LATENCY_LOSS
    return FeasibilityResult(feasible=meets_throughput and meets_rtt,
                             binding=binding, rtt_needed=rtt_needed)


def compression_gain(current_rate: float, factor: float) -> float:
    """Source rate after applying a compression factor >= 1.

    VoD only as a planning step; live streams cannot take the extra encoding
    delay, which callers surface as a warning.
    """
    if not (math.isfinite(factor) and factor >= 1):
        raise ValueError(f"compression factor must be >= 1, got {factor!r}")
    if not (math.isfinite(current_rate) and current_rate > 0):
        raise ValueError(f"current_rate must be > 0 bits/s, got {current_rate!r}")
    return current_rate / factor
