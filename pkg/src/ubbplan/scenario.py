"""Scenario files: the batch front end's input format.

A scenario is a TOML file with up to five sections, all optional except
where a command needs them. Unknown keys anywhere are hard errors. All
quantities carry display units in their key names (``_ms``, ``_percent``,
``_mbps``, ``_gbps``) and are converted to canonical units on load.

::

    [topology]          # three-tier node counts (defaults 5/25/250, rings 5/10)
    core_nodes = 5
    metro_nodes = 25
    access_nodes = 250
    metro_per_ring = 5
    access_per_ring = 10

    [traffic]           # power-law split of total downstream traffic
    metro_exponent = -0.6
    access_exponent = -0.99
    total_throughput_gbps = 100.0

    [cache]             # content catalog and cache size
    catalog_size = 1000000
    zipf_alpha = 0.8
    stored_fraction = 0.10        # or: stored_items = 100000

    [ecc]               # edge-cache deployment
    placement = "traffic"         # traffic | greedy | file
    # placement_file = "order.txt"  (required for placement = "file")
    # hit_ratio = 0.5               (default: derived from [cache])
    # exactly one way to fix the RTT gain:
    calibrate_target_nsu = 1.75   # or: rtt_ratio = 2.5
                                  # or: rtt_without_ms = 25.0 + rtt_with_ms = 10.0
    # max_rtt_ratio = 1e4           (calibration feasibility cap)
    # plr_without_percent = 0.3     (optional pair: include the loss ratio in
    # plr_with_percent = 0.1         the distance gain; default assumes loss
    #                                unchanged by the deployment)

    [[ecc.node_overrides]]        # optional per-node deviations
    node_id = 1
    rtt_without_ms = 30.0
    rtt_with_ms = 5.0
    hit_ratio = 0.62

    [services]
    names = ["Netflix UHD", "MoVAR-UE"]
    # catalog_file = "catalog.toml"  (replaces the built-in catalog)

    [[services.inline]]           # ad-hoc profiles, same keys as catalog rows
    name = "custom-8K"
    throughput_mbps = 90.0

    [[paths]]           # named end-to-end channels
    name = "ftth-100"
    rtt_ms = 10.0
    plr_percent = 0.25
    bit_rate_mbps = 100.0
    mss_bytes = 1460    # optional
    c = 1.0             # optional
    flows = 1           # optional: identical simultaneous flows on the line
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from ._toml import InputFileError, load_toml, reject_unknown_keys, typed
from .services import ServiceProfile, builtin_catalog, load_catalog_file, lookup, profile_from_table
from .speedup import NodeEccConfig, calibrate_uniform_scenario, greedy_order
from .throughput import PathMetrics
from .topology import (
    NodeTraffic,
    TopologyParams,
    TrafficDistribution,
    access_shares,
    load_order_file,
    sort_by_traffic,
)
from .zipf import CachePolicy, ZipfCatalog, hit_ratio

__all__ = ["EccSettings", "PathSpec", "Scenario", "ScenarioError", "load_scenario"]


class ScenarioError(InputFileError):
    """Scenario file failed validation."""


@dataclass(frozen=True, kw_only=True)
class PathSpec:
    """A named access line: one flow description plus a concurrency count."""

    name: str
    metrics: PathMetrics
    flows: int = 1


@dataclass(frozen=True, kw_only=True)
class EccSettings:
    """Raw [ecc] section after validation, before per-node resolution."""

    placement: str = "traffic"
    placement_file: Path | None = None
    hit_ratio: float | None = None
    rtt_ratio: float | None = None
    rtt_without: float | None = None
    rtt_with: float | None = None
    calibrate_target_nsu: float | None = None
    max_rtt_ratio: float = 1e4
    plr_without: float | None = None
    plr_with: float | None = None
    node_overrides: tuple[dict[str, Any], ...] = ()


@dataclass(frozen=True, kw_only=True)
class Scenario:
    """A loaded, validated scenario."""

    topology: TopologyParams
    traffic: TrafficDistribution
    catalog: ZipfCatalog | None
    policy: CachePolicy | None
    ecc: EccSettings | None
    services: tuple[ServiceProfile, ...]
    paths: tuple[PathSpec, ...]
    digest: str
    base_dir: Path

    def cache_hit_ratio(self) -> float:
        """Hit ratio implied by the [cache] section."""
        if self.catalog is None or self.policy is None:
            raise ScenarioError("scenario has no [cache] section")
        return hit_ratio(self.catalog, self.policy)

    def resolve_ecc(self) -> tuple[list[NodeTraffic], dict[int, NodeEccConfig],
                                   list[int], float | None]:
        """Materialize the deployment: traffic, per-node configs, order.

        Returns ``(nodes, configs, order, calibrated_ratio)`` where
        ``calibrated_ratio`` is the uniform RTT ratio when calibration was
        requested, else None.
        """
        if self.ecc is None:
            raise ScenarioError("scenario has no [ecc] section")
        ecc = self.ecc
        nodes = access_shares(self.topology, self.traffic)

        base_hr = ecc.hit_ratio if ecc.hit_ratio is not None else self.cache_hit_ratio()
        calibrated = None
        if ecc.calibrate_target_nsu is not None:
            calibrated = calibrate_uniform_scenario(
                ecc.calibrate_target_nsu, base_hr, ecc.max_rtt_ratio)
            rtt_with, rtt_without = 1e-3, calibrated * 1e-3
        elif ecc.rtt_ratio is not None:
            rtt_with, rtt_without = 1e-3, ecc.rtt_ratio * 1e-3
        else:
            rtt_with, rtt_without = ecc.rtt_with, ecc.rtt_without

        configs = {
            n.node_id: NodeEccConfig(node_id=n.node_id, rtt_without=rtt_without,
                                     rtt_with=rtt_with, hit_ratio=base_hr,
                                     plr_without=ecc.plr_without,
                                     plr_with=ecc.plr_with)
            for n in nodes
        }
        for override in ecc.node_overrides:
            node_id = override["node_id"]
            if node_id not in configs:
                raise ScenarioError(
                    f"[[ecc.node_overrides]]: unknown node_id {node_id}")
            base = configs[node_id]
            configs[node_id] = NodeEccConfig(
                node_id=node_id,
                rtt_without=override.get("rtt_without", base.rtt_without),
                rtt_with=override.get("rtt_with", base.rtt_with),
                hit_ratio=override.get("hit_ratio", base.hit_ratio),
                plr_without=base.plr_without,
                plr_with=base.plr_with,
            )

        if ecc.placement == "traffic":
            order = sort_by_traffic(nodes)
        elif ecc.placement == "greedy":
            order = greedy_order(nodes, configs)
        else:
            order = load_order_file(ecc.placement_file, self.topology.n_access)
        return nodes, configs, order, calibrated


_TOP_KEYS = ("topology", "traffic", "cache", "ecc", "services", "paths")
_TOPOLOGY_KEYS = ("core_nodes", "metro_nodes", "access_nodes",
                  "metro_per_ring", "access_per_ring")
_TRAFFIC_KEYS = ("metro_exponent", "access_exponent", "total_throughput_gbps")
_CACHE_KEYS = ("catalog_size", "zipf_alpha", "stored_fraction", "stored_items")
_ECC_KEYS = ("placement", "placement_file", "hit_ratio", "rtt_ratio",
             "rtt_without_ms", "rtt_with_ms", "calibrate_target_nsu",
             "max_rtt_ratio", "plr_without_percent", "plr_with_percent",
             "node_overrides")
_OVERRIDE_KEYS = ("node_id", "rtt_without_ms", "rtt_with_ms", "hit_ratio")
_SERVICES_KEYS = ("names", "catalog_file", "inline")
_PATH_KEYS = ("name", "rtt_ms", "plr_percent", "bit_rate_mbps", "mss_bytes", "c", "flows")

_NUM = (int, float)


def _wrap(where: str, exc: ValueError) -> ScenarioError:
    return ScenarioError(f"{where}: {exc}")


def _load_topology(data: dict[str, Any], where: str) -> TopologyParams:
    reject_unknown_keys(data, _TOPOLOGY_KEYS, where)
    defaults = TopologyParams()
    try:
        return TopologyParams(
            n_core=typed(data, "core_nodes", int, where, defaults.n_core),
            n_metro=typed(data, "metro_nodes", int, where, defaults.n_metro),
            n_access=typed(data, "access_nodes", int, where, defaults.n_access),
            metro_per_ring=typed(data, "metro_per_ring", int, where, defaults.metro_per_ring),
            access_per_ring=typed(data, "access_per_ring", int, where, defaults.access_per_ring),
        )
    except ValueError as exc:
        raise _wrap(where, exc) from None


def _load_traffic(data: dict[str, Any], where: str) -> TrafficDistribution:
    reject_unknown_keys(data, _TRAFFIC_KEYS, where)
    defaults = TrafficDistribution()
    try:
        return TrafficDistribution(
            metro_exponent=typed(data, "metro_exponent", _NUM, where, defaults.metro_exponent),
            access_exponent=typed(data, "access_exponent", _NUM, where, defaults.access_exponent),
            total_throughput=typed(data, "total_throughput_gbps", _NUM, where, 1.0) * 1e9,
        )
    except ValueError as exc:
        raise _wrap(where, exc) from None


def _load_cache(data: dict[str, Any], where: str) -> tuple[ZipfCatalog, CachePolicy]:
    reject_unknown_keys(data, _CACHE_KEYS, where)
    n = typed(data, "catalog_size", int, where, required=True)
    alpha = typed(data, "zipf_alpha", _NUM, where, required=True)
    fraction = typed(data, "stored_fraction", _NUM, where)
    items = typed(data, "stored_items", int, where)
    if (fraction is None) == (items is None):
        raise ScenarioError(f"{where}: give exactly one of stored_fraction / stored_items")
    try:
        catalog = ZipfCatalog(n_items=n, alpha=float(alpha))
        if fraction is not None:
            if not 0 <= fraction <= 1:
                raise ValueError(f"stored_fraction must lie in [0, 1], got {fraction!r}")
            items = round(fraction * n)
        policy = CachePolicy(stored_items=items)
    except ValueError as exc:
        raise _wrap(where, exc) from None
    if policy.stored_items > catalog.n_items:
        raise ScenarioError(f"{where}: stored_items exceeds catalog_size")
    return catalog, policy


def _load_ecc(data: dict[str, Any], where: str, base_dir: Path) -> EccSettings:
    reject_unknown_keys(data, _ECC_KEYS, where)
    placement = typed(data, "placement", str, where, "traffic")
    if placement not in ("traffic", "greedy", "file"):
        raise ScenarioError(
            f"{where}.placement: must be traffic, greedy or file, got {placement!r}")
    placement_file = typed(data, "placement_file", str, where)
    if (placement == "file") != (placement_file is not None):
        raise ScenarioError(
            f"{where}: placement_file is required for placement = \"file\" "
            f"and not allowed otherwise")

    ratio = typed(data, "rtt_ratio", _NUM, where)
    without_ms = typed(data, "rtt_without_ms", _NUM, where)
    with_ms = typed(data, "rtt_with_ms", _NUM, where)
    target = typed(data, "calibrate_target_nsu", _NUM, where)
    if (without_ms is None) != (with_ms is None):
        raise ScenarioError(f"{where}: rtt_without_ms and rtt_with_ms go together")
    chosen = sum(x is not None for x in (ratio, without_ms, target))
    if chosen != 1:
        raise ScenarioError(
            f"{where}: give exactly one of calibrate_target_nsu, rtt_ratio, "
            f"or the rtt_without_ms/rtt_with_ms pair")
    if ratio is not None and ratio < 1:
        raise ScenarioError(f"{where}.rtt_ratio: must be >= 1, got {ratio!r}")

    overrides = []
    for idx, entry in enumerate(typed(data, "node_overrides", list, where, default=[])):
        ov_where = f"{where}.node_overrides #{idx + 1}"
        reject_unknown_keys(entry, _OVERRIDE_KEYS, ov_where)
        override: dict[str, Any] = {
            "node_id": typed(entry, "node_id", int, ov_where, required=True)}
        ov_without = typed(entry, "rtt_without_ms", _NUM, ov_where)
        ov_with = typed(entry, "rtt_with_ms", _NUM, ov_where)
        ov_hr = typed(entry, "hit_ratio", _NUM, ov_where)
        if ov_without is not None:
            override["rtt_without"] = ov_without * 1e-3
        if ov_with is not None:
            override["rtt_with"] = ov_with * 1e-3
        if ov_hr is not None:
            override["hit_ratio"] = float(ov_hr)
        overrides.append(override)

    hr = typed(data, "hit_ratio", _NUM, where)
    if hr is not None and not 0 <= hr <= 1:
        raise ScenarioError(f"{where}.hit_ratio: must lie in [0, 1], got {hr!r}")
    plr_without_pct = typed(data, "plr_without_percent", _NUM, where)
    plr_with_pct = typed(data, "plr_with_percent", _NUM, where)
    if (plr_without_pct is None) != (plr_with_pct is None):
        raise ScenarioError(
            f"{where}: plr_without_percent and plr_with_percent go together")
    if plr_without_pct is not None and target is not None:
        # calibration solves for the RTT ratio under unchanged loss; a loss
        # override would silently shift every node off the target
        raise ScenarioError(
            f"{where}: calibrate_target_nsu cannot be combined with the "
            f"plr override pair")
    return EccSettings(
        placement=placement,
        placement_file=None if placement_file is None else base_dir / placement_file,
        hit_ratio=None if hr is None else float(hr),
        rtt_ratio=None if ratio is None else float(ratio),
        rtt_without=None if without_ms is None else without_ms * 1e-3,
        rtt_with=None if with_ms is None else with_ms * 1e-3,
        calibrate_target_nsu=None if target is None else float(target),
        max_rtt_ratio=float(typed(data, "max_rtt_ratio", _NUM, where, 1e4)),
        plr_without=None if plr_without_pct is None else plr_without_pct / 100.0,
        plr_with=None if plr_with_pct is None else plr_with_pct / 100.0,
        node_overrides=tuple(overrides),
    )


def _load_services(data: dict[str, Any], where: str, base_dir: Path) -> tuple[ServiceProfile, ...]:
    reject_unknown_keys(data, _SERVICES_KEYS, where)
    catalog_file = typed(data, "catalog_file", str, where)
    catalog = (load_catalog_file(base_dir / catalog_file)
               if catalog_file is not None else builtin_catalog())
    resolved: list[ServiceProfile] = []
    seen: set[str] = set()
    names = typed(data, "names", list, where, default=[])
    for name in names:
        if not isinstance(name, str):
            raise ScenarioError(f"{where}.names: entries must be strings, got {name!r}")
        try:
            profile = lookup(name, catalog)
        except ValueError as exc:
            raise _wrap(where, exc) from None
        if profile.name in seen:
            raise ScenarioError(f"{where}: duplicate service {profile.name!r}")
        seen.add(profile.name)
        resolved.append(profile)
    for idx, entry in enumerate(typed(data, "inline", list, where, default=[])):
        profile = profile_from_table(entry, f"{where}.inline #{idx + 1}")
        if profile.name in seen:
            raise ScenarioError(f"{where}: duplicate service {profile.name!r}")
        seen.add(profile.name)
        resolved.append(profile)
    return tuple(resolved)


def _load_paths(entries: list, where: str) -> tuple[PathSpec, ...]:
    paths: list[PathSpec] = []
    seen: set[str] = set()
    for idx, entry in enumerate(entries):
        p_where = f"{where} #{idx + 1}"
        reject_unknown_keys(entry, _PATH_KEYS, p_where)
        name = typed(entry, "name", str, p_where, required=True)
        if name in seen:
            raise ScenarioError(f"{p_where}: duplicate path name {name!r}")
        seen.add(name)
        flows = typed(entry, "flows", int, p_where, 1)
        if flows < 1:
            raise ScenarioError(f"{p_where}.flows: must be >= 1, got {flows}")
        try:
            metrics = PathMetrics.from_display_units(
                rtt_ms=typed(entry, "rtt_ms", _NUM, p_where, required=True),
                plr_percent=typed(entry, "plr_percent", _NUM, p_where, required=True),
                bit_rate_mbps=typed(entry, "bit_rate_mbps", _NUM, p_where, required=True),
                mss_bytes=typed(entry, "mss_bytes", int, p_where, 1460),
                c=typed(entry, "c", _NUM, p_where, 1.0),
            )
        except ValueError as exc:
            raise _wrap(p_where, exc) from None
        paths.append(PathSpec(name=name, metrics=metrics, flows=flows))
    return tuple(paths)


def load_scenario(path: str | Path) -> Scenario:
    """Load and fully validate a scenario file.

    Raises :class:`ScenarioError` on any malformed content, unknown key or
    unresolved reference.
    """
    try:
        return _load_scenario(Path(path))
    except ScenarioError:
        raise
    except InputFileError as exc:
        raise ScenarioError(str(exc)) from None


def _load_scenario(path: Path) -> Scenario:
    data = load_toml(path)
    reject_unknown_keys(data, _TOP_KEYS, str(path))
    base_dir = path.parent
    digest = hashlib.sha256(path.read_bytes()).hexdigest()[:12]

    catalog = policy = None
    if "cache" in data:
        catalog, policy = _load_cache(typed(data, "cache", dict, str(path)), f"{path}:[cache]")
    return Scenario(
        topology=_load_topology(typed(data, "topology", dict, str(path), {}),
                                f"{path}:[topology]"),
        traffic=_load_traffic(typed(data, "traffic", dict, str(path), {}),
                              f"{path}:[traffic]"),
        catalog=catalog,
        policy=policy,
        ecc=(_load_ecc(typed(data, "ecc", dict, str(path)), f"{path}:[ecc]", base_dir)
             if "ecc" in data else None),
        services=(_load_services(typed(data, "services", dict, str(path)),
                                 f"{path}:[services]", base_dir)
                  if "services" in data else ()),
        paths=_load_paths(typed(data, "paths", list, str(path), []), f"{path}:[[paths]]"),
        digest=digest,
        base_dir=base_dir,
    )
