"""Capacity planning for ultra-broadband networks.

Models what latency and packet loss let applications actually use of an
access link (and when extra access bit-rate is wasted), how much a
transparent edge cache helps per node and network-wide, and whether named
services fit a given path. See the README for the CLI and scenario format.
"""

__version__ = "0.1.0"

from ._backend import KERNEL_BACKEND
from .scenario import Scenario, ScenarioError, load_scenario
from .services import (
    FeasibilityResult,
    MovarParams,
    MovarRequirement,
    ServiceProfile,
    builtin_catalog,
    compression_gain,
    feasibility,
    load_catalog_file,
    lookup,
    movar_requirement,
)
from .speedup import (
    CalibrationError,
    NodeEccConfig,
    PlacementPlan,
    SpeedupCurve,
    calibrate_uniform_scenario,
    greedy_order,
    network_speedup,
    node_speedup,
    speedup_curve,
)
from .throughput import (
    Limit,
    PathMetrics,
    PlrBreakdown,
    ThroughputEstimate,
    TrapAssessment,
    compose_plr,
    mathis_throughput,
    required_rtt_for_throughput,
    throughput_table,
    ubb_trap_headroom,
    waste_band,
)
from .topology import (
    NodeTraffic,
    TopologyParams,
    TrafficDistribution,
    access_shares,
    load_order_file,
    metro_shares,
    sort_by_traffic,
)
from .zipf import (
    CachePolicy,
    ZipfCatalog,
    hit_ratio,
    min_fraction_for_hit_ratio,
    min_stored_for_hit_ratio,
    popularity,
)

__all__ = [
    "KERNEL_BACKEND",
    "__version__",
    "CachePolicy",
    "CalibrationError",
    "FeasibilityResult",
    "Limit",
    "MovarParams",
    "MovarRequirement",
    "NodeEccConfig",
    "NodeTraffic",
    "PathMetrics",
    "PlacementPlan",
    "PlrBreakdown",
    "Scenario",
    "ScenarioError",
    "ServiceProfile",
    "SpeedupCurve",
    "ThroughputEstimate",
    "TopologyParams",
    "TrafficDistribution",
    "TrapAssessment",
    "ZipfCatalog",
    "access_shares",
    "builtin_catalog",
    "calibrate_uniform_scenario",
    "compose_plr",
    "compression_gain",
    "feasibility",
    "greedy_order",
    "hit_ratio",
    "load_catalog_file",
    "load_order_file",
    "load_scenario",
    "lookup",
    "mathis_throughput",
    "metro_shares",
    "min_fraction_for_hit_ratio",
    "min_stored_for_hit_ratio",
    "movar_requirement",
    "network_speedup",
    "node_speedup",
    "popularity",
    "required_rtt_for_throughput",
    "sort_by_traffic",
    "speedup_curve",
    "throughput_table",
    "ubb_trap_headroom",
    "waste_band",
]
