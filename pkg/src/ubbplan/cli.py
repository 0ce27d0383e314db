"""Batch command-line front end.

Subcommands compute CSV tables on stdout (or ``--out``): ``throughput-table``,
``nsu-curve``, ``trap-report``, ``feasibility``, ``hit-ratio``. Every CSV
starts with a ``#`` metadata line (command, version, scenario digest,
precision); some commands add further ``#`` summary/reference lines before
the header row. Data rows carry no timestamps and sums fold in a fixed
order, so identical inputs produce byte-identical output.

Exit codes: 0 success, 2 validation or usage error, 3 infeasible
calibration. Diagnostics go to stderr, never into the CSV.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from typing import Sequence

from . import __version__
from ._backend import KERNEL_BACKEND
from ._toml import InputFileError
from .scenario import Scenario, load_scenario
from .services import (
    MovarParams,
    ServiceProfile,
    builtin_catalog,
    compression_gain,
    feasibility,
    movar_requirement,
)
from .speedup import CalibrationError, greedy_order, speedup_curve
from .throughput import (
    LTE_MEAN_UTILIZATION,
    LTE_MEDIAN_UTILIZATION,
    PathMetrics,
    ThroughputEstimate,
    mathis_throughput,
    throughput_table,
    ubb_trap_headroom,
    waste_band,
)
from .zipf import CachePolicy, ZipfCatalog, hit_ratio, min_fraction_for_hit_ratio

__all__ = ["main"]

TABLE2_RTT_MS = [x / 2 for x in range(1, 21)]  # 0.5 .. 10.0 ms
TABLE2_PLR_PERCENT = [0.05, 0.10, 0.15, 0.20, 0.25, 0.30,
                      0.40, 0.50, 0.60, 0.70, 0.80, 0.90, 1.00]


class _Output:
    """Accumulates comment lines and CSV rows; renders with fixed newlines."""

    def __init__(self, command: str, scenario_digest: str | None, precision: str):
        digest = scenario_digest if scenario_digest else "none"
        self._buf = io.StringIO()
        self._writer = csv.writer(self._buf, lineterminator="\n")
        self.comment(f"command={command} version={__version__} "
                     f"scenario={digest} precision={precision}")

    def comment(self, text: str) -> None:
        self._buf.write(f"# {text}\n")

    def rows(self, rows: Sequence[Sequence[object]]) -> None:
        self._writer.writerows(rows)

    def render(self) -> str:
        return self._buf.getvalue()


def _fmt_rate(bits_per_s: float, precision: str) -> str:
    # table: Mbit/s, 1 decimal; full: bits/s, full precision
    if precision == "full":
        return repr(bits_per_s)
    return f"{bits_per_s / 1e6:.1f}"


def _fmt_duration(seconds: float, precision: str) -> str:
    if precision == "full":
        return repr(seconds)
    return f"{seconds * 1e3:.3f}"


def _fmt_ratio(value: float, precision: str) -> str:
    if precision == "full":
        return repr(value)
    return f"{value:.6g}"


def _rate_col(stem: str, precision: str) -> str:
    return f"{stem}_bps" if precision == "full" else f"{stem}_mbps"


def _duration_col(stem: str, precision: str) -> str:
    return f"{stem}_s" if precision == "full" else f"{stem}_ms"


def _parse_float_list(text: str, flag: str) -> list[float]:
    try:
        values = [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise ValueError(f"{flag}: expected comma-separated numbers, got {text!r}") from None
    if not values:
        raise ValueError(f"{flag}: empty list")
    return values


def _require_scenario(args: argparse.Namespace) -> Scenario:
    if args.scenario is None:
        raise ValueError(f"{args.command}: --scenario <file> is required")
    return load_scenario(args.scenario)


def cmd_throughput_table(args: argparse.Namespace) -> str:
    rtt_ms = _parse_float_list(args.rtt, "--rtt") if args.rtt else TABLE2_RTT_MS
    plr_pct = _parse_float_list(args.plr, "--plr") if args.plr else TABLE2_PLR_PERCENT
    matrix = throughput_table([r * 1e-3 for r in rtt_ms],
                              [p / 100.0 for p in plr_pct], args.mss, args.c)
    out = _Output("throughput-table", None, args.precision)
    unit = "bits/s" if args.precision == "full" else "Mbit/s"
    out.comment(f"latency/loss bound in {unit}; mss={args.mss} bytes c={args.c}; "
                f"bit-rate cap excluded")
    header = ["plr_percent"] + [f"{r:g}" for r in rtt_ms]
    rows: list[list[object]] = [header]
    for plr, row in zip(plr_pct, matrix):
        if args.precision == "full":
            cells = [repr(cell) for cell in row]
        else:
            cells = [f"{cell / 1e6:.{args.round}f}" for cell in row]
        rows.append([f"{plr:g}"] + cells)
    out.rows(rows)
    return out.render()


def cmd_hit_ratio(args: argparse.Namespace) -> str:
    catalog = ZipfCatalog(n_items=args.catalog_size, alpha=args.alpha)
    if not 0 < args.step <= 1:
        raise ValueError(f"--step must lie in (0, 1], got {args.step}")
    out = _Output("hit-ratio", None, args.precision)
    half = min_fraction_for_hit_ratio(catalog, 0.5)
    out.comment(f"alpha={args.alpha:g} catalog_size={args.catalog_size}")
    out.comment(f"summary: min_fraction_for_hr_0.50={half!r}")
    rows: list[list[object]] = [["stored_fraction", "hit_ratio", "meets_half"]]
    steps = math.ceil(1.0 / args.step - 1e-9)  # sweep always ends at 1.0
    for i in range(steps + 1):
        fraction = min(i * args.step, 1.0)
        stored = round(fraction * catalog.n_items)
        hr = hit_ratio(catalog, CachePolicy(stored_items=stored))
        rows.append([f"{fraction:g}", _fmt_ratio(hr, args.precision),
                     str(hr >= 0.5).lower()])
    out.rows(rows)
    return out.render()


def cmd_nsu_curve(args: argparse.Namespace) -> str:
    scenario = _require_scenario(args)
    nodes, configs, order, calibrated = scenario.resolve_ecc()
    curve_points = speedup_curve(nodes, configs, order).points
    if args.max_equipped is not None:
        if args.max_equipped < 0:
            raise ValueError(f"--max-equipped must be >= 0, got {args.max_equipped}")
        curve_points = curve_points[: args.max_equipped + 1]
    out = _Output("nsu-curve", scenario.digest, args.precision)
    endpoint = curve_points[-1][1]
    ratio_note = f" calibrated_rtt_ratio={calibrated!r}" if calibrated is not None else ""
    differs_note = ""
    if scenario.ecc.placement == "traffic":
        differs = greedy_order(nodes, configs) != order
        differs_note = f" greedy_order_differs={str(differs).lower()}"
    out.comment(f"summary: order={scenario.ecc.placement} endpoint_nsu={endpoint!r}"
                f"{ratio_note}{differs_note}")
    rows: list[list[object]] = [["equipped_nodes", "network_speedup"]]
    for k, nsu in curve_points:
        rows.append([k, repr(nsu) if args.precision == "full" else f"{nsu:.12g}"])
    out.rows(rows)
    return out.render()


def cmd_trap_report(args: argparse.Namespace) -> str:
    scenario = _require_scenario(args)
    if not scenario.paths:
        raise ValueError("trap-report: scenario defines no [[paths]]")
    out = _Output("trap-report", scenario.digest, args.precision)
    out.comment(f"reference: lte_mean_utilization={LTE_MEAN_UTILIZATION * 100:.1f}% "
                f"lte_median_utilization={LTE_MEDIAN_UTILIZATION * 100:.1f}%")
    out.comment(f"trap_threshold={args.trap_threshold:g} (headroom above this is flagged)")
    rows: list[list[object]] = [[
        "path", "flows", _rate_col("bit_rate", args.precision),
        _rate_col("required", args.precision), "headroom", "trapped",
        "waste_band", "utilization",
    ]]
    for spec in scenario.paths:
        flows = [spec.metrics] * spec.flows
        trap = ubb_trap_headroom(spec.metrics.bit_rate, flows, args.trap_threshold)
        # Utilization from each flow's own estimate (respects per-path c).
        aggregate = min(math.fsum(mathis_throughput(f).mathis_term for f in flows),
                        spec.metrics.bit_rate)
        rows.append([
            spec.name, spec.flows,
            _fmt_rate(spec.metrics.bit_rate, args.precision),
            _fmt_rate(trap.required_rate, args.precision),
            _fmt_ratio(trap.headroom, args.precision),
            str(trap.trapped).lower(),
            waste_band(trap.headroom),
            _fmt_ratio(aggregate / spec.metrics.bit_rate, args.precision),
        ])
    out.rows(rows)
    return out.render()


def _dump_catalog(args: argparse.Namespace, catalog: Sequence[ServiceProfile],
                  digest: str | None) -> str:
    out = _Output("feasibility", digest, args.precision)
    out.comment("catalog dump")
    rows: list[list[object]] = [[
        "service", _rate_col("required", args.precision), "live",
        _duration_col("max_rtt", args.precision),
        _rate_col("range_low", args.precision), _rate_col("range_high", args.precision),
        "metadata",
    ]]
    for p in catalog:
        lo, hi = p.throughput_range if p.throughput_range else (None, None)
        rows.append([
            p.name, _fmt_rate(p.required_throughput, args.precision),
            str(p.live).lower(),
            "" if p.max_rtt is None else _fmt_duration(p.max_rtt, args.precision),
            "" if lo is None else _fmt_rate(lo, args.precision),
            "" if hi is None else _fmt_rate(hi, args.precision),
            "; ".join(f"{k}={v}" for k, v in sorted(p.metadata.items())),
        ])
    out.rows(rows)
    return out.render()


def cmd_feasibility(args: argparse.Namespace) -> str:
    if args.dump_catalog:
        digest = None
        catalog: Sequence[ServiceProfile] = builtin_catalog()
        if args.scenario is not None:
            scenario = load_scenario(args.scenario)
            digest = scenario.digest
            if scenario.services:
                catalog = scenario.services
        return _dump_catalog(args, catalog, digest)

    scenario = _require_scenario(args)
    if not scenario.services:
        raise ValueError("feasibility: scenario defines no services")
    if not scenario.paths:
        raise ValueError("feasibility: scenario defines no [[paths]]")

    services = list(scenario.services)
    if args.compression is not None:
        adjusted = []
        for service in services:
            if service.live:
                print(f"warning: compression left {service.name!r} unchanged "
                      f"(live streams cannot absorb the encoding delay)",
                      file=sys.stderr)
                adjusted.append(service)
            else:
                reduced = compression_gain(service.required_throughput, args.compression)
                adjusted.append(ServiceProfile(
                    name=service.name, required_throughput=reduced,
                    max_rtt=service.max_rtt, live=service.live,
                    throughput_range=service.throughput_range,
                    metadata=dict(service.metadata)))
        services = adjusted

    out = _Output("feasibility", scenario.digest, args.precision)
    movar = movar_requirement(MovarParams())
    if any(p.metadata.get("class") == "MoVAR" for p in services):
        out.comment(
            f"movar_budget: computed_gross_gbps={movar.gross_rate / 1e9:g} "
            f"net_gbps={movar.net_rate_min / 1e9:g}-{movar.net_rate_max / 1e9:g} "
            f"reference_gross_gbps={movar.reference_gross_rate / 1e9:g} "
            f"reference_net_gbps={movar.reference_net_rate_min / 1e9:g}-"
            f"{movar.reference_net_rate_max / 1e9:g} "
            f"matches_reference={str(movar.matches_reference).lower()}")
    rows: list[list[object]] = [[
        "service", "path", "feasible", "binding",
        _rate_col("required", args.precision),
        _rate_col("estimated", args.precision),
        _duration_col("rtt_needed", args.precision),
        _rate_col("movar_gross", args.precision),
        _rate_col("movar_net_min", args.precision),
        _rate_col("movar_net_max", args.precision),
    ]]
    for service in services:
        is_movar = service.metadata.get("class") == "MoVAR"
        for spec in scenario.paths:
            result = feasibility(service, spec.metrics)
            estimate: ThroughputEstimate = mathis_throughput(spec.metrics)
            rows.append([
                service.name, spec.name,
                str(result.feasible).lower(), result.binding.value,
                _fmt_rate(service.required_throughput, args.precision),
                _fmt_rate(estimate.throughput, args.precision),
                _fmt_duration(result.rtt_needed, args.precision),
                _fmt_rate(movar.gross_rate, args.precision) if is_movar else "",
                _fmt_rate(movar.net_rate_min, args.precision) if is_movar else "",
                _fmt_rate(movar.net_rate_max, args.precision) if is_movar else "",
            ])
    out.rows(rows)
    return out.render()


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--scenario", metavar="FILE", help="scenario TOML file")
    sub.add_argument("--out", metavar="FILE", default="-",
                     help="output file, or - for stdout (default)")
    sub.add_argument("--precision", choices=("table", "full"), default="table",
                     help="table: Mbit/s and ms for reading; full: bits/s and "
                          "seconds at full float precision")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ubbplan",
        description="Capacity planning for ultra-broadband networks: throughput "
                    "bounds, access-trap checks, cache hit ratios and edge "
                    "deployment speed-up curves.")
    parser.add_argument("--version", action="version",
                        version=f"ubbplan {__version__} (kernels: {KERNEL_BACKEND})")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("throughput-table",
                        help="latency/loss throughput bound over an RTT x PLR grid")
    _add_common(p)
    p.add_argument("--rtt", metavar="MS[,MS...]", help="RTT grid in ms")
    p.add_argument("--plr", metavar="PCT[,PCT...]", help="loss grid in percent")
    p.add_argument("--mss", type=int, default=1460, help="segment size in bytes")
    p.add_argument("--c", type=float, default=1.0, help="congestion constant")
    p.add_argument("--round", type=int, default=0, metavar="DIGITS",
                   help="decimals for Mbit/s cells (default 0)")
    p.set_defaults(func=cmd_throughput_table)

    p = subs.add_parser("nsu-curve", help="network speed-up vs. equipped access nodes")
    _add_common(p)
    p.add_argument("--max-equipped", type=int, default=None, metavar="K",
                   help="stop the curve after K equipped nodes")
    p.set_defaults(func=cmd_nsu_curve)

    p = subs.add_parser("trap-report", help="access bit-rate vs. usable rate per path")
    _add_common(p)
    p.add_argument("--trap-threshold", type=float, default=1.0, metavar="X",
                   help="headroom above X is flagged as trapped (default 1.0)")
    p.set_defaults(func=cmd_trap_report)

    p = subs.add_parser("feasibility", help="service x path feasibility matrix")
    _add_common(p)
    p.add_argument("--dump-catalog", action="store_true",
                   help="print the service catalog instead of the matrix")
    p.add_argument("--compression", type=float, default=None, metavar="FACTOR",
                   help="apply a compression factor to non-live services first")
    p.set_defaults(func=cmd_feasibility)

    p = subs.add_parser("hit-ratio", help="cache hit ratio vs. stored fraction")
    _add_common(p)
    p.add_argument("--alpha", type=float, required=True, help="popularity skew")
    p.add_argument("--catalog-size", type=int, required=True, help="catalog size N")
    p.add_argument("--step", type=float, default=0.05,
                   help="stored-fraction step (default 0.05)")
    p.set_defaults(func=cmd_hit_ratio)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text = args.func(args)
    except CalibrationError as exc:
        print(f"ubbplan {args.command}: infeasible calibration: {exc}", file=sys.stderr)
        return 3
    except (InputFileError, ValueError, OSError) as exc:
        print(f"ubbplan {args.command}: {exc}", file=sys.stderr)
        return 2
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
