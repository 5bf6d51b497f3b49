"""Command-line entry point: run analytic/simulated BER sweeps, emit CSV."""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from datetime import datetime, timezone

import numpy as np

from . import __version__
from .core import ConfigError, SystemConfig, validate_config
from .monte_carlo import BerPoint, StoppingRule, run_sweep

CSV_HEADER = ("snr_db,ber_bound,ber_sim,stderr_sim,index_bit_errors,"
              "symbol_bit_errors,total_bits,blocks")

_DEFAULTS = {
    "nc": 128, "cluster_size": 2, "clusters": 64, "qam": 4,
    "snr_start": 0.0, "snr_stop": 40.0, "snr_step": 5.0,
    "mode": "both", "min_errors": 500, "max_blocks": 200000,
    "seed": None, "avg": "quadrature", "detector": "lrt",
    "workers": 1, "out": None,
}


@dataclass(frozen=True)
class RunManifest:
    """Run provenance serialized as #-comments at the top of every CSV."""

    nc: int
    cluster_size: int
    clusters: int
    qam: int
    snr_start: float
    snr_stop: float
    snr_step: float
    mode: str
    seed: int
    min_errors: int
    max_blocks: int
    avg: str
    detector: str
    version: str
    timestamp: str

    def comment_lines(self) -> list[str]:
        return [f"# {key}={getattr(self, key)}" for key in self.__dataclass_fields__]


def _read_config_file(path: str) -> dict[str, str]:
    values = {}
    with open(path) as f:
        for lineno, raw in enumerate(f, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value, got {line!r}")
            key, _, val = line.partition("=")
            values[key.strip().replace("-", "_")] = val.strip()
    return values


def parse_args(argv):
    """Resolve flags, optional key=value config file and environment into a
    run plan.  Flags override file values; MCIK_SEED is the seed fallback."""
    p = argparse.ArgumentParser(
        prog="mcik-ofdm",
        description="MCIK-OFDM BER simulator and closed-form bound evaluator")
    p.add_argument("--config", help="key=value config file; flags override it")
    p.add_argument("--nc", type=int, help="total number of subcarriers")
    p.add_argument("--cluster-size", type=int, help="subcarriers per cluster (N)")
    p.add_argument("--clusters", type=int, help="number of clusters (n)")
    p.add_argument("--qam", type=int, help="QAM order (4, 16, 64, 256)")
    p.add_argument("--snr-start", type=float, help="sweep start, dB")
    p.add_argument("--snr-stop", type=float, help="sweep stop (inclusive), dB")
    p.add_argument("--snr-step", type=float, help="sweep step, dB")
    p.add_argument("--mode", choices=("analytic", "simulate", "both"))
    p.add_argument("--min-errors", type=int, help="bit errors before a point stops")
    p.add_argument("--max-blocks", type=int, help="block cap per SNR point")
    p.add_argument("--seed", type=int, help="RNG seed (default: MCIK_SEED or 0)")
    p.add_argument("--avg", choices=("quadrature", "mc"),
                   help="fading-averaging method for the bound")
    p.add_argument("--detector", choices=("lrt", "ml"),
                   help="simulated receiver: energy LRT + symbol ML, or joint ML")
    p.add_argument("--workers", type=int, help="parallel batch workers")
    p.add_argument("--out", help="output CSV path (default: stdout)")
    args = p.parse_args(argv)

    plan = dict(_DEFAULTS)
    if args.config:
        file_vals = _read_config_file(args.config)
        unknown = set(file_vals) - set(plan)
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        for key, val in file_vals.items():
            plan[key] = type(_DEFAULTS[key])(val) if _DEFAULTS[key] is not None else val
    for key in plan:
        flag_val = getattr(args, key, None)
        if flag_val is not None:
            plan[key] = flag_val
    if plan["seed"] is None:
        plan["seed"] = int(os.environ.get("MCIK_SEED", "0"))
    else:
        plan["seed"] = int(plan["seed"])
    if plan["snr_step"] <= 0 or plan["snr_stop"] < plan["snr_start"]:
        raise ValueError("invalid SNR sweep range")
    return plan


def snr_grid(start: float, stop: float, step: float) -> list[float]:
    count = int(np.floor((stop - start) / step + 1e-9)) + 1
    return [start + i * step for i in range(count)]


def _fmt(x: float | None) -> str:
    return "" if x is None else f"{x:.17e}"


def format_rows(points: list[BerPoint]) -> list[str]:
    rows = []
    for pt in points:
        if pt.stats is None:
            sim = ["", "", "", "", "", ""]
        else:
            s = pt.stats
            sim = [_fmt(s.ber), _fmt(s.stderr), str(s.index_bit_errors),
                   str(s.symbol_bit_errors), str(s.total_bits), str(s.blocks)]
        rows.append(",".join([_fmt(pt.snr_db), _fmt(pt.bound)] + sim))
    return rows


def emit_csv(points: list[BerPoint], manifest: RunManifest, out) -> None:
    for line in manifest.comment_lines():
        print(line, file=out)
    print(CSV_HEADER, file=out)
    for row in format_rows(points):
        print(row, file=out)


def main(argv=None) -> int:
    try:
        plan = parse_args(argv)
        cfg = validate_config(SystemConfig(
            n_subcarriers=plan["nc"], cluster_size=plan["cluster_size"],
            n_clusters=plan["clusters"], qam_order=plan["qam"]))
    except (ConfigError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    snrs = snr_grid(plan["snr_start"], plan["snr_stop"], plan["snr_step"])
    stop = StoppingRule(min_bit_errors=plan["min_errors"],
                        max_blocks=plan["max_blocks"])
    manifest = RunManifest(
        nc=plan["nc"], cluster_size=plan["cluster_size"], clusters=plan["clusters"],
        qam=plan["qam"], snr_start=plan["snr_start"], snr_stop=plan["snr_stop"],
        snr_step=plan["snr_step"], mode=plan["mode"], seed=plan["seed"],
        min_errors=plan["min_errors"], max_blocks=plan["max_blocks"],
        avg=plan["avg"], detector=plan["detector"], version=__version__,
        timestamp=datetime.now(timezone.utc).isoformat(timespec="seconds"))

    points = run_sweep(cfg, snrs, stop, plan["seed"], mode=plan["mode"],
                       avg_method=plan["avg"], n_workers=plan["workers"],
                       detector=plan["detector"])

    if plan["out"]:
        try:
            with open(plan["out"], "w") as f:
                emit_csv(points, manifest, f)
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
    else:
        emit_csv(points, manifest, sys.stdout)

    for pt in points:
        bits = []
        if pt.bound is not None:
            bits.append(f"bound={pt.bound:.3e}")
        if pt.stats is not None:
            bits.append(f"sim={pt.stats.ber:.3e} ({pt.stats.bit_errors} errors, "
                        f"{pt.stats.blocks} blocks)")
        print(f"snr {pt.snr_db:5.1f} dB: " + "  ".join(bits), file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
