"""Command-line front end: ``evograph generate | evolve | metrics``.

Settings come from an optional INI config file (``--config``) with sections
``[run] [generator] [evolution] [growth] [output]``; command-line flags win
over the file, and ``EVOGRAPH_SEED`` is used only when neither sets a seed.
One master seed drives the whole run; generation, acceptance coins and
growth each read their own sub-stream derived from it.

Exit codes: 0 success, 1 usage/config, 2 i/o, 3 parse.
"""

from __future__ import annotations

import argparse
import configparser
import json
import logging
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .engine import EvolutionParams, GrowthConfig, evolve, iterative_evolve
from .generate import ConfigError, GeneratorConfig, UniformEdgeCount, generate_initial
from .io import EXPORTERS, EdgeListParseError, export_edge_list, metrics_json, read_graph, trace_summary, write_atomic
from .metrics import MetricsError, compute_metrics
from .model import GraphError

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_PARSE = 0, 1, 2, 3
SEED_ENV = "EVOGRAPH_SEED"

# flag dest -> (config section, key, type)
SETTINGS: dict[str, tuple[str, str, type]] = {
    "seed": ("run", "seed", int),
    "n": ("generator", "n", int),
    "edges": ("generator", "edges", int),
    "factors": ("generator", "factors", int),
    "score_min": ("generator", "score_min", int),
    "score_max": ("generator", "score_max", int),
    "score_mode": ("generator", "score_mode", str),
    "mean": ("evolution", "mean", str),
    "threshold": ("evolution", "threshold", float),
    "p": ("evolution", "p", float),
    "policy": ("evolution", "policy", str),
    "max_sweeps": ("evolution", "max_sweeps", int),
    "growth_pool": ("growth", "pool", int),
    "outer_steps": ("growth", "outer_steps", int),
    "attach_min": ("growth", "attach_min", int),
    "attach_max": ("growth", "attach_max", int),
    "input": ("input", "graph", str),
    "format": ("output", "format", str),
    "trace_out": ("output", "trace_out", str),
    "summary_out": ("output", "summary_out", str),
    "metrics_out": ("output", "metrics_out", str),
    "snapshots_dir": ("output", "snapshots_dir", str),
}


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_USAGE) -> None:
        super().__init__(message)
        self.code = code


@dataclass
class RunConfig:
    generator: GeneratorConfig | None
    evolution: EvolutionParams
    growth: GrowthConfig | None = None
    outputs: list[tuple[str, Path]] = field(default_factory=list)
    metrics_enabled: bool = True
    input_path: Path | None = None
    trace_out: Path | None = None
    summary_out: Path | None = None
    metrics_out: Path | None = None
    snapshots_dir: Path | None = None


def load_settings(args: argparse.Namespace) -> dict[str, Any]:
    """Merge config file and flags into typed values keyed by flag name."""
    values: dict[str, Any] = {}
    if getattr(args, "config", None):
        parser = configparser.ConfigParser()
        try:
            with open(args.config, encoding="utf-8") as fh:
                parser.read_file(fh)
        except OSError as exc:
            raise CliError(f"cannot read config {args.config}: {exc}", EXIT_IO) from None
        except configparser.Error as exc:
            raise CliError(f"bad config {args.config}: {exc}") from None
        known = {(sec, key) for sec, key, _ in SETTINGS.values()} | {("output", "out")}
        for sec in parser.sections():
            for key in parser[sec]:
                if (sec, key) not in known:
                    raise CliError(f"unknown config key [{sec}] {key}")
        for dest, (sec, key, typ) in SETTINGS.items():
            if parser.has_option(sec, key):
                raw = parser.get(sec, key)
                try:
                    values[dest] = typ(raw)
                except ValueError:
                    raise CliError(f"config [{sec}] {key}: expected {typ.__name__}, got {raw!r}") from None
        if parser.has_option("output", "out"):
            values["out"] = [p.strip() for p in parser.get("output", "out").split(",") if p.strip()]
    for dest in list(SETTINGS) + ["out"]:
        flag = getattr(args, dest, None)
        if flag is not None:
            values[dest] = flag
    if "seed" not in values and os.environ.get(SEED_ENV):
        try:
            values["seed"] = int(os.environ[SEED_ENV])
        except ValueError:
            raise CliError(f"{SEED_ENV} must be an integer") from None
    return values


def _format_for(path: Path, forced: object) -> str:
    if forced:
        fmt = str(forced)
    else:
        fmt = path.suffix.lstrip(".").lower() or "csv"
    if fmt not in EXPORTERS:
        raise CliError(f"unknown output format {fmt!r} for {path}")
    return fmt


def build_run_config(values: dict[str, Any], need_generator: bool) -> RunConfig:
    seed = int(values.get("seed", 0))
    try:
        generator = None
        if "n" in values:
            n = int(values["n"])
            edges = values.get("edges")
            generator = GeneratorConfig(
                n=n,
                edge_model=UniformEdgeCount(int(edges)) if edges is not None else None,
                factor_universe=int(values.get("factors", 8)),
                score_mode=str(values.get("score_mode", "cumulative")),
                score_min=int(values.get("score_min", 1)),
                score_max=int(values.get("score_max", 16)),
                seed=seed,
            )
        elif need_generator:
            raise CliError("no generator settings: pass --n (or --config with [generator] n)")
        evolution = EvolutionParams(
            threshold=float(values.get("threshold", 6.0)),
            accept_prob=float(values.get("p", 0.5)),
            mean=str(values.get("mean", "arithmetic")),
            rejection_policy=str(values.get("policy", "retry")),
            max_sweeps=values.get("max_sweeps"),
            seed=seed,
        )
        growth = None
        if "growth_pool" in values or "outer_steps" in values:
            growth = GrowthConfig(
                pool_size=int(values.get("growth_pool", 20)),
                attach_edges_per_node=(
                    int(values.get("attach_min", 1)),
                    int(values.get("attach_max", 3)),
                ),
                outer_steps=int(values.get("outer_steps", 1)),
                attr_source=generator or GeneratorConfig(n=0),
            )
    except ValueError as exc:
        raise CliError(f"invalid configuration: {exc}") from None

    def opt_path(key: str) -> Path | None:
        return Path(str(values[key])) if values.get(key) else None

    outputs = [(_format_for(Path(p), values.get("format")), Path(p)) for p in values.get("out", [])]
    return RunConfig(
        generator=generator,
        evolution=evolution,
        growth=growth,
        outputs=outputs,
        input_path=opt_path("input"),
        trace_out=opt_path("trace_out"),
        summary_out=opt_path("summary_out"),
        metrics_out=opt_path("metrics_out"),
        snapshots_dir=opt_path("snapshots_dir"),
    )


def _write(path: Path, text: str) -> None:
    try:
        write_atomic(path, text)
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc}", EXIT_IO) from None


def _read(path: Path):
    try:
        return read_graph(path)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}", EXIT_IO) from None
    except (EdgeListParseError, GraphError) as exc:
        raise CliError(f"{path}: {exc}", EXIT_PARSE) from None


def cmd_generate(args: argparse.Namespace) -> int:
    if not args.config and args.n is None:
        raise CliError("generate needs --config or --n")
    cfg = build_run_config(load_settings(args), need_generator=True)
    try:
        g = generate_initial(cfg.generator)
    except ConfigError as exc:
        raise CliError(f"invalid generator config: {exc}") from None
    if not cfg.outputs:
        sys.stdout.write(export_edge_list(g))
    for fmt, path in cfg.outputs:
        _write(path, EXPORTERS[fmt](g))
    return EXIT_OK


def cmd_evolve(args: argparse.Namespace) -> int:
    values = load_settings(args)
    cfg = build_run_config(values, need_generator="input" not in values)
    if cfg.input_path is not None:
        g0 = _read(cfg.input_path)
    else:
        g0 = generate_initial(cfg.generator)
    try:
        if cfg.growth is not None:
            trace = iterative_evolve(g0, cfg.evolution, cfg.growth)
        else:
            trace = evolve(g0, cfg.evolution)
    except (ValueError, GraphError) as exc:
        raise CliError(f"evolution failed: {exc}") from None
    final = trace.final
    for fmt, path in cfg.outputs:
        _write(path, EXPORTERS[fmt](final))
    if cfg.trace_out is not None:
        _write(cfg.trace_out, EXPORTERS["gexf"](trace))
    if cfg.summary_out is not None:
        _write(cfg.summary_out, json.dumps(trace_summary(trace), indent=2) + "\n")
    if cfg.snapshots_dir is not None:
        try:
            cfg.snapshots_dir.mkdir(parents=True, exist_ok=True)
        except OSError as exc:
            raise CliError(f"cannot create {cfg.snapshots_dir}: {exc}", EXIT_IO) from None
        for i, snap in enumerate(trace.snapshots):
            _write(cfg.snapshots_dir / f"snapshot_{i:04d}.csv", export_edge_list(snap))
    if trace.truncated:
        print(f"warning: evolution truncated at max_sweeps after {trace.sweep_count} sweeps", file=sys.stderr)
    if not args.no_metrics:
        report = _metrics(final)
        report.truncated = trace.truncated
        sys.stdout.write(report.to_text())
        if cfg.metrics_out is not None:
            _write(cfg.metrics_out, metrics_json(report))
    return EXIT_OK


def _metrics(g):
    try:
        return compute_metrics(g)
    except MetricsError as exc:
        raise CliError(f"metrics: {exc}") from None


def cmd_metrics(args: argparse.Namespace) -> int:
    report = _metrics(_read(Path(args.graph)))
    sys.stdout.write(report.to_text())
    if args.json_out:
        _write(Path(args.json_out), metrics_json(report))
    return EXIT_OK


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="INI config file")
    p.add_argument("--seed", type=int, help=f"master seed (fallback: ${SEED_ENV}, then 0)")
    p.add_argument("--n", type=int, help="node count of the generated initial graph")
    p.add_argument("--edges", type=int, help="initial edge count (default 2n)")
    p.add_argument("--factors", type=int, help="factor universe size |F|")
    p.add_argument("--score-min", dest="score_min", type=int)
    p.add_argument("--score-max", dest="score_max", type=int)
    p.add_argument("--score-mode", dest="score_mode", choices=["cumulative", "per_factor"])
    p.add_argument("-o", "--out", action="append", help="output path (repeatable)")
    p.add_argument("--format", choices=sorted(EXPORTERS), help="force output format")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="evograph", description="Friend-recommendation network evolution")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="write a random initial graph")
    _add_common(gen)
    gen.set_defaults(func=cmd_generate)

    evo = sub.add_parser("evolve", help="evolve a graph and report metrics")
    _add_common(evo)
    evo.add_argument("--input", help="initial graph CSV (otherwise generated)")
    evo.add_argument("--mean", choices=["arithmetic", "geometric", "harmonic"])
    evo.add_argument("--threshold", type=float)
    evo.add_argument("--p", type=float, help="acceptance probability")
    evo.add_argument("--policy", choices=["retry", "permanent"])
    evo.add_argument("--max-sweeps", dest="max_sweeps", type=int)
    evo.add_argument("--growth-pool", dest="growth_pool", type=int, help="enable iterative growth")
    evo.add_argument("--outer-steps", dest="outer_steps", type=int)
    evo.add_argument("--attach-min", dest="attach_min", type=int)
    evo.add_argument("--attach-max", dest="attach_max", type=int)
    evo.add_argument("--trace-out", dest="trace_out", help="dynamic GEXF of the whole trace")
    evo.add_argument("--summary-out", dest="summary_out", help="JSON per-sweep summary")
    evo.add_argument("--metrics-out", dest="metrics_out", help="JSON metrics report")
    evo.add_argument("--snapshots-dir", dest="snapshots_dir", help="write every snapshot as CSV")
    evo.add_argument("--no-metrics", action="store_true")
    evo.set_defaults(func=cmd_evolve)

    met = sub.add_parser("metrics", help="print metrics of a CSV graph")
    met.add_argument("graph")
    met.add_argument("--json-out", dest="json_out")
    met.set_defaults(func=cmd_metrics)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
