"""Command-line entry points: single runs, strategy/size sweeps, telemetry export."""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, replace
from pathlib import Path

from .attention import StrategyConfig, StrategyKind
from .detector import DetectorModel
from .memory import MemoryConfig
from .pipeline import ScenarioRun, SimulationConfig, make_grid, run_scenario
from .report import (
    ReportError,
    build_report,
    load_report,
    tile_telemetry_rows,
    write_report,
    write_telemetry_csv,
)
from .scenario import Scenario, ScenarioError, load_scenario

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DATA = 3
EXIT_RUNTIME = 4


@dataclass
class RunConfig:
    """One simulator invocation: scenario, simulation knobs, output path."""

    scenario_path: Path
    sim: SimulationConfig
    out_path: Path


def _sim_config(args: argparse.Namespace, strategy: str | None = None, cnn_size: int | None = None) -> SimulationConfig:
    kind = StrategyKind(strategy if strategy is not None else args.strategy)
    return SimulationConfig(
        cnn_size=cnn_size if cnn_size is not None else args.cnn_size,
        strategy=StrategyConfig(
            kind=kind,
            reset_time=args.reset_time,
            budget_n=args.budget_n,
            target_apt=args.target_apt,
            per_tile_cost=args.per_tile_cost,
        ),
        memory=MemoryConfig(),
        detector=DetectorModel(
            miss_rate=args.miss_rate,
            position_noise=args.noise,
            per_tile_latency=args.per_tile_cost,
            rng_seed=args.seed,
        ),
    )


def cmd_run(config: RunConfig) -> dict:
    """Execute one run and write its report; returns the report dict."""
    scenario = load_scenario(config.scenario_path)
    report, run = _execute(scenario, config.sim)
    write_report(report, config.out_path)
    _print_summary(scenario, config.sim, run, config.out_path)
    return report


def _execute(scenario: Scenario, sim: SimulationConfig) -> tuple[dict, ScenarioRun]:
    grid = make_grid(sim, scenario.frame_w, scenario.frame_h)
    run = run_scenario(scenario, sim, grid=grid)
    return build_report(scenario, sim, grid, run), run


def _print_summary(scenario: Scenario, sim: SimulationConfig, run: ScenarioRun, out: Path) -> None:
    s = run.summary
    sen = "-" if s.sensitivity is None else f"{s.sensitivity:.4f}"
    apt = "-" if s.apt is None else f"{s.apt:.6f}"
    wall = sum(r.wall_time for r in run.results)
    print(
        f"{scenario.name or scenario_stem(out)}: strategy={sim.strategy.kind.value} "
        f"cnn={sim.cnn_size} frames={s.frames} SEN={sen} APT={apt}s "
        f"TP={s.true_positives} FN={s.false_negatives} FP={s.false_positives} "
        f"wall={wall:.3f}s -> {out}"
    )


def scenario_stem(path: Path) -> str:
    return Path(path).stem


def cmd_sweep(
    scenario_path: Path,
    base: argparse.Namespace,
    strategies: list[str],
    cnn_sizes: list[int],
    out_dir: Path,
) -> list[dict]:
    """Run every (strategy, cnn_size) cell and write a combined table."""
    scenario = load_scenario(scenario_path)
    out_dir.mkdir(parents=True, exist_ok=True)
    rows = []
    reports = []
    for strategy in strategies:
        for size in cnn_sizes:
            sim = _sim_config(base, strategy=strategy, cnn_size=size)
            try:
                report, run = _execute(scenario, sim)
            except Exception as exc:
                raise RuntimeError(f"sweep cell ({strategy}, {size}) failed: {exc}") from exc
            cell_path = out_dir / f"report_{strategy}_{size}.json"
            write_report(report, cell_path)
            _print_summary(scenario, sim, run, cell_path)
            s = run.summary
            rows.append(
                {
                    "strategy": strategy,
                    "cnn_size": size,
                    "tiles": report["grid"]["n_tiles"],
                    "sensitivity": s.sensitivity,
                    "apt": s.apt,
                    "fp": s.false_positives,
                }
            )
            reports.append(report)
    table = _format_sweep(rows)
    (out_dir / "sweep.tsv").write_text(table)
    print(table, end="")
    return reports


def _format_sweep(rows: list[dict]) -> str:
    def fmt(v, spec=".4f"):
        return "-" if v is None else format(v, spec)

    lines = ["strategy\tcnn_size\ttiles\tsensitivity\tapt\tfp"]
    for r in rows:
        lines.append(
            f"{r['strategy']}\t{r['cnn_size']}\t{r['tiles']}\t"
            f"{fmt(r['sensitivity'])}\t{fmt(r['apt'], '.6f')}\t{r['fp']}"
        )
    return "\n".join(lines) + "\n"


def cmd_tile_telemetry(report_path: Path, out_path: Path) -> list[tuple]:
    """Export per-tile object counts and selection counts per frame as CSV."""
    report = load_report(report_path)
    rows = tile_telemetry_rows(report)
    write_telemetry_csv(rows, out_path)
    print(f"{len(rows)} telemetry rows -> {out_path}")
    return rows


def _add_common_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("scenario", type=Path, help="scenario file to simulate")
    p.add_argument("--reset-time", type=int, default=10, help="full-sweep period for the 'to' strategy")
    p.add_argument("--budget-n", type=int, default=None, help="tiles per frame for the 'tsm' strategy")
    p.add_argument("--target-apt", type=float, default=None, help="per-frame time budget deriving the 'tsm' tile count")
    p.add_argument("--per-tile-cost", type=float, default=0.025, help="simulated seconds per processed tile")
    p.add_argument("--miss-rate", type=float, default=0.0, help="detector miss probability per object")
    p.add_argument("--noise", type=float, default=0.0, help="detector position jitter half-range in pixels")
    p.add_argument("--seed", type=int, default=0, help="detector random seed")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tilesim",
        description="Simulate tile-based selective processing of detection scenarios.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run one configuration and write a report")
    _add_common_flags(run_p)
    run_p.add_argument("--strategy", choices=[k.value for k in StrategyKind], default="ta")
    run_p.add_argument("--cnn-size", type=int, default=256, help="square detector input size in pixels")
    run_p.add_argument("--out", type=Path, default=Path("report.json"), help="report output path")

    sweep_p = sub.add_parser("sweep", help="run a strategies x cnn-sizes grid of configurations")
    _add_common_flags(sweep_p)
    sweep_p.add_argument("--strategies", default="ta,t1,to,tsm", help="comma-separated strategy names")
    sweep_p.add_argument("--cnn-sizes", default="544,352,256", help="comma-separated sizes in pixels")
    sweep_p.add_argument("--out", type=Path, default=Path("sweep_out"), help="output directory")

    tel_p = sub.add_parser("tile-telemetry", help="export per-tile time series from a report")
    tel_p.add_argument("report", type=Path, help="report file from a previous run")
    tel_p.add_argument("--out", type=Path, default=Path("telemetry.csv"), help="CSV output path")
    return parser


def _parse_strategies(raw: str) -> list[str]:
    names = [s.strip() for s in raw.split(",") if s.strip()]
    valid = {k.value for k in StrategyKind}
    for n in names:
        if n not in valid:
            raise ValueError(f"unknown strategy {n!r}; choose from {sorted(valid)}")
    if not names:
        raise ValueError("no strategies given")
    return names


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "run":
            cmd_run(
                RunConfig(
                    scenario_path=args.scenario,
                    sim=_sim_config(args),
                    out_path=args.out,
                )
            )
        elif args.command == "sweep":
            strategies = _parse_strategies(args.strategies)
            sizes = [int(s) for s in args.cnn_sizes.split(",") if s.strip()]
            if not sizes:
                raise ValueError("no cnn sizes given")
            cmd_sweep(args.scenario, args, strategies, sizes, args.out)
        else:
            cmd_tile_telemetry(args.report, args.out)
    except (ScenarioError, ReportError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
