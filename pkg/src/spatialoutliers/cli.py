"""Command line interface.

Subcommands: detect (score models, write reports), compare (same, but
requires two or more models), gen (synthesize datasets), report (summarize
a written report), serve (run the HTTP service). Every analysis option can
come from a config file; a flag given on the command line wins.
"""

from __future__ import annotations

import argparse
import sys
from typing import Callable, Optional

from .datagen import GenSpec
from .errors import (
    ConfigError,
    DataError,
    DegenerateStatisticsError,
    SpatialOutliersError,
)
from .fileio import load_config, read_report
from .outliers import DEFAULT_THETA
from .pipeline import RunConfig, run, run_generate

ANALYSIS_DEFAULTS = {
    "network": None,
    "model": ("weighted",),
    "strategy": "distance",
    "alpha": 1.0,
    "beta": 0.0,
    "delta": 0.0,
    "radius": None,
    "cost_limit": None,
    "polygon_mode": False,
    "theta": DEFAULT_THETA,
    "out": ".",
    "format": "json",
}


def _parse_bool(text: str) -> bool:
    lowered = text.strip().lower()
    if lowered in ("true", "yes", "1", "on"):
        return True
    if lowered in ("false", "no", "0", "off"):
        return False
    raise ConfigError(f"expected a boolean, got {text!r}")


def _parse_float(key: str) -> Callable[[str], float]:
    def convert(text: str) -> float:
        try:
            return float(text)
        except ValueError:
            raise ConfigError(f"{key} must be a number, got {text!r}") from None

    return convert


def _parse_models(text: str) -> tuple[str, ...]:
    models = tuple(part.strip() for part in text.split(",") if part.strip())
    if not models:
        raise ConfigError("model list is empty")
    return models


_CONVERTERS: dict[str, Callable[[str], object]] = {
    "model": _parse_models,
    "alpha": _parse_float("alpha"),
    "beta": _parse_float("beta"),
    "delta": _parse_float("delta"),
    "radius": _parse_float("radius"),
    "cost_limit": _parse_float("cost_limit"),
    "theta": _parse_float("theta"),
    "polygon_mode": _parse_bool,
}


def _resolve(key: str, flag_value, file_config: dict):
    if flag_value is not None:
        return flag_value
    if key in file_config:
        raw = file_config[key]
        converter = _CONVERTERS.get(key)
        return converter(raw) if converter else raw
    return ANALYSIS_DEFAULTS.get(key)


def _build_run_config(args: argparse.Namespace) -> RunConfig:
    file_config = load_config(args.config) if args.config else {}
    dataset = args.dataset if args.dataset is not None else file_config.get("dataset")
    attribute = args.attribute if args.attribute is not None else file_config.get("attribute")
    if not dataset:
        raise ConfigError("a dataset is required (--dataset or config file)")
    if not attribute:
        raise ConfigError("an attribute is required (--attribute or config file)")
    models = _resolve("model", tuple(args.model) if args.model else None, file_config)
    return RunConfig(
        dataset=dataset,
        attribute=attribute,
        network=_resolve("network", args.network, file_config),
        models=tuple(models),
        strategy=_resolve("strategy", args.strategy, file_config),
        alpha=_resolve("alpha", args.alpha, file_config),
        beta=_resolve("beta", args.beta, file_config),
        delta=_resolve("delta", args.delta, file_config),
        radius=_resolve("radius", args.radius, file_config),
        cost_limit=_resolve("cost_limit", args.cost_limit, file_config),
        polygon_mode=_resolve("polygon_mode", args.polygon_mode, file_config),
        theta=_resolve("theta", args.theta, file_config),
        out=_resolve("out", args.out, file_config),
        format=_resolve("format", args.format, file_config),
        fail_degenerate=bool(args.fail_degenerate),
    )


def _g(value: float) -> str:
    return f"{value:.10g}"


def _run_and_print(config: RunConfig) -> int:
    result = run(config)
    for name in config.models:
        report = result.reports[name]
        flagged = ", ".join(s.object_id for s in report.outliers) or "none"
        line = (
            f"{name}: scored {len(report.scores)}, "
            f"excluded {len(report.excluded)}, outliers: {flagged}"
        )
        if report.degenerate:
            line += " (degenerate)"
        print(line)
    for comparison in result.comparisons:
        pct = comparison.mean_improvement_pct
        shown = "n/a" if pct is None else _g(pct)
        print(
            f"{comparison.candidate_model} vs {comparison.baseline_model} baseline: "
            f"mean improvement {shown}"
        )
    for path in result.files:
        print(f"wrote {path}")
    for message in result.warnings:
        print(f"warning: {message}", file=sys.stderr)
    return 0


def _cmd_detect(args: argparse.Namespace) -> int:
    return _run_and_print(_build_run_config(args))


def _cmd_compare(args: argparse.Namespace) -> int:
    config = _build_run_config(args)
    if len(config.models) < 2:
        raise ConfigError("compare needs at least two models (--model twice)")
    return _run_and_print(config)


def _parse_plant(text: str) -> tuple[int, float]:
    try:
        index_text, _, sigmas_text = text.partition(":")
        return int(index_text), float(sigmas_text)
    except ValueError:
        raise ConfigError(
            f"plant must look like INDEX:SIGMAS (e.g. 12:5), got {text!r}"
        ) from None


def _cmd_gen(args: argparse.Namespace) -> int:
    spec = GenSpec(
        kind=args.kind,
        rows=args.rows,
        cols=args.cols,
        n_points=args.n_points,
        extent=args.extent,
        cell_size=args.cell_size,
        smoothing=args.smoothing,
        planted=tuple(_parse_plant(p) for p in args.plant),
        seed=args.seed,
        attribute=args.attribute,
    )
    dataset_path, network_path, planted = run_generate(spec, args.out)
    print(f"wrote {dataset_path}")
    print(f"wrote {network_path}")
    if planted:
        print("planted: " + ", ".join(planted))
    return 0


def _cmd_report(args: argparse.Namespace) -> int:
    document = read_report(args.path)
    print(f"model: {document['model']}  attribute: {document['attribute']}")
    print(
        f"scored: {document['n_scored']}  excluded: {len(document['excluded'])}  "
        f"degenerate: {str(document['degenerate']).lower()}"
    )
    print(
        f"theta: {_g(document['theta'])}  mu: {_g(document['mu'])}  "
        f"sigma: {_g(document['sigma'])}"
    )
    outliers = document["outliers"]
    shown = ", ".join(outliers) if outliers else "none"
    print(f"outliers ({len(outliers)}): {shown}")
    top = sorted(document["scores"], key=lambda s: (-abs(s["z"]), s["id"]))[: args.top]
    if top:
        print(f"top {len(top)} by |z|:")
        for row in top:
            marker = " *" if row["is_outlier"] else ""
            print(
                f"  {row['id']}: z={_g(row['z'])} value={_g(row['value'])} "
                f"expected={_g(row['expected'])}{marker}"
            )
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port)
    return 0


def _add_analysis_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="flat key = value config file")
    parser.add_argument("--dataset", help="GeoJSON feature collection to analyze")
    parser.add_argument("--network", help="connection network CSV (from_id,to_id,cost)")
    parser.add_argument("--attribute", help="attribute to score")
    parser.add_argument(
        "--model",
        action="append",
        help="model to run: weighted, classical, one_dimensional (repeatable)",
    )
    parser.add_argument(
        "--strategy", help="neighbor strategy: graph, distance, adjacency, hybrid"
    )
    parser.add_argument("--alpha", type=float, help="hybrid distance coefficient")
    parser.add_argument("--beta", type=float, help="hybrid connection coefficient")
    parser.add_argument("--delta", type=float, help="hybrid cost coefficient")
    parser.add_argument("--radius", type=float, help="buffer radius for distance neighbors")
    parser.add_argument("--cost-limit", type=float, help="maximum path cost to count as reachable")
    parser.add_argument("--theta", type=float, help="significance threshold (default 2)")
    parser.add_argument(
        "--polygon-mode",
        action=argparse.BooleanOptionalAction,
        default=None,
        help="weight neighbors by polygon area over distance",
    )
    parser.add_argument("--out", help="output directory (default .)")
    parser.add_argument("--format", help="output format: json or csv")
    parser.add_argument(
        "--fail-degenerate",
        action="store_true",
        help="treat degenerate statistics as an error (exit 4)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spatial-outliers",
        description="Spatial outlier detection over weighted neighborhoods.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    detect_parser = commands.add_parser("detect", help="score models and write reports")
    _add_analysis_flags(detect_parser)
    detect_parser.set_defaults(func=_cmd_detect)

    compare_parser = commands.add_parser(
        "compare", help="score two or more models and compare them"
    )
    _add_analysis_flags(compare_parser)
    compare_parser.set_defaults(func=_cmd_compare)

    gen_parser = commands.add_parser("gen", help="generate a synthetic dataset")
    gen_parser.add_argument("--kind", default="grid", help="grid or random_points")
    gen_parser.add_argument("--rows", type=int, default=5)
    gen_parser.add_argument("--cols", type=int, default=5)
    gen_parser.add_argument("--n-points", type=int, default=25)
    gen_parser.add_argument("--extent", type=float, default=10.0)
    gen_parser.add_argument("--cell-size", type=float, default=1.0)
    gen_parser.add_argument("--smoothing", type=int, default=0)
    gen_parser.add_argument(
        "--plant",
        action="append",
        default=[],
        metavar="INDEX:SIGMAS",
        help="overwrite object INDEX with mean + SIGMAS * sd (repeatable)",
    )
    gen_parser.add_argument("--seed", type=int, default=0)
    gen_parser.add_argument("--attribute", default="value")
    gen_parser.add_argument("--out", default=".")
    gen_parser.set_defaults(func=_cmd_gen)

    report_parser = commands.add_parser("report", help="summarize a JSON report")
    report_parser.add_argument("path")
    report_parser.add_argument("--top", type=int, default=10)
    report_parser.set_defaults(func=_cmd_report)

    serve_parser = commands.add_parser("serve", help="run the HTTP service")
    serve_parser.add_argument("--host", default="127.0.0.1")
    serve_parser.add_argument("--port", type=int, default=8000)
    serve_parser.set_defaults(func=_cmd_serve)

    return parser


def main(argv: Optional[list] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DegenerateStatisticsError as err:
        print(f"degenerate statistics: {err}", file=sys.stderr)
        return 4
    except ConfigError as err:
        print(f"config error: {err}", file=sys.stderr)
        return 2
    except DataError as err:
        print(f"data error: {err}", file=sys.stderr)
        return 3
    except SpatialOutliersError as err:  # pragma: no cover - safety net
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
