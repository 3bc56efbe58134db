"""End-to-end runs shared by the command line and the HTTP service.

A run loads the dataset (and network, when given), builds one neighborhood
framework, scores every requested model, compares each model pair in the
order the models were listed (earlier model = baseline), and serializes
everything into an output directory with deterministic file names.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Optional

from .datagen import GenSpec, generate
from .errors import (
    ConfigError,
    DegenerateDistributionWarning,
    DegenerateStatisticsError,
)
from .evaluation import ComparisonReport, compare
from .fileio import (
    FORMATS,
    load_dataset,
    load_network,
    write_comparison,
    write_dataset,
    write_network,
    write_report,
    write_scatter,
)
from .neighborhood import ConnectionNetwork, Dataset, Framework, WeightConfig, build_framework
from .outliers import DEFAULT_THETA, ModelKind, OutlierReport, detect

SPATIAL_MODELS = (ModelKind.WEIGHTED, ModelKind.CLASSICAL)


@dataclass
class RunConfig:
    """Everything one analysis run needs, file paths included."""

    dataset: str
    attribute: str
    network: Optional[str] = None
    models: tuple[str, ...] = (ModelKind.WEIGHTED.value,)
    strategy: str = "distance"
    alpha: float = 1.0
    beta: float = 0.0
    delta: float = 0.0
    radius: Optional[float] = None
    cost_limit: Optional[float] = None
    polygon_mode: bool = False
    theta: float = DEFAULT_THETA
    out: str = "."
    format: str = "json"
    fail_degenerate: bool = False

    def model_kinds(self) -> tuple[ModelKind, ...]:
        kinds = []
        for name in self.models:
            try:
                kinds.append(ModelKind(name))
            except ValueError:
                raise ConfigError(
                    f"unknown model {name!r}; expected one of "
                    + ", ".join(k.value for k in ModelKind)
                ) from None
        return tuple(kinds)

    def weight_config(self) -> WeightConfig:
        return WeightConfig(
            strategy=self.strategy,
            alpha=self.alpha,
            beta=self.beta,
            delta=self.delta,
            radius=self.radius,
            cost_limit=self.cost_limit,
            polygon_mode=self.polygon_mode,
        )

    def validated(self) -> "RunConfig":
        if not self.dataset:
            raise ConfigError("a dataset path is required")
        if not self.attribute:
            raise ConfigError("an attribute name is required")
        if not self.models:
            raise ConfigError("select at least one model")
        kinds = self.model_kinds()
        if len(set(kinds)) != len(kinds):
            raise ConfigError("each model may be listed only once")
        if self.format not in FORMATS:
            raise ConfigError(
                f"unknown format {self.format!r}; expected one of {', '.join(FORMATS)}"
            )
        if any(kind in SPATIAL_MODELS for kind in kinds):
            self.weight_config().validated()
        return self


@dataclass
class RunResult:
    reports: dict[str, OutlierReport] = field(default_factory=dict)
    comparisons: list[ComparisonReport] = field(default_factory=list)
    files: list[Path] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)


def _detect_collecting_warnings(
    dataset: Dataset,
    attribute: str,
    kind: ModelKind,
    framework: Optional[Framework],
    theta: float,
    collected: list[str],
) -> OutlierReport:
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        report = detect(dataset, attribute, kind, framework, theta)
    for item in caught:
        if issubclass(item.category, DegenerateDistributionWarning):
            collected.append(f"{kind.value}: {item.message}")
        else:
            warnings.warn_explicit(
                item.message, item.category, item.filename, item.lineno
            )
    return report


def analyze(
    config: RunConfig,
    dataset: Dataset,
    network: Optional[ConnectionNetwork] = None,
) -> RunResult:
    """Score the requested models on in-memory data; no files touched."""
    config.validated()
    kinds = config.model_kinds()

    framework: Optional[Framework] = None
    if any(kind in SPATIAL_MODELS for kind in kinds):
        framework = build_framework(dataset, network, config.weight_config())

    result = RunResult()
    for kind in kinds:
        result.reports[kind.value] = _detect_collecting_warnings(
            dataset, config.attribute, kind,
            framework if kind in SPATIAL_MODELS else None,
            config.theta, result.warnings,
        )
    for a, b in combinations(kinds, 2):
        result.comparisons.append(
            compare(result.reports[a.value], result.reports[b.value])
        )
    if config.fail_degenerate and result.warnings:
        raise DegenerateStatisticsError("; ".join(result.warnings))
    return result


def run(config: RunConfig) -> RunResult:
    """Load input files, analyze, and write every output document."""
    config.validated()
    dataset = load_dataset(config.dataset)
    network = load_network(config.network) if config.network else None
    result = analyze(config, dataset, network)

    out = Path(config.out)
    out.mkdir(parents=True, exist_ok=True)
    ext = config.format
    for name, report in result.reports.items():
        report_path = out / f"{name}_report.{ext}"
        scatter_path = out / f"{name}_scatter.{ext}"
        write_report(report, report_path, ext)
        write_scatter(report, scatter_path, ext)
        result.files += [report_path, scatter_path]
    for comparison in result.comparisons:
        path = out / f"comparison_{comparison.baseline_model}_vs_{comparison.candidate_model}.{ext}"
        write_comparison(comparison, path, ext)
        result.files.append(path)
    return result


def run_generate(spec: GenSpec, out: str) -> tuple[Path, Path, tuple[str, ...]]:
    """Generate a synthetic dataset and write it as loadable input files."""
    data = generate(spec)
    out_dir = Path(out)
    out_dir.mkdir(parents=True, exist_ok=True)
    dataset_path = out_dir / "dataset.geojson"
    network_path = out_dir / "network.csv"
    write_dataset(data.dataset, dataset_path)
    write_network(data.network, network_path)
    return dataset_path, network_path, data.planted_ids
