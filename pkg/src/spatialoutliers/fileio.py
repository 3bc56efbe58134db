"""File formats: GeoJSON datasets, delimited networks, flat configs, reports.

Datasets are GeoJSON-compatible feature collections restricted to Point and
Polygon geometries. Networks are three-column delimited text. Reports,
scatter data, and comparisons serialize to JSON or CSV with numbers trimmed
to 10 significant digits; dataset and network files keep full float
precision so a write/load round trip reproduces the original exactly.
"""

from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path
from typing import Any, Mapping, Union

from .errors import (
    ConfigError,
    InvalidGeometryError,
    ParseError,
)
from .evaluation import ComparisonReport
from .geometry import Point, Polygon, validate_polygon
from .neighborhood import ConnectionNetwork, Dataset, SpatialObject
from .outliers import OutlierReport

PathLike = Union[str, Path]

NETWORK_HEADER = ("from_id", "to_id", "cost")

CONFIG_KEYS = frozenset(
    {
        "dataset",
        "network",
        "attribute",
        "model",
        "strategy",
        "alpha",
        "beta",
        "delta",
        "radius",
        "cost_limit",
        "theta",
        "polygon_mode",
        "out",
        "format",
        "seed",
    }
)

FORMATS = ("json", "csv")


def fmt10(value: float) -> float:
    """Trim a float to 10 significant digits (idempotent)."""
    return float(f"{value:.10g}")


def _reject_constant(token: str) -> float:
    raise ParseError(f"non-finite number {token!r} is not allowed")


def _read_json(path: PathLike) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh, parse_constant=_reject_constant)
    except OSError as err:
        raise ParseError(f"cannot read {path}: {err}") from None
    except json.JSONDecodeError as err:
        raise ParseError(
            f"{path}: invalid JSON at line {err.lineno} column {err.colno}: {err.msg}"
        ) from None


def _write_json(document: Any, path: PathLike) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(document, fh, indent=2, ensure_ascii=False, allow_nan=False)
        fh.write("\n")


# --- datasets ---


def _parse_geometry(raw: Any, oid: str) -> Union[Point, Polygon]:
    if not isinstance(raw, dict):
        raise InvalidGeometryError(f"object {oid!r}: geometry must be an object")
    kind = raw.get("type")
    coords = raw.get("coordinates")
    try:
        if kind == "Point":
            x, y = float(coords[0]), float(coords[1])
            return Point(x, y)
        if kind == "Polygon":
            rings = [[(float(p[0]), float(p[1])) for p in ring] for ring in coords]
            if not rings:
                raise InvalidGeometryError("no rings")
            poly = Polygon.from_coords(rings[0], holes=rings[1:])
            validate_polygon(poly)
            return poly
    except InvalidGeometryError as err:
        raise InvalidGeometryError(f"object {oid!r}: {err}") from None
    except (TypeError, ValueError, IndexError, KeyError) as err:
        raise InvalidGeometryError(f"object {oid!r}: malformed coordinates ({err})") from None
    raise InvalidGeometryError(f"object {oid!r}: unsupported geometry type {kind!r}")


def _parse_feature(raw: Any, index: int) -> SpatialObject:
    if not isinstance(raw, dict) or raw.get("type") != "Feature":
        raise ParseError(f"feature #{index} is not a Feature object")
    properties = raw.get("properties") or {}
    if not isinstance(properties, Mapping):
        raise ParseError(f"feature #{index}: properties must be an object")
    oid = raw.get("id", properties.get("id"))
    if oid is None:
        raise ParseError(f"feature #{index} has no id")
    oid = str(oid)
    attributes: dict[str, float] = {}
    for key, value in properties.items():
        if key == "id" or isinstance(value, bool) or not isinstance(value, (int, float)):
            continue
        if not math.isfinite(value):
            raise ParseError(f"object {oid!r}: attribute {key!r} is not finite")
        attributes[key] = float(value)
    geometry = _parse_geometry(raw.get("geometry"), oid)
    return SpatialObject(oid, geometry, attributes)


def dataset_from_mapping(document: Any, source: str = "<data>") -> Dataset:
    """Build a dataset from an already-decoded feature collection."""
    if not isinstance(document, dict) or document.get("type") != "FeatureCollection":
        raise ParseError(f"{source}: expected a FeatureCollection")
    features = document.get("features")
    if not isinstance(features, list):
        raise ParseError(f"{source}: features must be a list")
    return Dataset(_parse_feature(f, i) for i, f in enumerate(features))


def load_dataset(path: PathLike) -> Dataset:
    """Read a feature collection of Points and Polygons with numeric attributes."""
    return dataset_from_mapping(_read_json(path), source=str(path))


def _geometry_to_json(geometry: Union[Point, Polygon]) -> dict:
    if isinstance(geometry, Point):
        return {"type": "Point", "coordinates": [geometry.x, geometry.y]}
    return {
        "type": "Polygon",
        "coordinates": [[[p.x, p.y] for p in ring] for ring in geometry.rings],
    }


def dataset_to_mapping(dataset: Dataset) -> dict:
    return {
        "type": "FeatureCollection",
        "features": [
            {
                "type": "Feature",
                "id": obj.id,
                "geometry": _geometry_to_json(obj.geometry),
                "properties": dict(obj.attributes),
            }
            for obj in dataset
        ],
    }


def write_dataset(dataset: Dataset, path: PathLike) -> None:
    _write_json(dataset_to_mapping(dataset), path)


# --- networks ---


def load_network(path: PathLike) -> ConnectionNetwork:
    """Read from_id,to_id,cost rows; a header row is recognized and skipped."""
    try:
        with open(path, encoding="utf-8", newline="") as fh:
            raw_rows = list(csv.reader(fh))
    except OSError as err:
        raise ParseError(f"cannot read {path}: {err}") from None

    edges: list[tuple[str, str, float]] = []
    for lineno, row in enumerate(raw_rows, start=1):
        if not row or all(not cell.strip() for cell in row):
            continue
        fields = [cell.strip() for cell in row]
        if lineno == 1 and tuple(f.lower() for f in fields) == NETWORK_HEADER:
            continue
        if len(fields) != 3:
            raise ParseError(f"{path}:{lineno}: expected 3 fields, got {len(fields)}")
        src, dst, cost_text = fields
        if not src or not dst:
            raise ParseError(f"{path}:{lineno}: empty endpoint id")
        if src == dst:
            raise ParseError(f"{path}:{lineno}: connection links {src!r} to itself")
        try:
            cost = float(cost_text)
        except ValueError:
            raise ParseError(f"{path}:{lineno}: cost {cost_text!r} is not a number") from None
        if not math.isfinite(cost) or cost <= 0:
            raise ParseError(f"{path}:{lineno}: cost must be positive, got {cost_text}")
        edges.append((src, dst, cost))
    return ConnectionNetwork(edges)


def write_network(network: ConnectionNetwork, path: PathLike) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(NETWORK_HEADER)
        for src, dst, cost in network.edges:
            writer.writerow([src, dst, repr(cost)])


# --- config files ---


def load_config(path: PathLike) -> dict[str, str]:
    """Flat `key = value` lines; '#' starts a comment; later keys win."""
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as err:
        raise ConfigError(f"cannot read {path}: {err}") from None
    config: dict[str, str] = {}
    for lineno, line in enumerate(lines, start=1):
        text = line.split("#", 1)[0].strip()
        if not text:
            continue
        if "=" not in text:
            raise ConfigError(f"{path}:{lineno}: expected key = value")
        key, value = (part.strip() for part in text.split("=", 1))
        if key not in CONFIG_KEYS:
            raise ConfigError(
                f"{path}:{lineno}: unknown key {key!r}; known keys: "
                + ", ".join(sorted(CONFIG_KEYS))
            )
        if not value:
            raise ConfigError(f"{path}:{lineno}: empty value for {key!r}")
        config[key] = value
    return config


# --- reports ---


def report_to_dict(report: OutlierReport) -> dict:
    return {
        "model": report.model.value,
        "attribute": report.attribute,
        "theta": fmt10(report.theta),
        "mu": fmt10(report.mu),
        "sigma": fmt10(report.sigma),
        "degenerate": report.degenerate,
        "n_scored": len(report.scores),
        "outliers": [s.object_id for s in report.scores if s.is_outlier],
        "excluded": list(report.excluded),
        "scores": [
            {
                "id": s.object_id,
                "value": fmt10(s.value),
                "expected": fmt10(s.expected),
                "deviation": fmt10(s.deviation),
                "z": fmt10(s.z),
                "is_outlier": s.is_outlier,
            }
            for s in report.scores
        ],
    }


def comparison_to_dict(comparison: ComparisonReport) -> dict:
    mean_pct = comparison.mean_improvement_pct
    return {
        "baseline_model": comparison.baseline_model,
        "candidate_model": comparison.candidate_model,
        "attribute": comparison.attribute,
        "n_rows": len(comparison.rows),
        "mean_squared_reduction": fmt10(comparison.mean_squared_reduction),
        "mean_improvement_pct": None if mean_pct is None else fmt10(mean_pct),
        "zero_baseline_ids": list(comparison.zero_baseline_ids),
        "flagged_both": list(comparison.flagged_both),
        "flagged_baseline_only": list(comparison.flagged_baseline_only),
        "flagged_candidate_only": list(comparison.flagged_candidate_only),
        "rows": [
            {
                "id": r.object_id,
                "value": fmt10(r.value),
                "expected_baseline": fmt10(r.expected_baseline),
                "expected_candidate": fmt10(r.expected_candidate),
                "error_baseline": fmt10(r.error_baseline),
                "error_candidate": fmt10(r.error_candidate),
                "squared_reduction": fmt10(r.squared_reduction),
                "improvement_pct": None if r.improvement_pct is None else fmt10(r.improvement_pct),
            }
            for r in comparison.rows
        ],
    }


def _check_format(fmt: str) -> str:
    if fmt not in FORMATS:
        raise ConfigError(f"unknown format {fmt!r}; expected one of {', '.join(FORMATS)}")
    return fmt


def _g(value: float) -> str:
    return f"{value:.10g}"


def write_report(report: OutlierReport, path: PathLike, fmt: str = "json") -> None:
    if _check_format(fmt) == "json":
        _write_json(report_to_dict(report), path)
        return
    buf = io.StringIO()
    buf.write(f"# model={report.model.value}\n")
    buf.write(f"# attribute={report.attribute}\n")
    buf.write(f"# theta={_g(report.theta)}\n")
    buf.write(f"# mu={_g(report.mu)}\n")
    buf.write(f"# sigma={_g(report.sigma)}\n")
    buf.write(f"# degenerate={str(report.degenerate).lower()}\n")
    buf.write(f"# excluded={','.join(report.excluded)}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["id", "value", "expected", "deviation", "z", "is_outlier"])
    for s in report.scores:
        writer.writerow(
            [s.object_id, _g(s.value), _g(s.expected), _g(s.deviation), _g(s.z),
             str(s.is_outlier).lower()]
        )
    Path(path).write_text(buf.getvalue(), encoding="utf-8")


def write_scatter(report: OutlierReport, path: PathLike, fmt: str = "csv") -> None:
    """Plot-ready rows: id, observed value, expected value, z."""
    if _check_format(fmt) == "json":
        _write_json(
            {
                "model": report.model.value,
                "attribute": report.attribute,
                "points": [
                    {"id": s.object_id, "value": fmt10(s.value),
                     "expected": fmt10(s.expected), "z": fmt10(s.z)}
                    for s in report.scores
                ],
            },
            path,
        )
        return
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["id", "value", "expected", "z"])
    for s in report.scores:
        writer.writerow([s.object_id, _g(s.value), _g(s.expected), _g(s.z)])
    Path(path).write_text(buf.getvalue(), encoding="utf-8")


def write_comparison(comparison: ComparisonReport, path: PathLike, fmt: str = "json") -> None:
    if _check_format(fmt) == "json":
        _write_json(comparison_to_dict(comparison), path)
        return
    buf = io.StringIO()
    buf.write(f"# baseline_model={comparison.baseline_model}\n")
    buf.write(f"# candidate_model={comparison.candidate_model}\n")
    buf.write(f"# attribute={comparison.attribute}\n")
    buf.write(f"# mean_squared_reduction={_g(comparison.mean_squared_reduction)}\n")
    pct = comparison.mean_improvement_pct
    buf.write(f"# mean_improvement_pct={'' if pct is None else _g(pct)}\n")
    buf.write(f"# zero_baseline_ids={','.join(comparison.zero_baseline_ids)}\n")
    buf.write(f"# flagged_both={','.join(comparison.flagged_both)}\n")
    buf.write(f"# flagged_baseline_only={','.join(comparison.flagged_baseline_only)}\n")
    buf.write(f"# flagged_candidate_only={','.join(comparison.flagged_candidate_only)}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(
        ["id", "value", "expected_baseline", "expected_candidate",
         "error_baseline", "error_candidate", "squared_reduction", "improvement_pct"]
    )
    for r in comparison.rows:
        writer.writerow(
            [r.object_id, _g(r.value), _g(r.expected_baseline), _g(r.expected_candidate),
             _g(r.error_baseline), _g(r.error_candidate), _g(r.squared_reduction),
             "" if r.improvement_pct is None else _g(r.improvement_pct)]
        )
    Path(path).write_text(buf.getvalue(), encoding="utf-8")


def read_report(path: PathLike) -> dict:
    """Load a JSON report document back for summarizing."""
    document = _read_json(path)
    if not isinstance(document, dict) or "scores" not in document or "model" not in document:
        raise ParseError(f"{path}: not a report document")
    return document
