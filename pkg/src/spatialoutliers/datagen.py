"""Synthetic spatial datasets with known planted outliers.

Grids are unit-square tessellations whose rook adjacency is mirrored into
the connection network; point scatters get a radius-based network. Attribute
fields start as white noise and are averaged with their network neighbors a
configurable number of times, which produces positive spatial
autocorrelation. Planted values are written last, expressed in standard
deviations of the smoothed field so they stay meaningful across seeds.

The module also carries the brute-force oracles the property tests compare
the real implementations against; they share no code with those paths.
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass
from typing import Mapping, Optional

import numpy as np

from .errors import InvalidSpecError, TooLargeError
from .geometry import Point, Polygon
from .neighborhood import ConnectionNetwork, Dataset, SpatialObject

ORACLE_MAX_NODES = 10
ORACLE_MAX_OBJECTS = 50

GRID = "grid"
RANDOM_POINTS = "random_points"


@dataclass(frozen=True)
class GenSpec:
    """Deterministic recipe for one synthetic dataset."""

    kind: str = GRID
    rows: int = 5
    cols: int = 5
    n_points: int = 25
    extent: float = 10.0
    cell_size: float = 1.0
    smoothing: int = 0
    planted: tuple[tuple[int, float], ...] = ()
    seed: int = 0
    attribute: str = "value"

    def size(self) -> int:
        return self.rows * self.cols if self.kind == GRID else self.n_points

    def validated(self) -> "GenSpec":
        if self.kind not in (GRID, RANDOM_POINTS):
            raise InvalidSpecError(
                f"unknown kind {self.kind!r}; expected {GRID!r} or {RANDOM_POINTS!r}"
            )
        if self.kind == GRID:
            if self.rows < 1 or self.cols < 1:
                raise InvalidSpecError("grid needs at least one row and column")
            if self.cell_size <= 0:
                raise InvalidSpecError(f"cell_size must be > 0, got {self.cell_size}")
        else:
            if self.n_points < 2:
                raise InvalidSpecError("point scatter needs at least two points")
            if self.extent <= 0:
                raise InvalidSpecError(f"extent must be > 0, got {self.extent}")
        if self.smoothing < 0:
            raise InvalidSpecError(f"smoothing must be >= 0, got {self.smoothing}")
        if not self.attribute:
            raise InvalidSpecError("attribute name cannot be empty")
        seen = set()
        for index, sigmas in self.planted:
            if not 0 <= index < self.size():
                raise InvalidSpecError(
                    f"planted index {index} out of range for {self.size()} objects"
                )
            if index in seen:
                raise InvalidSpecError(f"planted index {index} repeated")
            if not math.isfinite(sigmas):
                raise InvalidSpecError("planted offset must be finite")
            seen.add(index)
        return self


@dataclass
class GeneratedData:
    dataset: Dataset
    network: ConnectionNetwork
    planted_ids: tuple[str, ...] = ()
    spec: Optional[GenSpec] = None


def _round10(value: float) -> float:
    # 10 significant digits, matching the serialization precision.
    return float(f"{value:.10g}")


def _grid_geometry(spec: GenSpec) -> tuple[list[SpatialObject], list[tuple[str, str, float]]]:
    objects = []
    edges = []
    s = spec.cell_size
    for r in range(spec.rows):
        for c in range(spec.cols):
            oid = str(r * spec.cols + c)
            poly = Polygon.from_coords(
                [(c * s, r * s), ((c + 1) * s, r * s), ((c + 1) * s, (r + 1) * s), (c * s, (r + 1) * s)]
            )
            objects.append(SpatialObject(oid, poly, {}))
            if c + 1 < spec.cols:
                edges.append((oid, str(r * spec.cols + c + 1), s))
            if r + 1 < spec.rows:
                edges.append((oid, str((r + 1) * spec.cols + c), s))
    return objects, edges


def _scatter_geometry(spec: GenSpec, rng: np.random.Generator) -> tuple[list[SpatialObject], list[tuple[str, str, float]]]:
    coords = rng.uniform(0.0, spec.extent, size=(spec.n_points, 2))
    objects = [
        SpatialObject(str(i), Point(_round10(x), _round10(y)), {})
        for i, (x, y) in enumerate(coords)
    ]
    # Radius that keeps the expected node degree modest but the graph mostly
    # connected for uniform scatters.
    reach = spec.extent * 1.4 / math.sqrt(spec.n_points)
    edges = []
    for i in range(spec.n_points):
        for j in range(i + 1, spec.n_points):
            a, b = objects[i].geometry, objects[j].geometry
            d = math.hypot(a.x - b.x, a.y - b.y)
            if 0.0 < d <= reach:
                edges.append((str(i), str(j), _round10(d)))
    return objects, edges


def generate(spec: GenSpec) -> GeneratedData:
    """Build the dataset and network a spec describes; fully seed-determined."""
    spec = spec.validated()
    rng = np.random.default_rng(spec.seed)

    if spec.kind == GRID:
        objects, edges = _grid_geometry(spec)
    else:
        objects, edges = _scatter_geometry(spec, rng)

    n = len(objects)
    values = rng.normal(loc=10.0, scale=2.0, size=n)

    neighbors: list[list[int]] = [[] for _ in range(n)]
    for a, b, _cost in edges:
        neighbors[int(a)].append(int(b))
        neighbors[int(b)].append(int(a))

    for _ in range(spec.smoothing):
        smoothed = values.copy()
        for i in range(n):
            around = neighbors[i]
            smoothed[i] = (values[i] + values[around].sum()) / (1 + len(around))
        values = smoothed

    planted_ids = []
    if spec.planted:
        mean = float(values.mean())
        sigma = float(values.std())  # population sd of the smoothed field
        for index, sigmas in spec.planted:
            values[index] = mean + sigmas * sigma
            planted_ids.append(str(index))

    objects = [
        SpatialObject(obj.id, obj.geometry, {spec.attribute: _round10(float(v))})
        for obj, v in zip(objects, values)
    ]
    return GeneratedData(
        dataset=Dataset(objects),
        network=ConnectionNetwork(edges),
        planted_ids=tuple(planted_ids),
        spec=spec,
    )


def oracle_min_cost(
    network: ConnectionNetwork, source: str, target: str, limit: Optional[float] = None
) -> float:
    """Cheapest path by exhaustive enumeration of simple paths.

    Only for tiny graphs; the real implementation has no size limit.
    """
    nodes = network.ids
    if len(nodes) > ORACLE_MAX_NODES:
        raise TooLargeError(
            f"oracle handles at most {ORACLE_MAX_NODES} nodes, got {len(nodes)}"
        )
    if source == target:
        return 0.0

    adjacency: dict[str, list[tuple[str, float]]] = {}
    for a, b, cost in network.edges:
        adjacency.setdefault(a, []).append((b, cost))
        adjacency.setdefault(b, []).append((a, cost))

    best = math.inf

    def walk(node: str, spent: float, seen: frozenset) -> None:
        nonlocal best
        for nb, cost in adjacency.get(node, ()):
            if nb in seen:
                continue
            total = spent + cost
            if limit is not None and total > limit:
                continue
            if nb == target:
                best = min(best, total)
                continue
            walk(nb, total, seen | {nb})

    walk(source, 0.0, frozenset([source]))
    return best


def oracle_detect(
    values: Mapping[str, float],
    weights_by_id: Mapping[str, Mapping[str, float]],
    theta: float = 2.0,
) -> tuple[dict[str, float], set]:
    """Z-scores and flag set computed naively from first principles.

    Takes the weight table directly so it shares nothing with the real
    scoring path; plain sums and statistics-module moments throughout.
    """
    if len(values) > ORACLE_MAX_OBJECTS:
        raise TooLargeError(
            f"oracle handles at most {ORACLE_MAX_OBJECTS} objects, got {len(values)}"
        )
    diffs = {}
    for oid, weights in weights_by_id.items():
        expected = sum(w * values[nb] for nb, w in weights.items())
        diffs[oid] = values[oid] - expected
    mu = statistics.fmean(diffs.values())
    sigma = statistics.pstdev(diffs.values())
    scale = max(abs(v) for v in values.values())
    if sigma <= 1e-12 * scale:
        return {oid: 0.0 for oid in diffs}, set()
    z = {oid: (d - mu) / sigma for oid, d in diffs.items()}
    flags = {oid for oid, zv in z.items() if abs(zv) > theta}
    return z, flags
