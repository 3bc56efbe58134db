"""Spatial objects, connection networks, and weighted neighborhood frameworks.

A weighted neighborhood maps each neighbor id of an object to a weight in
[0, 1]; per object the weights sum to 1, and the weight X assigns Y is stored
independently of the weight Y assigns X. Neighbor sets come from one of four
strategies: direct network connections, a distance buffer around object
centers, shared polygon boundaries, or a hybrid that unions the factor sets.
"""

from __future__ import annotations

import heapq
import math
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Optional

from .errors import (
    CoefficientSumError,
    ConfigError,
    DataError,
    DuplicateIdError,
    EmptyDatasetError,
    EmptyNeighborhoodError,
    InvalidRadiusError,
    MissingAttributeError,
    MissingFactorDataError,
    NoConnectionsError,
    NotPolygonalError,
    ReferentialError,
    UnknownObjectError,
    WeightsNotNormalizedError,
    ZeroCostError,
    ZeroDistanceError,
)
from .geometry import (
    Geometry,
    Point,
    Polygon,
    area_of,
    center_of,
    euclidean_distance,
    shares_boundary,
    within_buffer,
)

STRATEGIES = ("graph", "distance", "adjacency", "hybrid")

# |sum(weights) - 1| above this means a weight vector is not normalized.
WEIGHT_SUM_TOLERANCE = 1e-9
COEFFICIENT_SUM_TOLERANCE = 1e-12


@dataclass(frozen=True)
class SpatialObject:
    """One analysis unit: an id, a geometry, and numeric attributes."""

    id: str
    geometry: Geometry
    attributes: Mapping[str, float]

    @cached_property
    def center(self) -> Point:
        return center_of(self.geometry)

    @property
    def is_polygon(self) -> bool:
        return isinstance(self.geometry, Polygon)

    def value(self, attribute: str) -> float:
        try:
            v = self.attributes[attribute]
        except KeyError:
            raise MissingAttributeError(
                f"object {self.id!r} has no attribute {attribute!r}"
            ) from None
        if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
            raise MissingAttributeError(
                f"object {self.id!r} attribute {attribute!r} is not a finite number"
            )
        return float(v)


class Dataset:
    """Ordered collection of spatial objects with unique ids."""

    def __init__(self, objects: Iterable[SpatialObject]):
        self.objects: tuple[SpatialObject, ...] = tuple(objects)
        if not self.objects:
            raise EmptyDatasetError("dataset holds no objects")
        self._by_id: dict[str, SpatialObject] = {}
        for obj in self.objects:
            if obj.id in self._by_id:
                raise DuplicateIdError(f"duplicate object id {obj.id!r}")
            self._by_id[obj.id] = obj

    def __len__(self) -> int:
        return len(self.objects)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Dataset):
            return NotImplemented
        return self.objects == other.objects

    def __iter__(self) -> Iterator[SpatialObject]:
        return iter(self.objects)

    def __contains__(self, object_id: str) -> bool:
        return object_id in self._by_id

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(o.id for o in self.objects)

    def get(self, object_id: str) -> SpatialObject:
        try:
            return self._by_id[object_id]
        except KeyError:
            raise UnknownObjectError(f"unknown object id {object_id!r}") from None

    @property
    def is_polygonal(self) -> bool:
        return all(o.is_polygon for o in self.objects)

    def attribute_values(self, attribute: str) -> dict[str, float]:
        """All values of one attribute, keyed by id; every object must have it."""
        values: dict[str, float] = {}
        missing: list[str] = []
        for obj in self.objects:
            try:
                values[obj.id] = obj.value(attribute)
            except MissingAttributeError:
                missing.append(obj.id)
        if missing:
            shown = ", ".join(missing[:5]) + (", ..." if len(missing) > 5 else "")
            raise MissingAttributeError(
                f"attribute {attribute!r} missing or non-numeric on "
                f"{len(missing)} object(s): {shown}"
            )
        return values


class ConnectionNetwork:
    """Undirected multigraph of connections with positive traversal costs.

    Parallel edges are kept: the count between two objects is a weighting
    input, while path costs use the cheapest edge per pair.
    """

    def __init__(self, edges: Iterable[tuple[str, str, float]] = ()):
        self.edges: tuple[tuple[str, str, float], ...] = tuple(
            (str(a), str(b), float(c)) for a, b, c in edges
        )
        self._counts: dict[str, Counter] = {}
        self._costs: dict[str, dict[str, float]] = {}
        for a, b, cost in self.edges:
            if a == b:
                raise DataError(f"connection links object {a!r} to itself")
            if not math.isfinite(cost) or cost <= 0:
                raise ZeroCostError(
                    f"connection cost must be a positive finite number, "
                    f"got {cost} for {a!r} -> {b!r}"
                )
            for u, v in ((a, b), (b, a)):
                self._counts.setdefault(u, Counter())[v] += 1
                best = self._costs.setdefault(u, {})
                if v not in best or cost < best[v]:
                    best[v] = cost

    def __len__(self) -> int:
        return len(self.edges)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ConnectionNetwork):
            return NotImplemented
        return self.edges == other.edges

    @property
    def ids(self) -> frozenset:
        return frozenset(self._counts)

    def direct_connections(self, object_id: str) -> frozenset:
        return frozenset(self._counts.get(object_id, ()))

    def connection_count(self, a: str, b: str) -> int:
        return self._counts.get(a, Counter())[b]

    def total_connections(self, object_id: str) -> int:
        return sum(self._counts.get(object_id, Counter()).values())

    def min_cost(self, source: str, target: str, limit: Optional[float] = None) -> float:
        """Cheapest path cost between two objects, or inf when unreachable.

        With a limit, paths costing more than the limit are treated as
        unreachable; a path costing exactly the limit still counts.
        """
        if source == target:
            return 0.0
        best: dict[str, float] = {source: 0.0}
        queue: list[tuple[float, str]] = [(0.0, source)]
        done: set[str] = set()
        while queue:
            dist, node = heapq.heappop(queue)
            if node in done:
                continue
            if node == target:
                return dist
            done.add(node)
            for nb, cost in self._costs.get(node, {}).items():
                nd = dist + cost
                if limit is not None and nd > limit:
                    continue
                if nd < best.get(nb, math.inf):
                    best[nb] = nd
                    heapq.heappush(queue, (nd, nb))
        return math.inf

    def validate_against(self, dataset: Dataset) -> None:
        unknown = sorted(self.ids - set(dataset.ids))
        if unknown:
            shown = ", ".join(repr(u) for u in unknown[:5])
            raise ReferentialError(
                f"{len(unknown)} connection endpoint(s) not in dataset: {shown}"
            )


@dataclass(frozen=True)
class WeightConfig:
    """Parameters controlling neighbor discovery and weighting.

    The factor coefficients only matter for the hybrid strategy, where they
    must sum to 1. polygon_mode switches weighting to area-over-distance and
    requires polygon geometries; it is incompatible with hybrid, which
    defines its own weighting.
    """

    strategy: str = "distance"
    alpha: float = 1.0
    beta: float = 0.0
    delta: float = 0.0
    radius: Optional[float] = None
    cost_limit: Optional[float] = None
    polygon_mode: bool = False

    def validated(self) -> "WeightConfig":
        if self.strategy not in STRATEGIES:
            raise ConfigError(
                f"unknown strategy {self.strategy!r}; expected one of "
                + ", ".join(STRATEGIES)
            )
        for name, value in (("alpha", self.alpha), ("beta", self.beta), ("delta", self.delta)):
            if not (isinstance(value, (int, float)) and 0.0 <= value <= 1.0):
                raise CoefficientSumError(f"{name} must lie in [0, 1], got {value}")
        if self.strategy == "hybrid":
            total = math.fsum((self.alpha, self.beta, self.delta))
            if abs(total - 1.0) > COEFFICIENT_SUM_TOLERANCE:
                raise CoefficientSumError(
                    f"hybrid coefficients must sum to 1, got {total!r}"
                )
        if self.radius is not None and self.radius <= 0:
            raise InvalidRadiusError(f"radius must be > 0, got {self.radius}")
        if self.strategy == "distance" and self.radius is None:
            raise InvalidRadiusError("distance strategy requires a radius")
        if self.strategy == "hybrid" and self.alpha > 0 and self.radius is None:
            raise InvalidRadiusError(
                "hybrid strategy with a distance coefficient requires a radius"
            )
        if self.cost_limit is not None and self.cost_limit <= 0:
            raise ConfigError(f"cost limit must be > 0, got {self.cost_limit}")
        if self.polygon_mode and self.strategy == "hybrid":
            raise ConfigError("polygon_mode cannot be combined with the hybrid strategy")
        return self


@dataclass(frozen=True)
class WeightedNeighborhood:
    """Weights one object assigns to each of its neighbors; they sum to 1."""

    object_id: str
    weights: Mapping[str, float]

    @classmethod
    def from_external(cls, object_id: str, weights: Mapping[str, float]) -> "WeightedNeighborhood":
        """Wrap externally supplied weights, enforcing the invariants."""
        if not weights:
            raise EmptyNeighborhoodError(f"object {object_id!r} has no neighbors")
        for nb, w in weights.items():
            if not (isinstance(w, (int, float)) and math.isfinite(w) and w >= 0):
                raise WeightsNotNormalizedError(
                    f"weight for {object_id!r} -> {nb!r} must be a finite "
                    f"non-negative number, got {w}"
                )
        total = math.fsum(weights.values())
        if abs(total - 1.0) > WEIGHT_SUM_TOLERANCE:
            raise WeightsNotNormalizedError(
                f"weights for object {object_id!r} sum to {total!r}, expected 1"
            )
        ordered = {nb: float(weights[nb]) for nb in sorted(weights)}
        return cls(object_id, ordered)

    @property
    def neighbor_ids(self) -> tuple[str, ...]:
        return tuple(self.weights)

    def total(self) -> float:
        return math.fsum(self.weights.values())


@dataclass
class Framework:
    """All weighted neighborhoods of a dataset plus the isolated objects."""

    neighborhoods: dict[str, WeightedNeighborhood] = field(default_factory=dict)
    isolated: tuple[str, ...] = ()

    def neighborhood_of(self, object_id: str) -> WeightedNeighborhood:
        try:
            return self.neighborhoods[object_id]
        except KeyError:
            pass
        if object_id in self.isolated:
            raise EmptyNeighborhoodError(f"object {object_id!r} has no neighbors")
        raise UnknownObjectError(f"object {object_id!r} is not in this framework")


# --- neighbor discovery ---


def graph_neighbors(network: ConnectionNetwork, object_id: str) -> frozenset:
    """Objects directly connected to the given one."""
    return network.direct_connections(object_id)


def distance_neighbors(dataset: Dataset, object_id: str, radius: float) -> frozenset:
    """Objects whose centers fall inside or on the buffer circle."""
    center = dataset.get(object_id).center
    return frozenset(
        other.id
        for other in dataset
        if other.id != object_id and within_buffer(other.center, center, radius)
    )


def adjacency_neighbors(dataset: Dataset, object_id: str) -> frozenset:
    """Polygons sharing a boundary segment of positive length."""
    obj = dataset.get(object_id)
    if not obj.is_polygon:
        raise NotPolygonalError(f"object {object_id!r} is not a polygon")
    found = []
    for other in dataset:
        if other.id == object_id:
            continue
        if not other.is_polygon:
            raise NotPolygonalError(f"object {other.id!r} is not a polygon")
        if shares_boundary(obj.geometry, other.geometry):
            found.append(other.id)
    return frozenset(found)


def direct_connection_count(network: ConnectionNetwork, a: str, b: str) -> int:
    return network.connection_count(a, b)


def min_cost(network: ConnectionNetwork, a: str, b: str, limit: Optional[float] = None) -> float:
    return network.min_cost(a, b, limit)


# --- weighting ---


def _normalized(pairs: list[tuple[str, float]]) -> dict[str, float]:
    total = math.fsum(value for _, value in pairs)
    return {key: value / total for key, value in pairs}


def uniform_weights(neighbor_ids: Iterable[str]) -> dict[str, float]:
    """Equal weight for every neighbor."""
    ordered = sorted(neighbor_ids)
    if not ordered:
        raise EmptyNeighborhoodError("cannot weight an empty neighbor set")
    share = 1.0 / len(ordered)
    return {nb: share for nb in ordered}


def distance_weights(dataset: Dataset, object_id: str, neighbor_ids: Iterable[str]) -> dict[str, float]:
    """Weights proportional to inverse center distance."""
    ordered = sorted(neighbor_ids)
    if not ordered:
        raise EmptyNeighborhoodError(f"object {object_id!r} has no neighbors to weight")
    center = dataset.get(object_id).center
    pairs = []
    for nb in ordered:
        d = euclidean_distance(center, dataset.get(nb).center)
        if d == 0.0:
            raise ZeroDistanceError(
                f"objects {object_id!r} and {nb!r} have coincident centers"
            )
        pairs.append((nb, 1.0 / d))
    return _normalized(pairs)


def connection_weights(network: ConnectionNetwork, object_id: str, neighbor_ids: Iterable[str]) -> dict[str, float]:
    """Weights proportional to the number of direct connections."""
    ordered = sorted(neighbor_ids)
    if not ordered:
        raise EmptyNeighborhoodError(f"object {object_id!r} has no neighbors to weight")
    pairs = [(nb, float(network.connection_count(object_id, nb))) for nb in ordered]
    if not any(count for _, count in pairs):
        raise NoConnectionsError(
            f"object {object_id!r} has no connections to any listed neighbor"
        )
    return _normalized(pairs)


def polygon_weights(dataset: Dataset, object_id: str, neighbor_ids: Iterable[str]) -> dict[str, float]:
    """Weights proportional to neighbor area over center distance."""
    ordered = sorted(neighbor_ids)
    if not ordered:
        raise EmptyNeighborhoodError(f"object {object_id!r} has no neighbors to weight")
    obj = dataset.get(object_id)
    if not obj.is_polygon:
        raise NotPolygonalError(f"object {object_id!r} is not a polygon")
    center = obj.center
    pairs = []
    for nb in ordered:
        other = dataset.get(nb)
        if not other.is_polygon:
            raise NotPolygonalError(f"object {nb!r} is not a polygon")
        d = euclidean_distance(center, other.center)
        if d == 0.0:
            raise ZeroDistanceError(
                f"objects {object_id!r} and {nb!r} have coincident centers"
            )
        pairs.append((nb, area_of(other.geometry) / d))
    return _normalized(pairs)


def hybrid_neighbors(
    dataset: Dataset,
    network: Optional[ConnectionNetwork],
    object_id: str,
    config: WeightConfig,
) -> frozenset:
    """Union of the neighbor sets of every factor with a nonzero coefficient."""
    found: set = set()
    if config.alpha > 0:
        found |= distance_neighbors(dataset, object_id, config.radius)
    if config.beta > 0 or config.delta > 0:
        if network is None:
            raise MissingFactorDataError(
                "hybrid connection/cost factors require a connection network"
            )
        found |= graph_neighbors(network, object_id)
    return frozenset(found)


def hybrid_weights(
    dataset: Dataset,
    network: Optional[ConnectionNetwork],
    object_id: str,
    neighbor_ids: Iterable[str],
    config: WeightConfig,
) -> dict[str, float]:
    """Coefficient-weighted blend of distance, connection, and cost factors.

    Each factor is normalized over the whole neighbor set before blending,
    so a factor that knows nothing about a particular neighbor contributes
    zero there. A factor with no usable data anywhere hands its coefficient
    to the remaining live factors; if no factor has data, that is an error.
    """
    ordered = sorted(neighbor_ids)
    if not ordered:
        raise EmptyNeighborhoodError(f"object {object_id!r} has no neighbors to weight")
    factors: list[tuple[float, dict[str, float]]] = []

    if config.alpha > 0:
        center = dataset.get(object_id).center
        in_buffer = distance_neighbors(dataset, object_id, config.radius)
        raw = {}
        for nb in ordered:
            if nb not in in_buffer:
                raw[nb] = 0.0
                continue
            d = euclidean_distance(center, dataset.get(nb).center)
            if d == 0.0:
                raise ZeroDistanceError(
                    f"objects {object_id!r} and {nb!r} have coincident centers"
                )
            raw[nb] = 1.0 / d
        factors.append((config.alpha, raw))

    if config.beta > 0 or config.delta > 0:
        if network is None:
            raise MissingFactorDataError(
                "hybrid connection/cost factors require a connection network"
            )

    if config.beta > 0:
        raw = {nb: float(network.connection_count(object_id, nb)) for nb in ordered}
        factors.append((config.beta, raw))

    if config.delta > 0:
        raw = {}
        for nb in ordered:
            cost = network.min_cost(object_id, nb, config.cost_limit)
            raw[nb] = 0.0 if math.isinf(cost) else 1.0 / cost
        factors.append((config.delta, raw))

    live: list[tuple[float, dict[str, float]]] = []
    for coef, raw in factors:
        total = math.fsum(raw[nb] for nb in ordered)
        if total > 0.0:
            live.append((coef, {nb: raw[nb] / total for nb in ordered}))
    if not live:
        raise MissingFactorDataError(
            f"no weight factor has usable data for object {object_id!r}"
        )
    live_total = math.fsum(coef for coef, _ in live)
    # each share is <= 1 and the coefficient ratios sum to 1, so the true
    # blend never exceeds 1; min() undoes the one-ulp float overshoot that
    # multi-factor sums can produce (e.g. a single-neighbor blend)
    return {
        nb: min(1.0, math.fsum((coef / live_total) * shares[nb] for coef, shares in live))
        for nb in ordered
    }


def build_framework(
    dataset: Dataset,
    network: Optional[ConnectionNetwork],
    config: WeightConfig,
) -> Framework:
    """Discover neighbors and weight them for every object in the dataset.

    Objects with no neighbors under the chosen strategy are reported as
    isolated rather than failing the whole run.
    """
    config = config.validated()
    if network is not None:
        network.validate_against(dataset)
    if config.strategy == "graph" and network is None:
        raise MissingFactorDataError("graph strategy requires a connection network")
    if (config.polygon_mode or config.strategy == "adjacency") and not dataset.is_polygonal:
        raise NotPolygonalError(
            "adjacency discovery and polygon_mode require polygon geometries"
        )

    framework = Framework()
    isolated: list[str] = []
    for obj in dataset:
        if config.strategy == "graph":
            neighbors = graph_neighbors(network, obj.id)
        elif config.strategy == "distance":
            neighbors = distance_neighbors(dataset, obj.id, config.radius)
        elif config.strategy == "adjacency":
            neighbors = adjacency_neighbors(dataset, obj.id)
        else:
            neighbors = hybrid_neighbors(dataset, network, obj.id, config)

        if not neighbors:
            isolated.append(obj.id)
            continue

        if config.strategy == "hybrid":
            weights = hybrid_weights(dataset, network, obj.id, neighbors, config)
        elif config.polygon_mode:
            weights = polygon_weights(dataset, obj.id, neighbors)
        elif config.strategy == "distance":
            weights = distance_weights(dataset, obj.id, neighbors)
        elif config.strategy == "graph":
            weights = connection_weights(network, obj.id, neighbors)
        else:
            weights = uniform_weights(neighbors)

        framework.neighborhoods[obj.id] = WeightedNeighborhood(obj.id, weights)
    framework.isolated = tuple(sorted(isolated))
    return framework
