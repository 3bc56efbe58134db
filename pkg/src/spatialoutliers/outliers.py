"""Outlier scoring: neighborhood expectations, deviations, significance.

An object's deviation is its own attribute value minus the value its
neighborhood predicts for it. Deviations are standardized over the whole
dataset (population statistics) and objects beyond the threshold are
flagged. Three models differ only in how they predict: a weighted sum over
the neighborhood, a plain neighborhood mean, or the global mean that
ignores spatial structure entirely.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping, Optional

from .errors import (
    ConfigError,
    DegenerateDistributionWarning,
    EmptyDatasetError,
    EmptyNeighborhoodError,
    UnknownObjectError,
)
from .neighborhood import Dataset, Framework, WeightedNeighborhood

DEFAULT_THETA = 2.0

# Sigma below this fraction of the data scale means the deviations are
# numerically constant and z-scores would be noise.
DEGENERACY_FLOOR = 1e-12


class ModelKind(str, Enum):
    WEIGHTED = "weighted"
    CLASSICAL = "classical"
    ONE_DIMENSIONAL = "one_dimensional"


@dataclass(frozen=True)
class ObjectScore:
    object_id: str
    value: float
    expected: float
    deviation: float
    z: float
    is_outlier: bool


@dataclass(frozen=True)
class SignificanceResult:
    mu: float
    sigma: float
    z: Mapping[str, float]
    flags: Mapping[str, bool]
    degenerate: bool


@dataclass
class OutlierReport:
    """Scored objects for one model run, sorted by z then id."""

    model: ModelKind
    attribute: str
    theta: float
    mu: float
    sigma: float
    degenerate: bool
    scores: tuple[ObjectScore, ...]
    excluded: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        self._by_id = {s.object_id: s for s in self.scores}

    @property
    def outliers(self) -> tuple[ObjectScore, ...]:
        return tuple(s for s in self.scores if s.is_outlier)

    @property
    def outlier_ids(self) -> frozenset:
        return frozenset(s.object_id for s in self.scores if s.is_outlier)

    def score_of(self, object_id: str) -> ObjectScore:
        try:
            return self._by_id[object_id]
        except KeyError:
            raise UnknownObjectError(
                f"object {object_id!r} was not scored by this report"
            ) from None


def expected_uniform(values: Mapping[str, float], neighbor_ids: Iterable[str]) -> float:
    """Neighborhood mean: every neighbor contributes equally."""
    ordered = list(neighbor_ids)
    if not ordered:
        raise EmptyNeighborhoodError("cannot take the mean of an empty neighbor set")
    try:
        return math.fsum(values[nb] for nb in ordered) / len(ordered)
    except KeyError as err:
        raise UnknownObjectError(f"neighbor {err.args[0]!r} has no value") from None


def expected_weighted(values: Mapping[str, float], neighborhood: WeightedNeighborhood) -> float:
    """Weighted sum of neighbor values; weights already sum to 1."""
    if not neighborhood.weights:
        raise EmptyNeighborhoodError(
            f"object {neighborhood.object_id!r} has no neighbors"
        )
    try:
        return math.fsum(w * values[nb] for nb, w in neighborhood.weights.items())
    except KeyError as err:
        raise UnknownObjectError(f"neighbor {err.args[0]!r} has no value") from None


def deviation(value: float, expected: float) -> float:
    """Signed gap between an object's value and its neighborhood expectation."""
    return value - expected


def significance_test(
    diffs: Mapping[str, float],
    theta: float = DEFAULT_THETA,
    scale: Optional[float] = None,
) -> SignificanceResult:
    """Standardize deviations and flag those beyond theta (strictly).

    Population statistics are used: every scored object is the population.
    When sigma vanishes relative to the data scale the distribution is
    degenerate; a warning is emitted and nothing is flagged rather than
    amplifying rounding noise into z-scores.
    """
    if not (isinstance(theta, (int, float)) and math.isfinite(theta) and theta > 0):
        raise ConfigError(f"theta must be a positive finite number, got {theta}")
    if not diffs:
        raise EmptyDatasetError("no deviation values to test")
    n = len(diffs)
    mu = math.fsum(diffs.values()) / n
    sigma = math.sqrt(math.fsum((d - mu) ** 2 for d in diffs.values()) / n)
    if scale is None:
        reference = max(max(abs(d) for d in diffs.values()), abs(mu))
    else:
        reference = abs(scale)
    if sigma <= DEGENERACY_FLOOR * reference or sigma == 0.0:
        warnings.warn(
            DegenerateDistributionWarning(
                f"all {n} deviations are effectively equal "
                f"(sigma={sigma:.3g}); no outliers can be distinguished"
            )
        )
        zeros = {oid: 0.0 for oid in diffs}
        return SignificanceResult(mu, sigma, zeros, {oid: False for oid in diffs}, True)
    z = {oid: (d - mu) / sigma for oid, d in diffs.items()}
    flags = {oid: abs(zv) > theta for oid, zv in z.items()}
    return SignificanceResult(mu, sigma, z, flags, False)


def detect(
    dataset: Dataset,
    attribute: str,
    model: "ModelKind | str",
    framework: Optional[Framework] = None,
    theta: float = DEFAULT_THETA,
) -> OutlierReport:
    """Score every object under one model and flag significant outliers.

    The spatial models skip isolated objects (no neighbors) and list them
    as excluded; the one-dimensional model scores everything.
    """
    try:
        kind = ModelKind(model)
    except ValueError:
        raise ConfigError(
            f"unknown model {model!r}; expected one of "
            + ", ".join(k.value for k in ModelKind)
        ) from None

    values = dataset.attribute_values(attribute)
    scale = max(abs(v) for v in values.values())

    if kind is ModelKind.ONE_DIMENSIONAL:
        global_mean = math.fsum(values.values()) / len(values)
        expected = {oid: global_mean for oid in values}
        excluded: tuple[str, ...] = ()
    else:
        if framework is None:
            raise ConfigError(
                f"model {kind.value!r} requires a neighborhood framework"
            )
        expected = {}
        for oid in dataset.ids:
            nb = framework.neighborhoods.get(oid)
            if nb is None:
                continue
            if kind is ModelKind.WEIGHTED:
                expected[oid] = expected_weighted(values, nb)
            else:
                expected[oid] = expected_uniform(values, nb.neighbor_ids)
        excluded = framework.isolated
        if not expected:
            raise EmptyNeighborhoodError(
                "every object is isolated; nothing can be scored"
            )

    diffs = {oid: deviation(values[oid], expected[oid]) for oid in expected}
    sig = significance_test(diffs, theta, scale)
    scores = [
        ObjectScore(
            object_id=oid,
            value=values[oid],
            expected=expected[oid],
            deviation=diffs[oid],
            z=sig.z[oid],
            is_outlier=sig.flags[oid],
        )
        for oid in expected
    ]
    scores.sort(key=lambda s: (s.z, s.object_id))
    return OutlierReport(
        model=kind,
        attribute=attribute,
        theta=float(theta),
        mu=sig.mu,
        sigma=sig.sigma,
        degenerate=sig.degenerate,
        scores=tuple(scores),
        excluded=tuple(excluded),
    )
