"""Request and response bodies for the HTTP service.

Response documents mirror the JSON files the command line writes, so a
report fetched over HTTP and a report read from disk have the same shape.
"""

from __future__ import annotations

from typing import Optional

from pydantic import BaseModel

from ..outliers import DEFAULT_THETA


class Edge(BaseModel):
    from_id: str
    to_id: str
    cost: float


class AnalysisRequest(BaseModel):
    """One detection run over an inline dataset."""

    dataset: dict
    attribute: str
    network: Optional[list[Edge]] = None
    models: list[str] = ["weighted"]
    strategy: str = "distance"
    alpha: float = 1.0
    beta: float = 0.0
    delta: float = 0.0
    radius: Optional[float] = None
    cost_limit: Optional[float] = None
    polygon_mode: bool = False
    theta: float = DEFAULT_THETA


class ScoreOut(BaseModel):
    id: str
    value: float
    expected: float
    deviation: float
    z: float
    is_outlier: bool


class ReportOut(BaseModel):
    model: str
    attribute: str
    theta: float
    mu: float
    sigma: float
    degenerate: bool
    n_scored: int
    outliers: list[str]
    excluded: list[str]
    scores: list[ScoreOut]


class ComparisonRowOut(BaseModel):
    id: str
    value: float
    expected_baseline: float
    expected_candidate: float
    error_baseline: float
    error_candidate: float
    squared_reduction: float
    improvement_pct: Optional[float]


class ComparisonOut(BaseModel):
    baseline_model: str
    candidate_model: str
    attribute: str
    n_rows: int
    mean_squared_reduction: float
    mean_improvement_pct: Optional[float]
    zero_baseline_ids: list[str]
    flagged_both: list[str]
    flagged_baseline_only: list[str]
    flagged_candidate_only: list[str]
    rows: list[ComparisonRowOut]


class AnalysisResponse(BaseModel):
    reports: list[ReportOut]
    comparisons: list[ComparisonOut]
    warnings: list[str]


class Plant(BaseModel):
    index: int
    sigmas: float


class GenerateRequest(BaseModel):
    kind: str = "grid"
    rows: int = 5
    cols: int = 5
    n_points: int = 25
    extent: float = 10.0
    cell_size: float = 1.0
    smoothing: int = 0
    planted: list[Plant] = []
    seed: int = 0
    attribute: str = "value"


class GenerateResponse(BaseModel):
    dataset: dict
    network: list[Edge]
    planted_ids: list[str]
