"""Model comparison: per-object prediction errors and their reductions.

A comparison always runs baseline versus candidate. Positive squared-error
reduction and positive improvement percentage both mean the candidate
predicted the object better than the baseline did.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .errors import BaselineZeroError, MismatchedDatasetsError
from .outliers import OutlierReport


def error_of(expected: float, actual: float) -> float:
    """Absolute gap between prediction and observation."""
    return abs(expected - actual)


def squared_reduction(error_baseline: float, error_candidate: float) -> float:
    """How much squared error the candidate removes; negative means worse."""
    return error_baseline**2 - error_candidate**2


def improvement_pct(error_baseline: float, error_candidate: float) -> float:
    """Squared-error reduction as a fraction of the baseline's squared error."""
    if error_baseline == 0.0:
        raise BaselineZeroError(
            "improvement is undefined when the baseline error is zero"
        )
    return squared_reduction(error_baseline, error_candidate) / error_baseline**2


@dataclass(frozen=True)
class ComparisonRow:
    object_id: str
    value: float
    expected_baseline: float
    expected_candidate: float
    error_baseline: float
    error_candidate: float
    squared_reduction: float
    improvement_pct: Optional[float]  # None where the baseline error is zero


@dataclass
class ComparisonReport:
    """Row-by-row and aggregate comparison of two scored models."""

    baseline_model: str
    candidate_model: str
    attribute: str
    rows: tuple[ComparisonRow, ...]
    mean_squared_reduction: float
    mean_improvement_pct: Optional[float]
    zero_baseline_ids: tuple[str, ...]
    flagged_both: tuple[str, ...]
    flagged_baseline_only: tuple[str, ...]
    flagged_candidate_only: tuple[str, ...]

    def __len__(self) -> int:
        return len(self.rows)


def compare(baseline: OutlierReport, candidate: OutlierReport) -> ComparisonReport:
    """Compare two reports over the objects both of them scored.

    Objects scored by only one report (for example isolated under one
    strategy but not the other) are left out of the rows. Objects the
    baseline predicted perfectly cannot show a percentage improvement;
    they are tracked separately and skipped in the percentage mean.
    """
    if baseline.attribute != candidate.attribute:
        raise MismatchedDatasetsError(
            f"reports score different attributes: "
            f"{baseline.attribute!r} vs {candidate.attribute!r}"
        )
    ids_a = {s.object_id for s in baseline.scores}
    ids_b = {s.object_id for s in candidate.scores}
    common = sorted(ids_a & ids_b)
    if not common:
        raise MismatchedDatasetsError("the reports share no scored objects")

    rows: list[ComparisonRow] = []
    zero_ids: list[str] = []
    for oid in common:
        sa = baseline.score_of(oid)
        sb = candidate.score_of(oid)
        if sa.value != sb.value:
            raise MismatchedDatasetsError(
                f"object {oid!r} has different observed values in the two reports"
            )
        ea = error_of(sa.expected, sa.value)
        eb = error_of(sb.expected, sb.value)
        if ea == 0.0:
            pct: Optional[float] = None
            zero_ids.append(oid)
        else:
            pct = improvement_pct(ea, eb)
        rows.append(
            ComparisonRow(
                object_id=oid,
                value=sa.value,
                expected_baseline=sa.expected,
                expected_candidate=sb.expected,
                error_baseline=ea,
                error_candidate=eb,
                squared_reduction=squared_reduction(ea, eb),
                improvement_pct=pct,
            )
        )

    mean_red = math.fsum(r.squared_reduction for r in rows) / len(rows)
    defined = [r.improvement_pct for r in rows if r.improvement_pct is not None]
    mean_pct = math.fsum(defined) / len(defined) if defined else None

    flags_a = baseline.outlier_ids & set(common)
    flags_b = candidate.outlier_ids & set(common)
    return ComparisonReport(
        baseline_model=baseline.model.value,
        candidate_model=candidate.model.value,
        attribute=baseline.attribute,
        rows=tuple(rows),
        mean_squared_reduction=mean_red,
        mean_improvement_pct=mean_pct,
        zero_baseline_ids=tuple(zero_ids),
        flagged_both=tuple(sorted(flags_a & flags_b)),
        flagged_baseline_only=tuple(sorted(flags_a - flags_b)),
        flagged_candidate_only=tuple(sorted(flags_b - flags_a)),
    )
