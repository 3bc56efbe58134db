"""Spatial outlier detection over weighted neighborhoods.

Objects (points or polygons) carry numeric attributes. Each object gets a
neighborhood of weighted peers, discovered by network connections, by a
distance buffer, by shared polygon boundaries, or by a blend of those
factors. An object's attribute is compared against the weighted expectation
of its neighborhood, and the deviations are tested for significance across
the whole dataset. A classical uniform-weight model and a plain
one-dimensional z-score model are available for comparison.
"""

from .datagen import GeneratedData, GenSpec, generate
from .errors import (
    ConfigError,
    DataError,
    DegenerateDistributionWarning,
    DegenerateStatisticsError,
    SpatialOutliersError,
)
from .evaluation import ComparisonReport, ComparisonRow, compare
from .fileio import (
    load_config,
    load_dataset,
    load_network,
    write_comparison,
    write_dataset,
    write_network,
    write_report,
    write_scatter,
)
from .geometry import Point, Polygon
from .neighborhood import (
    ConnectionNetwork,
    Dataset,
    Framework,
    SpatialObject,
    WeightConfig,
    WeightedNeighborhood,
    build_framework,
)
from .outliers import (
    DEFAULT_THETA,
    ModelKind,
    ObjectScore,
    OutlierReport,
    detect,
)
from .pipeline import RunConfig, RunResult, analyze, run, run_generate

__version__ = "0.1.0"

__all__ = [
    "ComparisonReport",
    "ComparisonRow",
    "ConfigError",
    "ConnectionNetwork",
    "DEFAULT_THETA",
    "DataError",
    "Dataset",
    "DegenerateDistributionWarning",
    "DegenerateStatisticsError",
    "Framework",
    "GenSpec",
    "GeneratedData",
    "ModelKind",
    "ObjectScore",
    "OutlierReport",
    "Point",
    "Polygon",
    "RunConfig",
    "RunResult",
    "SpatialObject",
    "SpatialOutliersError",
    "WeightConfig",
    "WeightedNeighborhood",
    "analyze",
    "build_framework",
    "compare",
    "detect",
    "generate",
    "load_config",
    "load_dataset",
    "load_network",
    "run",
    "run_generate",
    "write_comparison",
    "write_dataset",
    "write_network",
    "write_report",
    "write_scatter",
    "__version__",
]
