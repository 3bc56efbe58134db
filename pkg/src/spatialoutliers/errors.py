"""Exception taxonomy shared across the package.

Two families matter to callers: ConfigError (bad parameters, exit code 2 in
the CLI) and DataError (bad or inconsistent input data, exit code 3).
"""


class SpatialOutliersError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(SpatialOutliersError):
    """Invalid run parameters (strategy, coefficients, formats, ...)."""


class CoefficientSumError(ConfigError):
    """Factor coefficients must each lie in [0, 1] and sum to 1."""


class InvalidRadiusError(ConfigError):
    """Buffer radius must be strictly positive."""


class InvalidSpecError(ConfigError):
    """Synthetic-data generation spec is inconsistent."""


class DataError(SpatialOutliersError):
    """Input data violates a contract (geometry, ids, attributes, files)."""


class ParseError(DataError):
    """A file could not be parsed; message carries file/line context."""


class DuplicateIdError(DataError):
    """Two objects in one dataset share an id."""


class InvalidGeometryError(DataError):
    """A geometry violates polygon/point invariants."""


class DegenerateGeometryError(InvalidGeometryError):
    """Polygon area is zero within tolerance."""


class ReferentialError(DataError):
    """A network edge references an id that is not in the dataset."""


class UnknownObjectError(DataError):
    """An object id is not present in the dataset or network."""


class NotPolygonalError(DataError):
    """An operation requiring polygons met a point geometry."""


class MissingAttributeError(DataError):
    """An object lacks the attribute selected for analysis."""


class EmptyDatasetError(DataError):
    """The dataset holds no objects."""


class EmptyNeighborhoodError(DataError):
    """An aggregate was requested over an empty neighbor set."""


class ZeroDistanceError(DataError):
    """Coincident centers make an inverse-distance weight undefined."""


class ZeroCostError(DataError):
    """A zero path cost makes an inverse-cost weight undefined."""


class NoConnectionsError(DataError):
    """All direct-connection counts are zero; weights undefined."""


class MissingFactorDataError(DataError):
    """A weight factor has a nonzero coefficient but no usable data."""


class WeightsNotNormalizedError(DataError):
    """A supplied weight vector does not sum to 1."""


class BaselineZeroError(DataError):
    """Improvement percentage is undefined for a zero baseline error."""


class MismatchedDatasetsError(DataError):
    """Two reports being compared do not cover comparable objects."""


class TooLargeError(DataError):
    """Input exceeds the size limit of a brute-force oracle."""


class DegenerateDistributionWarning(UserWarning):
    """All difference values are equal; no outliers can be distinguished."""


class DegenerateStatisticsError(SpatialOutliersError):
    """A degenerate distribution occurred while warnings are treated as errors."""
