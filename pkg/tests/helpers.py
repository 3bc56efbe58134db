"""Small constructors shared across test modules."""

from spatialoutliers.geometry import Point, Polygon
from spatialoutliers.neighborhood import ConnectionNetwork, Dataset, SpatialObject


def pt(oid, x, y, **attrs):
    return SpatialObject(oid, Point(x, y), attrs)


def square(oid, x0, y0, x1, y1, **attrs):
    return SpatialObject(
        oid, Polygon.from_coords([(x0, y0), (x1, y0), (x1, y1), (x0, y1)]), attrs
    )


def values_dataset(values, attribute="value"):
    """Points spread on the x axis carrying the given attribute values."""
    return Dataset(
        pt(oid, float(i), 0.0, **{attribute: v})
        for i, (oid, v) in enumerate(values.items())
    )


def chain_network(ids, cost=1.0):
    """Connect consecutive ids with single unit-cost edges."""
    return ConnectionNetwork(
        [(a, b, cost) for a, b in zip(ids[:-1], ids[1:])]
    )
