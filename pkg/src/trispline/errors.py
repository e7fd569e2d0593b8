"""Exception hierarchy for trispline."""


class TrisplineError(Exception):
    """Base class for all library errors."""


class DegenerateTriangle(TrisplineError):
    pass


class DuplicateTriangle(TrisplineError):
    pass


class OverlappingTriangles(TrisplineError):
    pass


class PointOutsideMesh(TrisplineError):
    def __init__(self, point, record=None):
        self.point = point
        self.record = record
        where = f" (record {record})" if record is not None else ""
        super().__init__(f"point ({point[0]}, {point[1]}){where} lies outside the mesh")


class TransversalOnEdge(TrisplineError):
    pass


class DimensionMismatch(TrisplineError):
    pass


class ContinuityError(TrisplineError):
    """Raised when a constructed basis fails its post-construction check."""


class FormatError(TrisplineError):
    """Malformed mesh, basis, model or data file."""
