"""Explicit C^r piecewise-polynomial bases on planar triangulations."""
from .continuity import (
    BasisColumn,
    ConstraintMatrix,
    SplineBasis,
    build_change_of_basis,
    check_continuity,
    constraint_matrix,
    enforce_continuity,
    initial_basis,
    merge_columns,
    split_columns,
)
from .errors import (
    ContinuityError,
    DegenerateTriangle,
    DimensionMismatch,
    DuplicateTriangle,
    FormatError,
    OverlappingTriangles,
    PointOutsideMesh,
    TransversalOnEdge,
    TrisplineError,
)
from .fitting import Dataset, DesignMatrix, FitModel, assemble_design, fit, predict
from .geometry import Point2, SharedEdge, Triangulation, point
from .polynomial import BaryPoly, CartesianPoly, EdgePoly

__version__ = "0.1.0"
