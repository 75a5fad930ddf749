"""Exception hierarchy shared by every module."""


class ConveyorError(Exception):
    """Base class for all errors raised by this package."""

    code = "ERROR"


class GeometryError(ConveyorError):
    code = "GEOMETRY"


class OverlappingDisks(GeometryError):
    code = "OVERLAPPING_DISKS"


class Containment(GeometryError):
    code = "CONTAINMENT"


class CollinearCenters(GeometryError):
    code = "COLLINEAR_CENTERS"


class AmbiguousDegenerate(GeometryError):
    code = "AMBIGUOUS_DEGENERATE"


class DegenerateInput(GeometryError):
    code = "DEGENERATE_INPUT"


class NotUnitRadii(GeometryError):
    code = "NOT_UNIT_RADII"


class NotSeparated(ConveyorError):
    code = "NOT_SEPARATED"


class BudgetExceeded(ConveyorError):
    code = "BUDGET_EXCEEDED"


class NumericFailure(ConveyorError):
    """Iterative numeric procedure gave up (maps to CLI exit code 3)."""

    code = "NUMERIC_FAILURE"


class NoConvergence(NumericFailure):
    code = "NO_CONVERGENCE"


class NoValidDelta(NumericFailure):
    code = "NO_VALID_DELTA"


class PlacementFailed(NumericFailure):
    code = "PLACEMENT_FAILED"


class GraphError(ConveyorError):
    code = "GRAPH"


class NotCubic(GraphError):
    code = "NOT_CUBIC"


class NotThreeConnected(GraphError):
    code = "NOT_THREE_CONNECTED"


class NotHamiltonian(GraphError):
    code = "NOT_HAMILTONIAN"


class OddCycleLength(GraphError):
    code = "ODD_CYCLE_LENGTH"
