"""Exception hierarchy shared by the library and the CLI.

Each class carries the process exit code the CLI reports for it:
1 for invalid input, 2 for an exceeded enumeration budget, 3 for a failed
verification or an internal consistency failure.
"""

from __future__ import annotations


class StaircaseError(Exception):
    """Base class for every error raised on purpose by this project."""

    exit_code: int = 1


class InputValidationError(StaircaseError, ValueError):
    """Input data or parameters violate a documented precondition."""


class GraphValidationError(InputValidationError):
    """A graph violates one of the `Graph` invariants."""


class DisconnectedGraphError(GraphValidationError):
    pass


class SelfLoopError(GraphValidationError):
    pass


class DuplicateEdgeError(GraphValidationError):
    pass


class LabelOutOfRangeError(GraphValidationError):
    pass


class InfeasibleParametersError(InputValidationError):
    """Graph-family parameters admit no graph (or none was found in budget)."""


class PathSystemValidationError(InputValidationError):
    pass


class MilestoneValidationError(InputValidationError):
    pass


class InexactArithmeticError(InputValidationError):
    """Exact mode was requested for a vertex count that is not a perfect square."""


class EmptyRelationError(InputValidationError):
    """No pair of functions has r > 0, so the adversary minimum is undefined."""


class EmptyEstimateError(InputValidationError):
    pass


class BudgetExceededError(StaircaseError, RuntimeError):
    exit_code = 2


class VerificationFailedError(StaircaseError, RuntimeError):
    exit_code = 3


class SolverConsistencyError(StaircaseError, RuntimeError):
    """A solver returned an answer that is not a local minimum."""

    exit_code = 3
