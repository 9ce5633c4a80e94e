"""Error types raised by the planner"""


class PlannerError(Exception):
    """Base class for planner failures"""


class InvalidArgumentError(PlannerError, ValueError):
    """An argument is outside its domain (negative, non-finite, out of range)"""


class InfeasibleInstanceError(PlannerError):
    """Some segment cannot be inspected by any single tour within the budget"""

    def __init__(self, message: str, segment_ids=()):
        super().__init__(message)
        self.segment_ids = tuple(segment_ids)


class OracleLimitError(PlannerError):
    """The exact solver refuses an instance beyond its configured limits"""

    def __init__(self, limit: str, value: int, maximum: int):
        super().__init__(f"oracle limit '{limit}' exceeded: {value} > {maximum}")
        self.limit = limit
        self.value = value
        self.maximum = maximum


class EmptySelectionError(PlannerError):
    """Instance sampling selected no segment"""
