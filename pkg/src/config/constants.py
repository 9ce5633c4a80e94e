"""Constants for the inspection planning toolkit"""
from enum import Enum, IntEnum


class Direction(str, Enum):
    """Traversal direction of a segment, from endpoint A to B or back"""
    AB = "AB"
    BA = "BA"

    @property
    def offset(self) -> int:
        """Vertex offset within the segment's pair of vertices"""
        return 0 if self is Direction.AB else 1

    def flipped(self) -> "Direction":
        return Direction.BA if self is Direction.AB else Direction.AB


class MoveKind(IntEnum):
    """Tabu search neighborhood moves, numbered as on the roulette wheel"""
    RANDOM_SHIFT = 1
    BEST_SHIFT = 2
    BEST_SWAP = 3
    BEST_DIRECTION_SWITCH = 4


class ViolationKind(str, Enum):
    """Kinds of feasibility violations reported for a solution"""
    MISSING = "missing"
    DUPLICATED = "duplicated"
    UNKNOWN_SEGMENT = "unknown_segment"
    OVER_BUDGET = "over_budget"


class ConstraintTag(str, Enum):
    """ILP constraint groups"""
    START = "start"
    END = "end"
    SET_IN = "set_in"
    SET_OUT = "set_out"
    FLOW = "flow"
    BUDGET = "budget"
    MTZ = "mtz"


class RowSense(str, Enum):
    """Comparison operator of a linear row"""
    LE = "<="
    EQ = "="
    GE = ">="


class Topology(str, Enum):
    """Synthetic instance layouts"""
    LINE = "line"
    STAR = "star"


# Vertex indices of the depots in the direction-expanded graph
START_DEPOT = 0
END_DEPOT = 1

# Kinematic defaults (m/s, m/s, m/s^2)
DEFAULT_V_MAX = 5.0
DEFAULT_V_INSP = 1.0
DEFAULT_A_MAX = 2.5

# Soft budget penalty multiplier
DEFAULT_K_C = 1000.0

# GRASP defaults
DEFAULT_RCL_FRACTION = 0.25
DEFAULT_W0 = 5.0
DEFAULT_P1 = 1.0
DEFAULT_P2 = 5.0
DEFAULT_RESET_PERIOD = 5
DEFAULT_STOP_AFTER = 50
DEFAULT_TRIALS = 30
TABU_SIZE_DIVISOR = 4

# Oracle limits
DEFAULT_ORACLE_MAX_SEGMENTS = 8
DEFAULT_ORACLE_MAX_TOURS = 3
DEFAULT_ORACLE_NODE_BUDGET = 50_000_000

# Absolute tolerance for cost comparisons (s)
COST_TOLERANCE = 1e-9

# Absolute tolerance when checking ILP rows and objective agreement
ROW_TOLERANCE = 1e-6

# Significant digits for numbers in LP documents
LP_SIGNIFICANT_DIGITS = 9

# Synthetic generation defaults
DEFAULT_SPAN_RANGE = (150.0, 350.0)
DEFAULT_TARGET_TOURS = 2
