"""Solution quality metrics"""
from src.exceptions import InvalidArgumentError


def pdb(cost: float, ref_cost: float) -> float:
    """Percentage deviation of a (best) cost from a reference cost."""
    if not ref_cost > 0:
        raise InvalidArgumentError(f"reference cost must be positive, got {ref_cost}")
    return (cost - ref_cost) / ref_cost * 100.0


def pdm(mean_cost: float, ref_cost: float) -> float:
    """Percentage deviation of a mean cost from a reference cost."""
    return pdb(mean_cost, ref_cost)
