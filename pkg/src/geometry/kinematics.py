"""Rest-to-rest trapezoidal velocity profile timing"""
import math

import numpy as np

from src.exceptions import InvalidArgumentError
from src.utils.validators import require_non_negative, require_positive


def travel_time(distance: float, cruise: float, accel: float) -> float:
    """
    Time to cover a straight leg starting and ending at rest.

    The vehicle accelerates at ``accel`` up to ``cruise``, holds it, then
    brakes at ``accel``. Legs shorter than ``cruise**2 / accel`` never reach
    cruise speed and follow the triangular profile.

    Args:
        distance: Leg length in meters
        cruise: Speed limit in m/s
        accel: Acceleration limit in m/s^2

    Returns:
        Duration in seconds

    Raises:
        InvalidArgumentError: On negative or non-finite inputs
    """
    distance = require_non_negative("distance", distance)
    cruise = require_positive("cruise", cruise)
    accel = require_positive("accel", accel)

    if distance >= cruise * cruise / accel:
        return distance / cruise + cruise / accel
    return 2.0 * math.sqrt(distance / accel)


def travel_times(distances: np.ndarray, cruise: float, accel: float) -> np.ndarray:
    """Vectorized travel_time over an array of distances."""
    cruise = require_positive("cruise", cruise)
    accel = require_positive("accel", accel)

    distances = np.asarray(distances, dtype=float)
    if not np.all(np.isfinite(distances)) or np.any(distances < 0):
        raise InvalidArgumentError("distances must be finite and non-negative")

    boundary = cruise * cruise / accel
    cruising = distances / cruise + cruise / accel
    triangular = 2.0 * np.sqrt(distances / accel)
    return np.where(distances >= boundary, cruising, triangular)
