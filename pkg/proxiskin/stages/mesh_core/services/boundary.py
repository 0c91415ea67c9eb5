import numpy as np

from proxiskin.commons.errors import InvalidParameter, TooFewPoints
from proxiskin.commons.geometry import catmull_rom_closed


def smooth_boundary(loop: np.ndarray, samples_per_segment: int = 8) -> np.ndarray:
    """
    Closed uniform Catmull-Rom curve through an ordered rim loop.

    Returns:
        (len(loop) * samples_per_segment + 1, 3) polyline; the first sample is
        repeated at the end and every input point is hit exactly.
    """
    loop = np.asarray(loop, dtype=float)
    if len(loop) < 4:
        raise TooFewPoints(f"Boundary loop needs at least 4 points, got {len(loop)}")
    if samples_per_segment < 1:
        raise InvalidParameter("samples_per_segment must be >= 1")
    return catmull_rom_closed(loop, samples_per_segment)
