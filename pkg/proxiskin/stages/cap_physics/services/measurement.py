"""RC counter model: counts <-> capacitance, and counts -> object distance."""

import numpy as np

from proxiskin.commons.errors import BelowBaseline, InvalidParameter
from proxiskin.stages.cap_physics.schema import CircuitParams, CouplingParams


def counts_from_capacitance(C, circuit: CircuitParams):
    """
    Counter value reached while charging ``C`` to the threshold, ``round(C * beta)``.

    Accepts scalars or arrays; scalars come back as ``int``.
    """
    C = np.asarray(C, dtype=float)
    if np.any(C < 0.0):
        raise InvalidParameter("capacitance must be non-negative")
    m = np.rint(C * circuit.beta).astype(np.int64)
    return int(m) if m.ndim == 0 else m


def capacitance_from_counts(m, circuit: CircuitParams):
    """Capacitance (F) for a counter value, ``m / beta``."""
    m = np.asarray(m, dtype=float)
    if np.any(m < 0.0):
        raise InvalidParameter("counts must be non-negative")
    C = m / circuit.beta
    return float(C) if C.ndim == 0 else C


def estimate_distance(
    m: float, circuit: CircuitParams, cp: CouplingParams, baseline_m: float
) -> float:
    """
    Invert the distance law for a reading above baseline.

    Raises:
        BelowBaseline: m <= baseline_m
    """
    if m <= baseline_m:
        raise BelowBaseline(f"Reading {m} does not exceed baseline {baseline_m}")
    signal = (m - baseline_m) / circuit.beta
    return float((cp.k / signal) ** (1.0 / cp.w))
