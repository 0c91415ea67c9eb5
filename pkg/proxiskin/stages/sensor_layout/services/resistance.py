from proxiskin.commons.errors import InvalidParameter
from proxiskin.stages.sensor_layout.schema import Electrode


def wire_resistance(
    electrode: Electrode,
    wire_length: float,
    resistance_per_meter: float = 40000.0,
    base_resistor: float = 1.0e6,
) -> float:
    """Series resistance seen by ``electrode``: trace plus base resistor (ohm)."""
    if min(wire_length, resistance_per_meter, base_resistor) < 0.0:
        raise InvalidParameter(
            f"Resistance inputs must be non-negative (electrode {electrode.id})"
        )
    return wire_length * resistance_per_meter + base_resistor
