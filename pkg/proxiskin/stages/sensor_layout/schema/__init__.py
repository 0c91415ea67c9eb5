from proxiskin.stages.sensor_layout.schema.electrode import Electrode, SensorPoints

__all__ = ["Electrode", "SensorPoints"]
