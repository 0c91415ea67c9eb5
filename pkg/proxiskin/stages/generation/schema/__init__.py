from proxiskin.stages.generation.schema.skin import GenerationReport, SensorSummary, SkinUnit

__all__ = ["GenerationReport", "SensorSummary", "SkinUnit"]
