from proxiskin.stages.generation.services.generator import generate_skin_unit, summarize

__all__ = ["generate_skin_unit", "summarize"]
