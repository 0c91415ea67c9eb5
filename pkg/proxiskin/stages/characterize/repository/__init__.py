from proxiskin.stages.characterize.repository.report import CharacterizationRepository

__all__ = ["CharacterizationRepository"]
