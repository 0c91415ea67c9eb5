from proxiskin.stages.pss_map.repository.model import EnsembleRepository, MapRepository

__all__ = ["EnsembleRepository", "MapRepository"]
