from proxiskin.stages.generation.repository.skin import SkinRepository, tubes_to_trimesh

__all__ = ["SkinRepository", "tubes_to_trimesh"]
