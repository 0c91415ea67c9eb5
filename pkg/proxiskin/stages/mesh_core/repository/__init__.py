from proxiskin.stages.mesh_core.repository.mesh import MeshRepository

__all__ = ["MeshRepository"]
