from proxiskin.stages.mesh_core.services.boundary import smooth_boundary
from proxiskin.stages.mesh_core.services.dermis import mold_dermis
from proxiskin.stages.mesh_core.services.primitives import flat_patch
from proxiskin.stages.mesh_core.services.region import extract_weighted_region

__all__ = [
    "extract_weighted_region",
    "flat_patch",
    "mold_dermis",
    "smooth_boundary",
]
