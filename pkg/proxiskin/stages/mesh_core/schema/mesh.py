from typing import Any, Dict, List, Set, Tuple

import numpy as np
from loguru import logger
from pydantic import model_validator

from proxiskin.commons.schemas import BaseSchema, FloatArray, IntArray

# faces smaller than this (m^2) are dropped on construction
DEGENERATE_AREA = 1e-14


def _triangle_cross(vertices: np.ndarray, faces: np.ndarray) -> np.ndarray:
    a = vertices[faces[:, 0]]
    b = vertices[faces[:, 1]]
    c = vertices[faces[:, 2]]
    return np.cross(b - a, c - a)


class SurfaceMesh(BaseSchema):
    """Indexed triangle mesh (meters) with a per-vertex heat-map weight in [0, 1]."""

    vertices: FloatArray
    faces: IntArray
    weights: FloatArray

    @model_validator(mode="before")
    @classmethod
    def drop_degenerate_faces(cls, data: Any) -> Any:
        if not isinstance(data, dict):
            return data
        data = dict(data)
        vertices = np.asarray(data.get("vertices", []), dtype=float).reshape(-1, 3)
        faces = np.asarray(data.get("faces", []), dtype=np.int64).reshape(-1, 3)
        if data.get("weights") is None:
            data["weights"] = np.ones(len(vertices))
        data["vertices"] = vertices
        if len(faces) and faces.min() >= 0 and faces.max() < len(vertices):
            areas = 0.5 * np.linalg.norm(_triangle_cross(vertices, faces), axis=1)
            keep = areas > DEGENERATE_AREA
            if not keep.all():
                logger.warning(f"Dropping {int((~keep).sum())} degenerate faces")
                faces = faces[keep]
        data["faces"] = faces
        return data

    @model_validator(mode="after")
    def check_invariants(self) -> "SurfaceMesh":
        n = len(self.vertices)
        if self.weights.shape != (n,):
            raise ValueError(f"weights length {self.weights.shape} != vertex count {n}")
        if len(self.faces) and (self.faces.min() < 0 or self.faces.max() >= n):
            raise ValueError("face index out of range")
        if n and (self.weights.min() < 0.0 or self.weights.max() > 1.0):
            raise ValueError("weights must lie in [0, 1]")
        return self

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    @property
    def face_count(self) -> int:
        return len(self.faces)

    def face_cross(self) -> np.ndarray:
        """Unnormalized face normals, magnitude = 2 x face area."""
        return _triangle_cross(self.vertices, self.faces)

    def face_areas(self) -> np.ndarray:
        return 0.5 * np.linalg.norm(self.face_cross(), axis=1)

    def face_normals(self) -> np.ndarray:
        cross = self.face_cross()
        return cross / np.linalg.norm(cross, axis=1, keepdims=True)

    def face_centroids(self) -> np.ndarray:
        return self.vertices[self.faces].mean(axis=1)

    def total_area(self) -> float:
        return float(self.face_areas().sum())

    def accumulated_normals(self) -> Tuple[np.ndarray, np.ndarray]:
        """
        Area-weighted sum of incident face normals per vertex.

        Returns:
            (summed vectors, sum of the incident cross-product magnitudes)
        """
        cross = self.face_cross()
        mags = np.linalg.norm(cross, axis=1)
        summed = np.zeros_like(self.vertices)
        total = np.zeros(len(self.vertices))
        for corner in range(3):
            np.add.at(summed, self.faces[:, corner], cross)
            np.add.at(total, self.faces[:, corner], mags)
        return summed, total

    def vertex_normals(self) -> np.ndarray:
        summed, _ = self.accumulated_normals()
        norms = np.linalg.norm(summed, axis=1, keepdims=True)
        return summed / np.where(norms > 0.0, norms, 1.0)

    def bounding_diagonal(self) -> float:
        if not len(self.vertices):
            return 0.0
        return float(np.linalg.norm(self.vertices.max(axis=0) - self.vertices.min(axis=0)))

    def directed_edges(self) -> np.ndarray:
        f = self.faces
        return np.concatenate([f[:, [0, 1]], f[:, [1, 2]], f[:, [2, 0]]])

    def edges(self) -> np.ndarray:
        """Unique undirected edges, (i, j) with i < j, sorted."""
        e = np.sort(self.directed_edges(), axis=1)
        return np.unique(e, axis=0)

    def face_adjacency(self) -> Set[Tuple[int, int]]:
        """Pairs of face indices sharing an edge."""
        owners: Dict[Tuple[int, int], List[int]] = {}
        for fi, face in enumerate(self.faces.tolist()):
            for a, b in ((face[0], face[1]), (face[1], face[2]), (face[2], face[0])):
                owners.setdefault((min(a, b), max(a, b)), []).append(fi)
        pairs = set()
        for faces in owners.values():
            for i in range(len(faces)):
                for j in range(i + 1, len(faces)):
                    pairs.add((min(faces[i], faces[j]), max(faces[i], faces[j])))
        return pairs

    def boundary_edges(self) -> np.ndarray:
        """Edges used by exactly one face, kept in that face's winding direction."""
        directed = self.directed_edges()
        keys = np.sort(directed, axis=1)
        _, inverse, counts = np.unique(keys, axis=0, return_inverse=True, return_counts=True)
        return directed[counts[inverse.reshape(-1)] == 1]

    def boundary_loops(self) -> List[List[int]]:
        """Ordered vertex loops along the mesh rim, each starting at its smallest index."""
        successor: Dict[int, int] = {}
        for a, b in sorted(map(tuple, self.boundary_edges().tolist())):
            successor.setdefault(a, b)
        loops: List[List[int]] = []
        visited: Set[int] = set()
        for start in sorted(successor):
            if start in visited:
                continue
            loop = [start]
            visited.add(start)
            current = successor[start]
            while current != start and current in successor and current not in visited:
                loop.append(current)
                visited.add(current)
                current = successor[current]
            if current == start and len(loop) >= 3:
                loops.append(loop)
        return loops


class DermisShell(BaseSchema):
    """Extruded dermis: inner surface, offset outer surface and rim loops."""

    inner_mesh: SurfaceMesh
    outer_mesh: SurfaceMesh
    normals: FloatArray
    thickness: float
    boundary_loops: List[List[int]]

    @model_validator(mode="after")
    def check_invariants(self) -> "DermisShell":
        if self.thickness <= 0.0:
            raise ValueError("thickness must be positive")
        if self.inner_mesh.vertex_count != self.outer_mesh.vertex_count:
            raise ValueError("inner and outer meshes must share vertex indexing")
        return self

    def shell_mesh(self) -> SurfaceMesh:
        """
        Closed, outward-oriented shell: outer cap, flipped inner cap, stitched side walls.
        """
        n = self.inner_mesh.vertex_count
        faces = self.inner_mesh.faces
        walls = []
        for a, b in self.inner_mesh.boundary_edges().tolist():
            walls.append((a, b, b + n))
            walls.append((a, b + n, a + n))
        all_faces = [faces + n, faces[:, [0, 2, 1]]]
        if walls:
            all_faces.append(np.asarray(walls, dtype=np.int64))
        return SurfaceMesh(
            vertices=np.vstack([self.inner_mesh.vertices, self.outer_mesh.vertices]),
            faces=np.vstack(all_faces),
            weights=np.concatenate([self.inner_mesh.weights, self.outer_mesh.weights]),
        )

    def volume(self) -> float:
        """Enclosed volume by the divergence theorem over the closed shell."""
        shell = self.shell_mesh()
        tri = shell.vertices[shell.faces]
        signed = np.einsum("ij,ij->i", tri[:, 0], np.cross(tri[:, 1], tri[:, 2])).sum() / 6.0
        return float(abs(signed))

    def rim_points(self, loop_index: int = 0) -> np.ndarray:
        """Outer-surface positions of a boundary loop."""
        return self.outer_mesh.vertices[self.boundary_loops[loop_index]]

    def longest_loop_index(self) -> int:
        lengths = []
        for loop in self.boundary_loops:
            pts = self.outer_mesh.vertices[loop + loop[:1]]
            lengths.append(np.linalg.norm(np.diff(pts, axis=0), axis=1).sum())
        return int(np.argmax(lengths))
