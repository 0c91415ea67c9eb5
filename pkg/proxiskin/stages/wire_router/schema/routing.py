from typing import Dict, List, Optional

import networkx as nx
import numpy as np
from pydantic import Field, model_validator
from scipy.spatial import cKDTree

from proxiskin.commons.geometry import polyline_length
from proxiskin.commons.schemas import BaseSchema, FloatArray


class RoutingGraph:
    """
    Layered wire-routing graph inside the dermis.

    Node ``l * V + k`` is the copy of weighted vertex ``k`` on layer ``l``.
    Positions are fixed at construction; routing removes nodes and edges from
    ``graph``.
    """

    def __init__(
        self,
        positions: np.ndarray,
        layers: np.ndarray,
        origins: np.ndarray,
        graph: nx.Graph,
        terminals: Optional[Dict[str, int]] = None,
    ):
        self.positions = np.asarray(positions, dtype=float)
        self.layers = np.asarray(layers, dtype=np.int64)
        self.origins = np.asarray(origins, dtype=np.int64)
        self.graph = graph
        self.terminals: Dict[str, int] = dict(terminals or {})
        self._tree = cKDTree(self.positions) if len(self.positions) else None

    @property
    def node_count(self) -> int:
        return self.graph.number_of_nodes()

    @property
    def edge_count(self) -> int:
        return self.graph.number_of_edges()

    def copy(self) -> "RoutingGraph":
        return RoutingGraph(
            self.positions, self.layers, self.origins, self.graph.copy(), self.terminals
        )

    def nearest_node(self, point: np.ndarray) -> int:
        """Closest node by position, among all nodes created at construction."""
        if self._tree is None:
            raise ValueError("routing graph has no nodes")
        _, index = self._tree.query(np.asarray(point, dtype=float))
        return int(index)

    def edge_array(self) -> np.ndarray:
        """(E, 2) current edges, each as (low, high), sorted."""
        if not self.graph.number_of_edges():
            return np.empty((0, 2), dtype=np.int64)
        edges = np.sort(np.asarray(list(self.graph.edges()), dtype=np.int64), axis=1)
        return edges[np.lexsort((edges[:, 1], edges[:, 0]))]

    def bind(self, key: str, node: int) -> None:
        self.terminals[key] = int(node)


class Port(BaseSchema):
    """Wire exit on the smoothed rim."""

    id: int = Field(ge=0)
    position: FloatArray
    node: int = Field(ge=0)


class WirePath(BaseSchema):
    """One routed wire from a port node to an electrode node."""

    port_id: int
    electrode_id: int
    node_sequence: List[int]
    points: FloatArray
    length: float = Field(ge=0.0)
    profile_radius: float = Field(gt=0.0)

    @model_validator(mode="after")
    def check_consistency(self) -> "WirePath":
        if self.points.reshape(-1, 3).shape[0] != len(self.node_sequence):
            raise ValueError("one point per node is required")
        if abs(polyline_length(self.points.reshape(-1, 3)) - self.length) > 1e-9:
            raise ValueError("length must equal the summed edge lengths")
        return self

    @classmethod
    def from_nodes(
        cls,
        graph: RoutingGraph,
        nodes: List[int],
        port_id: int,
        electrode_id: int,
        profile_radius: float,
    ) -> "WirePath":
        points = graph.positions[nodes].reshape(-1, 3)
        return cls(
            port_id=port_id,
            electrode_id=electrode_id,
            node_sequence=[int(n) for n in nodes],
            points=points,
            length=polyline_length(points),
            profile_radius=profile_radius,
        )


class TubedWire(BaseSchema):
    """Smoothed wire centerline with its circular profile."""

    electrode_id: int
    port_id: int
    centerline: FloatArray
    radius: float = Field(gt=0.0)
    length: float = Field(ge=0.0)
