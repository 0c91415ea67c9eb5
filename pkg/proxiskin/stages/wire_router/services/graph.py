from typing import List, Optional

import networkx as nx
import numpy as np
from loguru import logger
from scipy.spatial import cKDTree

from proxiskin.commons.errors import InvalidParameter, LayersExceedThickness
from proxiskin.commons.geometry import resample_by_arc_length
from proxiskin.stages.mesh_core.schema import DermisShell
from proxiskin.stages.wire_router.schema import Port, RoutingGraph


def build_routing_graph(
    dermis: DermisShell,
    route_weights: Optional[np.ndarray] = None,
    num_layers: int = 2,
    layer_gap: float = 0.0015,
    connect_radius: float = 0.0075,
) -> RoutingGraph:
    """
    Stack ``num_layers`` copies of the routable vertices inside the dermis and
    connect every pair of nodes closer than ``connect_radius``.

    Layer ``l`` sits ``(l + 1) * layer_gap`` above the inner surface. Vertices
    with a route weight of 0 get no nodes.

    Raises:
        InvalidParameter: num_layers < 1, non-positive gap or radius
        LayersExceedThickness: the top layer would reach the outer surface
    """
    if num_layers < 1 or layer_gap <= 0.0 or connect_radius <= 0.0:
        raise InvalidParameter("need num_layers >= 1, layer_gap > 0 and connect_radius > 0")
    if num_layers * layer_gap >= dermis.thickness:
        raise LayersExceedThickness(
            f"{num_layers} layers x {layer_gap} m do not fit in {dermis.thickness} m"
        )

    inner = dermis.inner_mesh
    if route_weights is None:
        route_weights = inner.weights
    routable = np.flatnonzero(np.asarray(route_weights, dtype=float) > 0.0)

    base = inner.vertices[routable]
    lift = dermis.normals[routable]
    positions = np.vstack([base + (l + 1) * layer_gap * lift for l in range(num_layers)])
    layers = np.repeat(np.arange(num_layers), len(routable))
    origins = np.tile(routable, num_layers)

    graph = nx.Graph()
    graph.add_nodes_from(range(len(positions)))
    if len(positions) > 1:
        pairs = cKDTree(positions).query_pairs(connect_radius, output_type="ndarray")
        pairs = pairs[np.lexsort((pairs[:, 1], pairs[:, 0]))]
        lengths = np.linalg.norm(positions[pairs[:, 0]] - positions[pairs[:, 1]], axis=1)
        graph.add_weighted_edges_from(
            ((int(a), int(b), float(w)) for (a, b), w in zip(pairs, lengths)),
            weight="length",
        )

    logger.debug(
        f"Routing graph: {graph.number_of_nodes()} nodes, {graph.number_of_edges()} edges "
        f"over {num_layers} layers"
    )
    return RoutingGraph(positions, layers, origins, graph)


def place_ports(boundary: np.ndarray, count: int, graph: RoutingGraph) -> List[Port]:
    """
    Spread ``count`` ports at equal arc length along a smoothed rim, starting
    at arc length 0, each bound to its nearest routing node.
    """
    if count < 1:
        raise InvalidParameter(f"port count must be >= 1, got {count}")
    positions = resample_by_arc_length(boundary, count)

    ports = []
    for i, position in enumerate(positions):
        node = graph.nearest_node(position)
        graph.bind(f"port:{i}", node)
        ports.append(Port(id=i, position=position, node=node))

    nodes = [p.node for p in ports]
    if len(set(nodes)) < len(nodes):
        logger.warning(f"{len(nodes) - len(set(nodes))} ports share a nearest routing node")
    return ports
