from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np
from loguru import logger
from scipy.spatial import cKDTree

from proxiskin.commons.errors import InvalidParameter, Unroutable
from proxiskin.commons.geometry import (
    catmull_rom_open,
    point_segment_distances,
    polyline_length,
)
from proxiskin.stages.sensor_layout.schema import Electrode
from proxiskin.stages.wire_router.schema import Port, RoutingGraph, TubedWire, WirePath


def heuristic_score(path: WirePath, existing: Sequence[WirePath], a_mix: float) -> float:
    """
    Candidate wire score, lower is better.

    ``a_mix * length + (1 - a_mix) * K`` where K is the mean distance from the
    path's nodes to the nearest node of any existing wire (0 with no wires).
    """
    if not 0.0 <= a_mix <= 1.0:
        raise InvalidParameter(f"a_mix must lie in [0, 1], got {a_mix}")
    proximity = 0.0
    if existing:
        occupied = np.vstack([w.points.reshape(-1, 3) for w in existing])
        dist, _ = cKDTree(occupied).query(path.points.reshape(-1, 3))
        proximity = float(np.mean(dist))
    return a_mix * path.length + (1.0 - a_mix) * proximity


def _candidate(
    graph: RoutingGraph, source: int, target: int, blocked: set
) -> Optional[List[int]]:
    if source in blocked or target in blocked:
        return None
    if not (graph.graph.has_node(source) and graph.graph.has_node(target)):
        return None
    view = nx.subgraph_view(graph.graph, filter_node=lambda n: n not in blocked)
    positions = graph.positions

    def euclidean(u: int, v: int) -> float:
        return float(np.linalg.norm(positions[u] - positions[v]))

    try:
        return nx.astar_path(view, source, target, heuristic=euclidean, weight="length")
    except nx.NetworkXNoPath:
        return None


def _prune(graph: RoutingGraph, wire: WirePath, clearance: float) -> None:
    """Remove the wire's nodes and every edge passing within ``clearance`` of them."""
    graph.graph.remove_nodes_from(wire.node_sequence)
    edges = graph.edge_array()
    if not len(edges):
        return
    wire_points = wire.points.reshape(-1, 3)
    dist = point_segment_distances(
        wire_points, graph.positions[edges[:, 0]], graph.positions[edges[:, 1]]
    )
    close = dist.min(axis=0) < clearance
    graph.graph.remove_edges_from(map(tuple, edges[close].tolist()))


def route_all(
    graph: RoutingGraph,
    ports: Sequence[Port],
    electrodes: Sequence[Electrode],
    a_mix: float = 0.5,
    clearance: float = 0.0016,
    profile_radius: float = 0.0008,
) -> List[WirePath]:
    """
    Greedy wiring of every electrode to its own free port.

    Each round computes the shortest (A*) path for every pending
    (electrode, free port) pair on the current graph, keeps the pair with the
    lowest ``heuristic_score`` (ties by electrode id, then port id), then
    removes the wire's nodes and the edges within ``clearance`` of it.
    Terminal nodes of other pending electrodes and free ports are not
    traversed. Pruning happens on a copy; ``graph`` only gains the
    ``electrode:<id>`` terminal bindings.

    Returns:
        Wires in instantiation order

    Raises:
        InvalidParameter: fewer ports than electrodes
        Unroutable: a pending electrode has no path to any free port
    """
    if len(ports) < len(electrodes):
        raise InvalidParameter(f"{len(ports)} ports cannot serve {len(electrodes)} electrodes")
    if clearance < 0.0:
        raise InvalidParameter("clearance must be non-negative")

    work = graph.copy()
    electrode_nodes: Dict[int, int] = {}
    for e in electrodes:
        node = work.nearest_node(e.center)
        electrode_nodes[e.id] = node
        graph.bind(f"electrode:{e.id}", node)
    port_nodes = {p.id: p.node for p in ports}

    pending = sorted(electrode_nodes)
    free = sorted(port_nodes)
    wires: List[WirePath] = []

    while pending:
        best: Optional[Tuple[float, int, int, WirePath]] = None
        for eid in pending:
            reachable = False
            for pid in free:
                blocked = {electrode_nodes[o] for o in pending if o != eid}
                blocked |= {port_nodes[o] for o in free if o != pid}
                blocked -= {electrode_nodes[eid], port_nodes[pid]}
                nodes = _candidate(work, port_nodes[pid], electrode_nodes[eid], blocked)
                if nodes is None:
                    continue
                reachable = True
                wire = WirePath.from_nodes(work, nodes, pid, eid, profile_radius)
                key = (heuristic_score(wire, wires, a_mix), eid, pid)
                if best is None or key < best[:3]:
                    best = (*key, wire)
            if not reachable:
                raise Unroutable(eid)

        score, eid, pid, wire = best
        before = work.node_count
        _prune(work, wire, clearance)
        logger.debug(
            f"Wire electrode {eid} -> port {pid}: {wire.length:.4f} m, h={score:.5f}, "
            f"graph {before} -> {work.node_count} nodes"
        )
        wires.append(wire)
        pending.remove(eid)
        free.remove(pid)

    logger.info(f"Routed {len(wires)} wires, total {sum(w.length for w in wires):.4f} m")
    return wires


def tube_wire(path: WirePath, profile_radius: float, smoothing_samples: int = 8) -> TubedWire:
    """Smoothed centerline of a routed wire with its circular profile."""
    if profile_radius <= 0.0:
        raise InvalidParameter(f"profile_radius must be positive, got {profile_radius}")
    if smoothing_samples < 1:
        raise InvalidParameter("smoothing_samples must be >= 1")
    points = path.points.reshape(-1, 3)
    centerline = catmull_rom_open(points, smoothing_samples)
    return TubedWire(
        electrode_id=path.electrode_id,
        port_id=path.port_id,
        centerline=centerline,
        radius=profile_radius,
        length=polyline_length(centerline),
    )
