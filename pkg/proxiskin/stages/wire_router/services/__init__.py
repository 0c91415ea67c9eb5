from proxiskin.stages.wire_router.services.graph import build_routing_graph, place_ports
from proxiskin.stages.wire_router.services.routing import (
    heuristic_score,
    route_all,
    tube_wire,
)

__all__ = [
    "build_routing_graph",
    "heuristic_score",
    "place_ports",
    "route_all",
    "tube_wire",
]
