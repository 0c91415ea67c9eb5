from proxiskin.stages.wire_router.schema.routing import (
    Port,
    RoutingGraph,
    TubedWire,
    WirePath,
)

__all__ = [
    "Port",
    "RoutingGraph",
    "TubedWire",
    "WirePath",
]
