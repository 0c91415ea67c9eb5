"""Triangle meshes, weighted-region extraction, dermis extrusion and rim smoothing."""
