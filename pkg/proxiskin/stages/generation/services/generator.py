import numpy as np
from loguru import logger

from proxiskin.commons.enums import LayoutMode
from proxiskin.stages.cap_physics.schema import CircuitParams
from proxiskin.stages.generation.schema import GenerationReport, SensorSummary, SkinUnit
from proxiskin.stages.mesh_core.schema import DesignParams, SurfaceMesh
from proxiskin.stages.mesh_core.services import (
    extract_weighted_region,
    mold_dermis,
    smooth_boundary,
)
from proxiskin.stages.sensor_layout.services import (
    place_nodules,
    poisson_disk_sample,
    snap_to_surface,
    wire_resistance,
)
from proxiskin.stages.wire_router.services import (
    build_routing_graph,
    place_ports,
    route_all,
    tube_wire,
)


def generate_skin_unit(
    mesh: SurfaceMesh,
    design: DesignParams,
    circuit: CircuitParams = CircuitParams(),
) -> SkinUnit:
    """
    Build a skin unit from a weighted base mesh.

    Dermis molding, sensor distribution, routing graph, wiring, then one
    circuit per sensor whose ``R`` is its wire plus base resistance.
    ``circuit`` supplies the shared ``n``, ``f`` and threshold.
    """
    region = extract_weighted_region(mesh, design.weight_threshold)
    dermis = mold_dermis(region, design.thickness)
    loop = dermis.boundary_loops[dermis.longest_loop_index()]
    boundary = smooth_boundary(dermis.outer_mesh.vertices[loop], design.boundary_samples)

    if design.layout == LayoutMode.EXPLICIT:
        sites = snap_to_surface(np.asarray(design.explicit_points), dermis.outer_mesh)
    else:
        sites = poisson_disk_sample(
            dermis.outer_mesh, design.r_min, design.seed, design.poisson_attempts
        )
    electrodes = place_nodules(
        sites,
        dermis,
        radius_scale=design.radius_scale,
        depth=design.nodule_depth,
        min_radius=design.min_radius,
        max_radius=design.max_radius,
        link_frame=design.link_frame,
    )

    graph = build_routing_graph(
        dermis,
        route_weights=region.weights,
        num_layers=design.num_layers,
        layer_gap=design.layer_gap,
        connect_radius=design.connect_radius,
    )
    ports = place_ports(boundary, design.port_count, graph)
    wires = route_all(
        graph,
        ports,
        electrodes,
        a_mix=design.a_mix,
        clearance=design.wire_clearance,
        profile_radius=design.profile_radius,
    )
    tubes = [tube_wire(w, design.profile_radius, design.wire_smoothing_samples) for w in wires]

    length_by_electrode = {t.electrode_id: t.length for t in tubes}
    lengths = np.array([length_by_electrode[e.id] for e in electrodes])
    resistances = np.array(
        [
            wire_resistance(e, length, design.resistance_per_meter, design.base_resistor)
            for e, length in zip(electrodes, lengths)
        ]
    )
    circuits = [circuit.model_copy(update={"R": float(r)}) for r in resistances]

    logger.info(
        f"Skin unit on {design.link_frame}: {len(electrodes)} sensors, "
        f"{len(ports)} ports, {lengths.sum():.4f} m of wire"
    )
    return SkinUnit(
        link_frame=design.link_frame,
        dermis=dermis,
        smoothed_boundary=boundary,
        electrodes=electrodes,
        ports=ports,
        wires=sorted(wires, key=lambda w: w.electrode_id),
        tubes=sorted(tubes, key=lambda t: t.electrode_id),
        wire_lengths=lengths,
        resistances=resistances,
        circuits=circuits,
    )


def summarize(skin: SkinUnit) -> GenerationReport:
    sensors = [
        SensorSummary(
            id=e.id,
            radius_m=e.radius,
            area_m2=e.area,
            wire_length_m=float(skin.wire_lengths[e.id]),
            resistance_ohm=float(skin.resistances[e.id]),
            port_id=skin.wire_for(e.id).port_id,
        )
        for e in skin.electrodes
    ]
    return GenerationReport(
        sensor_count=skin.sensor_count,
        port_count=len(skin.ports),
        total_wire_length_m=float(skin.wire_lengths.sum()),
        dermis_volume_m3=skin.dermis.volume(),
        sensors=sensors,
    )
