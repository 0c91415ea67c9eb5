from proxiskin.stages.avoid_sim.services.controller import (
    avoidance_command,
    extract_obstacles,
    inversion_params,
    speed_scaling,
    tracking_velocity,
)
from proxiskin.stages.avoid_sim.services.kinematics import (
    end_effector_skin,
    forward_kinematics,
    planar_lift_chain,
    point_robot_chain,
    position_jacobian,
    sensor_world_poses,
    solve_position,
)
from proxiskin.stages.avoid_sim.services.scenario import (
    characterize_ring,
    run_circle_scenario,
    scenario_chain,
    scenario_skin,
    summarize_scenario,
)

__all__ = [
    "avoidance_command",
    "characterize_ring",
    "end_effector_skin",
    "extract_obstacles",
    "forward_kinematics",
    "inversion_params",
    "planar_lift_chain",
    "point_robot_chain",
    "position_jacobian",
    "run_circle_scenario",
    "scenario_chain",
    "scenario_skin",
    "sensor_world_poses",
    "solve_position",
    "speed_scaling",
    "summarize_scenario",
    "tracking_velocity",
]
