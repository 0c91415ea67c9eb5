from typing import Optional, Sequence

import numpy as np
from scipy.spatial.transform import Rotation

from proxiskin.commons.enums import JointType
from proxiskin.commons.errors import InvalidParameter, JointLimit
from proxiskin.commons.geometry import frame_from_normal, rigid_transform, translation
from proxiskin.stages.avoid_sim.schema import ChainPose, Joint, KinematicChain
from proxiskin.stages.sensor_layout.schema import Electrode

LIMIT_TOLERANCE = 1e-12


def joint_motion(joint: Joint, value: float) -> np.ndarray:
    if joint.joint_type is JointType.REVOLUTE:
        return rigid_transform(Rotation.from_rotvec(joint.axis * value).as_matrix(), np.zeros(3))
    return translation(joint.axis * value)


def forward_kinematics(chain: KinematicChain, q: Sequence[float]) -> ChainPose:
    """
    World transform of every link, composing ``offset @ motion(q_i)`` down the chain.

    Raises:
        JointLimit: a joint value lies outside its limits
    """
    q = np.asarray(q, dtype=float)
    if q.shape != (chain.dof,):
        raise InvalidParameter(f"expected {chain.dof} joint values, got shape {q.shape}")
    T = np.asarray(chain.base_transform, dtype=float).copy()
    links = {chain.base_link: T.copy()}
    for joint, value in zip(chain.joints, q):
        if not joint.lower - LIMIT_TOLERANCE <= value <= joint.upper + LIMIT_TOLERANCE:
            raise JointLimit(
                f"Joint {joint.name} value {value:.6g} outside [{joint.lower:.6g}, {joint.upper:.6g}]",
                data={"joint": joint.name, "value": float(value)},
            )
        T = T @ joint.offset @ joint_motion(joint, value)
        links[joint.child_link] = T.copy()
    return ChainPose(q=q, links=links, end_effector=T @ chain.tool_offset)


def sensor_world_poses(pose: ChainPose, electrodes: Sequence[Electrode]) -> np.ndarray:
    """(S, 4, 4) world pose of every electrode from its link transform."""
    return np.stack([e.world_pose(pose.links[e.link_frame]) for e in electrodes])


def position_jacobian(chain: KinematicChain, q: np.ndarray, step: float = 1e-6) -> np.ndarray:
    """Central-difference 3 x dof Jacobian of the end-effector position."""
    q = np.asarray(q, dtype=float)
    J = np.zeros((3, chain.dof))
    for i, joint in enumerate(chain.joints):
        lo = max(q[i] - step, joint.lower)
        hi = min(q[i] + step, joint.upper)
        q_lo, q_hi = q.copy(), q.copy()
        q_lo[i], q_hi[i] = lo, hi
        J[:, i] = (
            forward_kinematics(chain, q_hi).end_effector_position
            - forward_kinematics(chain, q_lo).end_effector_position
        ) / (hi - lo)
    return J


def clamp_to_limits(chain: KinematicChain, q: np.ndarray) -> np.ndarray:
    lower, upper = chain.limits
    return np.clip(q, lower, upper)


def solve_position(
    chain: KinematicChain,
    target: np.ndarray,
    q_init: Optional[np.ndarray] = None,
    iterations: int = 50,
    tolerance: float = 1e-9,
) -> np.ndarray:
    """Joint values putting the end effector at ``target`` by pseudo-inverse Newton steps."""
    q = np.zeros(chain.dof) if q_init is None else np.asarray(q_init, dtype=float).copy()
    q = clamp_to_limits(chain, q)
    for _ in range(iterations):
        error = np.asarray(target, dtype=float) - forward_kinematics(chain, q).end_effector_position
        if np.linalg.norm(error) < tolerance:
            break
        q = clamp_to_limits(chain, q + np.linalg.pinv(position_jacobian(chain, q)) @ error)
    return q


def point_robot_chain(reach: float = 1.0) -> KinematicChain:
    """Cartesian x-y-z gantry; the joint vector is the end-effector position."""
    axes = np.eye(3)
    return KinematicChain(
        joints=[
            Joint(
                name=f"{name}_slide",
                child_link=link,
                joint_type=JointType.PRISMATIC,
                axis=axes[i],
                lower=-reach,
                upper=reach,
            )
            for i, (name, link) in enumerate((("x", "x_stage"), ("y", "y_stage"), ("z", "ee")))
        ]
    )


def planar_lift_chain(upper_arm: float = 0.3, forearm: float = 0.25, lift: float = 0.6) -> KinematicChain:
    """Two revolute joints about z (a planar arm) riding on a vertical lift."""
    z = np.array([0.0, 0.0, 1.0])
    return KinematicChain(
        joints=[
            Joint(name="lift", child_link="column", joint_type=JointType.PRISMATIC, axis=z, lower=0.0, upper=lift),
            Joint(name="shoulder", child_link="upper_arm", joint_type=JointType.REVOLUTE, axis=z),
            Joint(
                name="elbow",
                child_link="ee",
                joint_type=JointType.REVOLUTE,
                axis=z,
                offset=translation([upper_arm, 0.0, 0.0]),
                lower=-0.95 * np.pi,
                upper=0.95 * np.pi,
            ),
        ],
        tool_offset=translation([forearm, 0.0, 0.0]),
    )


def end_effector_skin(
    count: int = 8,
    ring_radius: float = 0.04,
    electrode_radius: float = 0.014,
    link_frame: str = "ee",
    tool_offset: Optional[np.ndarray] = None,
) -> list[Electrode]:
    """Ring of outward-facing electrodes around the tool point, in the end link's frame."""
    T = np.eye(4) if tool_offset is None else np.asarray(tool_offset, dtype=float)
    electrodes = []
    for i in range(count):
        angle = 2.0 * np.pi * i / count
        normal_local = np.array([np.cos(angle), np.sin(angle), 0.0])
        normal = T[:3, :3] @ normal_local
        center = T[:3, 3] + ring_radius * normal
        electrodes.append(
            Electrode(
                id=i,
                center=center,
                normal=normal,
                radius=electrode_radius,
                depth=0.0,
                area=np.pi * electrode_radius**2,
                link_frame=link_frame,
                local_pose=frame_from_normal(center, normal),
            )
        )
    return electrodes
