"""Serial-chain forward kinematics with standard Denavit-Hartenberg rows.

A robot is a chain of revolute joints; each Denavit-Hartenberg row carries
(link-length a, link-twist alpha, link-offset d, joint-angle-offset theta0).
Joints are grouped into ordered components so that the pose of component i
depends only on the first ``prefix_sizes[i]`` joint angles, which is what the
per-level configuration-space decomposition builds on.
"""

from __future__ import annotations

import hashlib
import importlib.resources
from dataclasses import dataclass, field

import numpy as np
import yaml


@dataclass
class Pose:
    """Rigid transform: 3x3 rotation plus translation in meters."""

    rotation: np.ndarray
    translation: np.ndarray


@dataclass
class RobotModel:
    """Kinematic chain plus per-link capsule geometry and DOF partition.

    components lists joint indices per component; concatenated they must be
    0..n-1 in order so that component poses depend only on joint prefixes.
    effective marks DOFs whose motion can change collision status.
    """

    name: str
    dh: np.ndarray  # (n, 4) rows [a, alpha, d, theta0]
    joint_limits: np.ndarray  # (n, 2) radians
    capsule_ends: np.ndarray  # (n, 2, 3) in link-local frames
    capsule_radii: np.ndarray  # (n,) meters
    components: tuple[tuple[int, ...], ...]
    effective: tuple[bool, ...]
    prefix_sizes: tuple[int, ...] = field(init=False)
    link_level: np.ndarray = field(init=False)  # (n,) component index per joint

    def __post_init__(self):
        self.dh = np.asarray(self.dh, dtype=np.float64)
        self.joint_limits = np.asarray(self.joint_limits, dtype=np.float64)
        self.capsule_ends = np.asarray(self.capsule_ends, dtype=np.float64)
        self.capsule_radii = np.asarray(self.capsule_radii, dtype=np.float64)
        n = self.dh.shape[0]
        if self.dh.shape != (n, 4):
            raise ValueError("dh rows must have shape (n, 4)")
        if not np.isfinite(self.dh).all():
            raise ValueError("dh parameters must be finite")
        if self.joint_limits.shape != (n, 2):
            raise ValueError("joint_limits must have shape (n, 2)")
        if self.capsule_ends.shape != (n, 2, 3):
            raise ValueError("capsule_ends must have shape (n, 2, 3)")
        if self.capsule_radii.shape != (n,) or (self.capsule_radii <= 0).any():
            raise ValueError("capsule radii must be positive, one per link")
        flat = [j for group in self.components for j in group]
        if flat != list(range(n)):
            raise ValueError("components must partition joints 0..n-1 in order")
        if len(self.effective) != n:
            raise ValueError("effective flags must have one entry per DOF")
        sizes = np.cumsum([len(g) for g in self.components])
        self.prefix_sizes = tuple(int(s) for s in sizes)
        level = np.empty(n, dtype=np.int64)
        for i, group in enumerate(self.components):
            for j in group:
                level[j] = i
        self.link_level = level

    @property
    def n_dof(self) -> int:
        return self.dh.shape[0]

    @property
    def n_levels(self) -> int:
        return len(self.components)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "dof": self.n_dof,
            "dh_rows": self.dh.tolist(),
            "joint_limits": self.joint_limits.tolist(),
            "capsules": [
                {
                    "a": self.capsule_ends[i, 0].tolist(),
                    "b": self.capsule_ends[i, 1].tolist(),
                    "radius": float(self.capsule_radii[i]),
                }
                for i in range(self.n_dof)
            ],
            "components": [list(g) for g in self.components],
            "effective": list(self.effective),
        }

    def fingerprint(self) -> str:
        blob = yaml.safe_dump(self.to_dict(), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:16]


def robot_from_dict(cfg: dict) -> RobotModel:
    caps = cfg["capsules"]
    return RobotModel(
        name=cfg.get("name", "robot"),
        dh=np.array(cfg["dh_rows"], dtype=np.float64),
        joint_limits=np.array(cfg["joint_limits"], dtype=np.float64),
        capsule_ends=np.array([[c["a"], c["b"]] for c in caps], dtype=np.float64),
        capsule_radii=np.array([c["radius"] for c in caps], dtype=np.float64),
        components=tuple(tuple(g) for g in cfg["components"]),
        effective=tuple(bool(e) for e in cfg["effective"]),
    )


def load_robot(path) -> RobotModel:
    with open(path) as fh:
        cfg = yaml.safe_load(fh)
    return robot_from_dict(cfg)


def load_bundled_robot(name: str) -> RobotModel:
    """Load one of the robot configs shipped with the package.

    Available: "arm6" (6-DOF arm with UR5-class geometry) and "planar3"
    (degenerate 3-DOF planar chain for visual-scale tests).
    """
    res = importlib.resources.files("cdplan.data").joinpath(f"{name}.yaml")
    return robot_from_dict(yaml.safe_load(res.read_text()))


def _dh_transform(a, alpha, d, theta):
    ct, st = np.cos(theta), np.sin(theta)
    ca, sa = np.cos(alpha), np.sin(alpha)
    T = np.array(
        [
            [ct, -st * ca, st * sa, a * ct],
            [st, ct * ca, -ct * sa, a * st],
            [0.0, sa, ca, d],
            [0.0, 0.0, 0.0, 1.0],
        ]
    )
    return T


def joint_frames(model: RobotModel, q: np.ndarray, n: int | None = None):
    """Cumulative 4x4 frames of the first n joints (all by default)."""
    q = np.asarray(q, dtype=np.float64)
    if n is None:
        n = q.shape[0]
    T = np.eye(4)
    frames = []
    for i in range(n):
        T = T @ _dh_transform(model.dh[i, 0], model.dh[i, 1], model.dh[i, 2], q[i] + model.dh[i, 3])
        frames.append(T)
    return frames


def forward_kinematics(model: RobotModel, q: np.ndarray) -> list[Pose]:
    """World pose of every component; pose i depends only on the joint prefix."""
    q = np.asarray(q, dtype=np.float64)
    if q.shape != (model.n_dof,):
        raise ValueError(f"expected {model.n_dof} joint angles, got shape {q.shape}")
    frames = joint_frames(model, q)
    poses = []
    for group in model.components:
        T = frames[group[-1]]
        poses.append(Pose(rotation=T[:3, :3].copy(), translation=T[:3, 3].copy()))
    return poses


def prefix_forward_kinematics(model: RobotModel, q_prefix: np.ndarray, level: int) -> Pose:
    """Pose of component ``level`` from the prefix of joint angles it depends on."""
    if not 0 <= level < model.n_levels:
        raise ValueError(f"level {level} out of range [0, {model.n_levels})")
    q_prefix = np.asarray(q_prefix, dtype=np.float64)
    n_i = model.prefix_sizes[level]
    if q_prefix.shape != (n_i,):
        raise ValueError(f"level {level} needs {n_i} prefix angles, got shape {q_prefix.shape}")
    frames = joint_frames(model, q_prefix, n_i)
    T = frames[model.components[level][-1]]
    return Pose(rotation=T[:3, :3].copy(), translation=T[:3, 3].copy())
