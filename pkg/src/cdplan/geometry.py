"""Exact narrow-phase collision checking for capsule links and box obstacles.

The exact checker is the ground truth everything else in the package is
measured against: links are capsules, obstacles are axis-aligned boxes, and
self-collision skips adjacent link pairs (they touch at the joints by
construction). Collision uses strict inequality (distance < radius); contact
at exactly the radius counts as free.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

import numpy as np
import yaml

from . import _geom_batch_np as _np_kernels
from ._backend import NUMBA_ENABLED
from ._geom_core import segment_box_distance_local, segment_segment_distance
from .kinematics import RobotModel, joint_frames

if NUMBA_ENABLED:
    from . import _geom_batch_jit as _jit_kernels
else:
    _jit_kernels = None


@dataclass
class Capsule:
    """Segment with radius; coordinates live in whichever frame the caller uses."""

    endpoint_a: np.ndarray
    endpoint_b: np.ndarray
    radius: float

    def __post_init__(self):
        self.endpoint_a = np.asarray(self.endpoint_a, dtype=np.float64)
        self.endpoint_b = np.asarray(self.endpoint_b, dtype=np.float64)
        if self.radius <= 0:
            raise ValueError("capsule radius must be > 0")
        if not (np.isfinite(self.endpoint_a).all() and np.isfinite(self.endpoint_b).all()):
            raise ValueError("capsule endpoints must be finite")


@dataclass
class BoxObstacle:
    center: np.ndarray
    half_extents: np.ndarray

    def __post_init__(self):
        self.center = np.asarray(self.center, dtype=np.float64)
        self.half_extents = np.asarray(self.half_extents, dtype=np.float64)
        if (self.half_extents <= 0).any():
            raise ValueError("box half-extents must be > 0")


@dataclass
class Scene:
    """Static environment: boxes plus an optional ground plane (off by default)."""

    obstacles: list[BoxObstacle] = field(default_factory=list)
    ground: float | None = None
    seed: int | None = None
    name: str = "scene"

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "seed": self.seed,
            "ground": self.ground,
            "boxes": [
                {"center": b.center.tolist(), "half_extents": b.half_extents.tolist()}
                for b in self.obstacles
            ],
        }

    def fingerprint(self) -> str:
        blob = yaml.safe_dump(self.to_dict(), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:16]


def scene_from_dict(cfg: dict) -> Scene:
    return Scene(
        obstacles=[BoxObstacle(b["center"], b["half_extents"]) for b in cfg.get("boxes", [])],
        ground=cfg.get("ground"),
        seed=cfg.get("seed"),
        name=cfg.get("name", "scene"),
    )


def load_scene(path) -> Scene:
    with open(path) as fh:
        return scene_from_dict(yaml.safe_load(fh))


def save_scene(scene: Scene, path) -> None:
    with open(path, "w") as fh:
        yaml.safe_dump(scene.to_dict(), fh, sort_keys=False)


# static base column (never moves); generated obstacles must stay clear of it
_BASE_AXIS_A = np.array([0.0, 0.0, -0.05])
_BASE_AXIS_B = np.array([0.0, 0.0, 0.10])
_BASE_CLEARANCE = 0.10


def generate_scene(n_boxes: int, seed: int, side: float = 0.40, r_min: float = 0.25, r_max: float = 0.60) -> Scene:
    """Cubic obstacles placed uniformly in a radial shell around the base.

    Cube side and shell radii are repo-chosen constants (the experiments this
    reproduces never published obstacle dimensions); they are recorded in the
    scene file so every run is reproducible. Boxes that would touch the
    robot's static base column are redrawn.
    """
    rng = np.random.default_rng(seed)
    half = np.full(3, side / 2)
    boxes = []
    while len(boxes) < n_boxes:
        v = rng.normal(size=3)
        v /= np.linalg.norm(v)
        r = rng.uniform(r_min, r_max)
        box = BoxObstacle(center=v * r, half_extents=half)
        if segment_box_distance(_BASE_AXIS_A, _BASE_AXIS_B, box) < _BASE_CLEARANCE:
            continue
        boxes.append(box)
    return Scene(obstacles=boxes, seed=seed, name=f"boxes{n_boxes}-seed{seed}")


# ---------------------------------------------------------------------------
# scalar primitive queries


def segment_box_distance(seg_a, seg_b, box: BoxObstacle) -> float:
    """Euclidean distance between a segment and a solid box; 0 iff they meet."""
    a = np.asarray(seg_a, dtype=np.float64) - box.center
    b = np.asarray(seg_b, dtype=np.float64) - box.center
    return float(segment_box_distance_local(a, b, box.half_extents))


def capsule_box_collide(capsule: Capsule, box: BoxObstacle) -> bool:
    return segment_box_distance(capsule.endpoint_a, capsule.endpoint_b, box) < capsule.radius


def capsule_capsule_collide(a: Capsule, b: Capsule) -> bool:
    d = segment_segment_distance(a.endpoint_a, a.endpoint_b, b.endpoint_a, b.endpoint_b)
    return d < a.radius + b.radius


def world_capsules(model: RobotModel, q, n: int | None = None) -> list[Capsule]:
    """Link capsules posed in the world frame for the first n joints."""
    frames = joint_frames(model, np.asarray(q, dtype=np.float64), n)
    out = []
    for i, T in enumerate(frames):
        R, p = T[:3, :3], T[:3, 3]
        out.append(
            Capsule(
                endpoint_a=R @ model.capsule_ends[i, 0] + p,
                endpoint_b=R @ model.capsule_ends[i, 1] + p,
                radius=float(model.capsule_radii[i]),
            )
        )
    return out


# ---------------------------------------------------------------------------
# model/scene packing for the batch kernels


def pack_scene(scene: Scene):
    nb = len(scene.obstacles)
    boxes = np.empty((nb, 2, 3))
    for i, b in enumerate(scene.obstacles):
        boxes[i, 0] = b.center
        boxes[i, 1] = b.half_extents
    ground_on = 0 if scene.ground is None else 1
    ground_h = 0.0 if scene.ground is None else float(scene.ground)
    return boxes, ground_on, ground_h


# ---------------------------------------------------------------------------
# per-level exact collision


@dataclass
class LevelLabel:
    """Per-component collision flags; flag i marks the prefix in the level-i
    in-collision subspace."""

    flags: np.ndarray  # (n_levels,) uint8

    def __post_init__(self):
        self.flags = np.asarray(self.flags, dtype=np.uint8)

    @property
    def in_collision(self) -> bool:
        return bool(self.flags.any())

    @property
    def first_collision_level(self) -> int | None:
        idx = np.flatnonzero(self.flags)
        return int(idx[0]) if idx.size else None


def component_collision(model: RobotModel, scene: Scene, q_prefix, level: int) -> bool:
    """True iff component ``level`` collides with obstacles, ground, or any
    link at least two joints below it, given the joint prefix it depends on."""
    if not 0 <= level < model.n_levels:
        raise ValueError(f"level {level} out of range [0, {model.n_levels})")
    q_prefix = np.atleast_2d(np.asarray(q_prefix, dtype=np.float64))
    n_i = model.prefix_sizes[level]
    if q_prefix.shape[1] != n_i:
        raise ValueError(f"level {level} needs {n_i} prefix angles, got {q_prefix.shape[1]}")
    boxes, g_on, g_h = pack_scene(scene)
    if NUMBA_ENABLED:
        flags = _jit_kernels.level_flag_batch(
            model.dh, model.capsule_ends, model.capsule_radii, model.link_level,
            level, n_i, boxes, g_on, g_h, q_prefix,
        )
    else:
        flags = _np_kernels.level_flag_batch(
            model.dh, model.capsule_ends, model.capsule_radii, model.link_level,
            level, n_i, boxes, g_on, g_h, q_prefix,
        )
    return bool(flags[0])


def exact_collision(model: RobotModel, scene: Scene, q) -> LevelLabel:
    """All per-level flags, each computed independently from its prefix."""
    q = np.asarray(q, dtype=np.float64)
    if q.shape != (model.n_dof,):
        raise ValueError(f"expected {model.n_dof} joint angles, got shape {q.shape}")
    flags = np.zeros(model.n_levels, dtype=np.uint8)
    for level in range(model.n_levels):
        if component_collision(model, scene, q[: model.prefix_sizes[level]], level):
            flags[level] = 1
    return LevelLabel(flags=flags)


def exact_collision_batch(model: RobotModel, scene: Scene, Q) -> np.ndarray:
    """Per-level flags for a batch of configurations, shape (m, n_levels)."""
    Q = np.ascontiguousarray(np.atleast_2d(Q), dtype=np.float64)
    if Q.shape[1] != model.n_dof:
        raise ValueError(f"expected {model.n_dof} joint angles per row")
    boxes, g_on, g_h = pack_scene(scene)
    args = (
        model.dh, model.capsule_ends, model.capsule_radii, model.link_level,
        model.n_levels, boxes, g_on, g_h, Q,
    )
    if NUMBA_ENABLED:
        return _jit_kernels.label_batch(*args)
    return _np_kernels.label_batch(*args)


def whole_robot_collision(model: RobotModel, scene: Scene, q) -> bool:
    """Direct whole-chain collision test (no per-level structure)."""
    q = np.ascontiguousarray(q, dtype=np.float64)
    boxes, g_on, g_h = pack_scene(scene)
    if NUMBA_ENABLED:
        n = model.n_dof
        return bool(
            _jit_kernels.whole_robot_single(
                model.dh, model.capsule_ends, model.capsule_radii, boxes, g_on, g_h, q,
                np.empty((n, 3, 3)), np.empty((n, 3)), np.empty((n, 2, 3)),
                np.empty(3), np.empty(3),
            )
        )
    return bool(
        _np_kernels.whole_robot_batch(
            model.dh, model.capsule_ends, model.capsule_radii, boxes, g_on, g_h,
            q.reshape(1, -1),
        )[0]
    )


def whole_robot_collision_batch(model: RobotModel, scene: Scene, Q) -> np.ndarray:
    """All-pairs whole-robot collision mask; the independent oracle route for
    the decomposition properties (always the vectorized numpy path)."""
    Q = np.atleast_2d(np.asarray(Q, dtype=np.float64))
    boxes, g_on, g_h = pack_scene(scene)
    return _np_kernels.whole_robot_batch(
        model.dh, model.capsule_ends, model.capsule_radii, boxes, g_on, g_h, Q
    )
