"""Sampling, labeling, and dataset construction for the decomposed C-space.

Datasets store every sample's full per-level flag vector: component i's pose
depends only on the joint prefix, so a sample that collides at level 2 still
carries a valid training label for every other level.
"""

from __future__ import annotations

import io
from dataclasses import dataclass

import numpy as np

from .geometry import (
    Scene,
    exact_collision_batch,
    whole_robot_collision_batch,
)
from .kinematics import RobotModel

DATASET_MAGIC = "cdplan-dataset v1"


def sample_uniform(limits: np.ndarray, rng: np.random.Generator, count: int = 1) -> np.ndarray:
    """Uniform joint vectors within per-joint limits, shape (count, n)."""
    limits = np.asarray(limits, dtype=np.float64)
    return rng.uniform(limits[:, 0], limits[:, 1], size=(count, limits.shape[0]))


@dataclass
class Dataset:
    """Labeled configuration samples tied to one robot and one scene."""

    Q: np.ndarray  # (m, n) joint vectors
    flags: np.ndarray  # (m, n_levels) uint8, 1 = component in collision
    robot_hash: str
    scene_hash: str
    seed: int

    @property
    def count(self) -> int:
        return self.Q.shape[0]

    @property
    def n_dof(self) -> int:
        return self.Q.shape[1]

    @property
    def n_levels(self) -> int:
        return self.flags.shape[1]

    @property
    def in_collision(self) -> np.ndarray:
        return self.flags.any(axis=1)

    @property
    def first_collision_level(self) -> np.ndarray:
        """Smallest flagged level per sample, -1 where free."""
        return np.where(self.flags.any(axis=1), self.flags.argmax(axis=1), -1)


def build_dataset(model: RobotModel, scene: Scene, count: int, seed: int) -> Dataset:
    """Sample ``count`` uniform configurations and label them exactly."""
    rng = np.random.default_rng(seed)
    Q = sample_uniform(model.joint_limits, rng, count)
    if count == 0:
        flags = np.zeros((0, model.n_levels), dtype=np.uint8)
    else:
        flags = exact_collision_batch(model, scene, Q)
    return Dataset(
        Q=Q,
        flags=flags,
        robot_hash=model.fingerprint(),
        scene_hash=scene.fingerprint(),
        seed=seed,
    )


def save_dataset(ds: Dataset, path) -> None:
    """Text header plus fixed-width binary records (n float64 + n_levels bytes)."""
    header = (
        f"{DATASET_MAGIC}\n"
        f"robot-hash {ds.robot_hash}\n"
        f"scene-hash {ds.scene_hash}\n"
        f"seed {ds.seed}\n"
        f"count {ds.count}\n"
        f"dof {ds.n_dof}\n"
        f"levels {ds.n_levels}\n"
        f"end-header\n"
    )
    with open(path, "wb") as fh:
        fh.write(header.encode("ascii"))
        for i in range(ds.count):
            fh.write(ds.Q[i].astype("<f8").tobytes())
            fh.write(ds.flags[i].astype(np.uint8).tobytes())


def load_dataset(path) -> Dataset:
    with open(path, "rb") as fh:
        raw = fh.read()
    head, _, body = raw.partition(b"end-header\n")
    lines = io.StringIO(head.decode("ascii")).read().splitlines()
    if not lines or lines[0] != DATASET_MAGIC:
        raise ValueError(f"{path}: not a {DATASET_MAGIC} file")
    fields = dict(line.split(" ", 1) for line in lines[1:])
    count = int(fields["count"])
    dof = int(fields["dof"])
    levels = int(fields["levels"])
    rec = dof * 8 + levels
    if len(body) != count * rec:
        raise ValueError(f"{path}: truncated dataset body")
    Q = np.empty((count, dof))
    flags = np.empty((count, levels), dtype=np.uint8)
    for i in range(count):
        off = i * rec
        Q[i] = np.frombuffer(body, dtype="<f8", count=dof, offset=off)
        flags[i] = np.frombuffer(body, dtype=np.uint8, count=levels, offset=off + dof * 8)
    return Dataset(
        Q=Q,
        flags=flags,
        robot_hash=fields["robot-hash"],
        scene_hash=fields["scene-hash"],
        seed=int(fields["seed"]),
    )


def level_histogram(ds: Dataset) -> dict:
    """Percentage of samples first detected in-collision at each level, plus free.

    The per-level percentages and the free percentage partition the dataset,
    so they sum to 100.
    """
    if ds.count == 0:
        raise ValueError("level_histogram needs a non-empty dataset")
    first = ds.first_collision_level
    level_pct = [100.0 * np.mean(first == i) for i in range(ds.n_levels)]
    free_pct = 100.0 * np.mean(first == -1)
    return {"levels": level_pct, "free": free_pct}


@dataclass
class DecompositionReport:
    samples: int
    union_violations: int
    intersection_violations: int

    @property
    def ok(self) -> bool:
        return self.union_violations == 0 and self.intersection_violations == 0


def verify_decomposition(
    model: RobotModel,
    scene: Scene,
    count: int,
    seed: int,
    _corrupt: bool = False,
) -> DecompositionReport:
    """Empirically check the union/intersection decomposition properties.

    Fresh uniform samples are labeled per level; the OR of the flags must
    equal an independent whole-robot all-pairs collision check (union
    property), and the AND of the per-level free indicators must equal
    whole-robot freedom (intersection property). ``_corrupt`` flips one flag
    to fault-inject the checker itself (used by negative tests).
    """
    rng = np.random.default_rng(seed)
    Q = sample_uniform(model.joint_limits, rng, count)
    flags = exact_collision_batch(model, scene, Q)
    if _corrupt and count:
        flags = flags.copy()
        flags[0] = 1 - flags[0]
    oracle = whole_robot_collision_batch(model, scene, Q)
    union = flags.any(axis=1)
    union_bad = int((union != oracle).sum())
    free_all = (flags == 0).all(axis=1)
    inter_bad = int((free_all != ~oracle).sum())
    return DecompositionReport(
        samples=count,
        union_violations=union_bad,
        intersection_violations=inter_bad,
    )
