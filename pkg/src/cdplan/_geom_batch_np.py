"""Vectorized numpy kernels for kinematics and collision labeling.

These are the pure-numpy fallback path for the numba kernels in
``_geom_batch_jit`` and also serve as the independent whole-robot route used
by the decomposition verifier (it enumerates all primitive pairs directly,
with no per-level structure).
"""

import math

import numpy as np

_TINY = 1e-12


def fk_batch(dh, Q):
    """Cumulative frames for a batch of configurations.

    Returns rotations (m, n, 3, 3) and translations (m, n, 3) where n is the
    number of joints covered by Q's width.
    """
    m, n = Q.shape
    R = np.empty((m, n, 3, 3))
    P = np.empty((m, n, 3))
    Rp = np.tile(np.eye(3), (m, 1, 1))
    pp = np.zeros((m, 3))
    for i in range(n):
        th = Q[:, i] + dh[i, 3]
        ct = np.cos(th)
        st = np.sin(th)
        ca = math.cos(dh[i, 1])
        sa = math.sin(dh[i, 1])
        a = dh[i, 0]
        d = dh[i, 2]
        Rl = np.empty((m, 3, 3))
        Rl[:, 0, 0] = ct
        Rl[:, 0, 1] = -st * ca
        Rl[:, 0, 2] = st * sa
        Rl[:, 1, 0] = st
        Rl[:, 1, 1] = ct * ca
        Rl[:, 1, 2] = -ct * sa
        Rl[:, 2, 0] = 0.0
        Rl[:, 2, 1] = sa
        Rl[:, 2, 2] = ca
        t = np.empty((m, 3))
        t[:, 0] = a * ct
        t[:, 1] = a * st
        t[:, 2] = d
        P[:, i] = pp + np.einsum("mrc,mc->mr", Rp, t)
        R[:, i] = np.einsum("mrk,mkc->mrc", Rp, Rl)
        Rp = R[:, i]
        pp = P[:, i]
    return R, P


def world_capsules(R, P, caps):
    """Capsule endpoints in the world frame, shape (m, n, 2, 3)."""
    return P[:, :, None, :] + np.einsum("mnrc,nec->mner", R, caps)


def point_box_distance(P, half):
    """Distance from points (..., 3) to a solid origin box."""
    e = np.maximum(np.abs(P) - half, 0.0)
    return np.sqrt((e * e).sum(axis=-1))


def segment_segment_distance(P1, Q1, P2, Q2):
    """Pairwise segment-segment distances over broadcast leading dims."""
    P1, Q1, P2, Q2 = np.broadcast_arrays(P1, Q1, P2, Q2)
    d1 = Q1 - P1
    d2 = Q2 - P2
    r = P1 - P2
    a = (d1 * d1).sum(-1)
    e = (d2 * d2).sum(-1)
    f = (d2 * r).sum(-1)
    c = (d1 * r).sum(-1)
    b = (d1 * d2).sum(-1)

    a_ok = a > _TINY
    e_ok = e > _TINY
    a_safe = np.where(a_ok, a, 1.0)
    e_safe = np.where(e_ok, e, 1.0)

    denom = a * e - b * b
    denom_ok = denom > _TINY
    s = np.where(denom_ok, np.clip((b * f - c * e) / np.where(denom_ok, denom, 1.0), 0.0, 1.0), 0.0)
    t = (b * s + f) / e_safe
    s = np.where(t < 0.0, np.clip(-c / a_safe, 0.0, 1.0), s)
    s = np.where(t > 1.0, np.clip((b - c) / a_safe, 0.0, 1.0), s)
    t = np.clip(t, 0.0, 1.0)

    # degenerate segments
    s = np.where(~e_ok, np.clip(-c / a_safe, 0.0, 1.0), s)
    t = np.where(~e_ok, 0.0, t)
    s = np.where(~a_ok, 0.0, s)
    t = np.where(~a_ok, np.clip(f / e_safe, 0.0, 1.0), t)
    t = np.where(~a_ok & ~e_ok, 0.0, t)

    diff = (P1 + d1 * s[..., None]) - (P2 + d2 * t[..., None])
    return np.sqrt((diff * diff).sum(-1))


def _box_edges(half):
    e0 = np.empty((12, 3))
    e1 = np.empty((12, 3))
    idx = 0
    for axis in range(3):
        u = (axis + 1) % 3
        v = (axis + 2) % 3
        for su in (-1.0, 1.0):
            for sv in (-1.0, 1.0):
                e0[idx, axis] = -half[axis]
                e1[idx, axis] = half[axis]
                e0[idx, u] = e1[idx, u] = su * half[u]
                e0[idx, v] = e1[idx, v] = sv * half[v]
                idx += 1
    return e0, e1


def segment_box_distance(A, B, center, half):
    """Distances from segments (N, 3) to one solid axis-aligned box."""
    A = np.atleast_2d(A) - center
    B = np.atleast_2d(B) - center
    D = B - A
    small = np.abs(D) < _TINY
    Dsafe = np.where(small, 1.0, D)
    t1 = (-half - A) / Dsafe
    t2 = (half - A) / Dsafe
    lo = np.where(small, -np.inf, np.minimum(t1, t2))
    hi = np.where(small, np.inf, np.maximum(t1, t2))
    miss = (small & (np.abs(A) > half)).any(-1)
    tmin = np.maximum(lo.max(-1), 0.0)
    tmax = np.minimum(hi.min(-1), 1.0)
    inter = ~miss & (tmin <= tmax)

    best = np.minimum(point_box_distance(A, half), point_box_distance(B, half))
    e0, e1 = _box_edges(half)
    d = segment_segment_distance(A[:, None, :], B[:, None, :], e0[None, :, :], e1[None, :, :])
    best = np.minimum(best, d.min(-1))
    return np.where(inter, 0.0, best)


def _link_hit_batch(W, radii, k, boxes, ground_on, ground_h):
    """Per-sample collision mask of link k against boxes/ground/links j<=k-2."""
    m = W.shape[0]
    hit = np.zeros(m, dtype=bool)
    a = W[:, k, 0]
    b = W[:, k, 1]
    for ib in range(boxes.shape[0]):
        hit |= segment_box_distance(a, b, boxes[ib, 0], boxes[ib, 1]) < radii[k]
    if ground_on:
        hit |= np.minimum(a[:, 2], b[:, 2]) < ground_h + radii[k]
    for j in range(k - 1):
        d = segment_segment_distance(a, b, W[:, j, 0], W[:, j, 1])
        hit |= d < radii[k] + radii[j]
    return hit


def label_batch(dh, caps, radii, link_level, n_levels, boxes, ground_on, ground_h, Q):
    """Per-level collision flags for a batch of configurations."""
    m = Q.shape[0]
    R, P = fk_batch(dh, Q)
    W = world_capsules(R, P, caps)
    flags = np.zeros((m, n_levels), dtype=np.uint8)
    for k in range(dh.shape[0]):
        lev = link_level[k]
        todo = flags[:, lev] == 0
        if not todo.any():
            continue
        hit = _link_hit_batch(W[todo], radii, k, boxes, ground_on, ground_h)
        idx = np.flatnonzero(todo)
        flags[idx[hit], lev] = 1
    return flags


def level_flag_batch(dh, caps, radii, link_level, level, n_prefix, boxes, ground_on, ground_h, Qp):
    """Collision flag of one decomposition level over prefix configurations."""
    R, P = fk_batch(dh[:n_prefix], Qp)
    W = world_capsules(R, P, caps[:n_prefix])
    m = Qp.shape[0]
    hit = np.zeros(m, dtype=bool)
    for k in range(n_prefix):
        if link_level[k] != level:
            continue
        hit |= _link_hit_batch(W, radii, k, boxes, ground_on, ground_h)
    return hit.astype(np.uint8)


def whole_robot_batch(dh, caps, radii, boxes, ground_on, ground_h, Q):
    """Whole-chain collision mask via direct all-pairs enumeration.

    Independent of the per-level labeling route: every capsule-box pair and
    every non-adjacent capsule pair is checked directly and OR-ed.
    """
    n = dh.shape[0]
    R, P = fk_batch(dh, Q)
    W = world_capsules(R, P, caps)
    hit = np.zeros(Q.shape[0], dtype=bool)
    for k in range(n):
        a = W[:, k, 0]
        b = W[:, k, 1]
        for ib in range(boxes.shape[0]):
            hit |= segment_box_distance(a, b, boxes[ib, 0], boxes[ib, 1]) < radii[k]
        if ground_on:
            hit |= np.minimum(a[:, 2], b[:, 2]) < ground_h + radii[k]
    for k in range(n):
        for j in range(k - 1):
            d = segment_segment_distance(W[:, k, 0], W[:, k, 1], W[:, j, 0], W[:, j, 1])
            hit |= d < radii[k] + radii[j]
    return hit
