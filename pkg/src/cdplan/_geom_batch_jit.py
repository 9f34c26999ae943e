"""Numba loop kernels for forward kinematics and collision labeling.

Only imported when the numba backend is active; the vectorized twins in
``_geom_batch_np`` provide the pure-numpy fallback path.
"""

import math

import numpy as np
from numba import njit

from ._geom_core import segment_box_distance_local, segment_segment_distance


@njit(cache=True)
def _fk_fill(dh, q, n, R, p):
    """Cumulative rotation/translation for the first n joints of the chain."""
    r00 = 1.0
    r01 = 0.0
    r02 = 0.0
    r10 = 0.0
    r11 = 1.0
    r12 = 0.0
    r20 = 0.0
    r21 = 0.0
    r22 = 1.0
    px = 0.0
    py = 0.0
    pz = 0.0
    for i in range(n):
        th = q[i] + dh[i, 3]
        a = dh[i, 0]
        ca = math.cos(dh[i, 1])
        sa = math.sin(dh[i, 1])
        d = dh[i, 2]
        ct = math.cos(th)
        st = math.sin(th)
        # local transform: Rz(theta) Tz(d) Tx(a) Rx(alpha)
        l00 = ct
        l01 = -st * ca
        l02 = st * sa
        l10 = st
        l11 = ct * ca
        l12 = -ct * sa
        l20 = 0.0
        l21 = sa
        l22 = ca
        tx = a * ct
        ty = a * st
        tz = d
        px = px + r00 * tx + r01 * ty + r02 * tz
        py = py + r10 * tx + r11 * ty + r12 * tz
        pz = pz + r20 * tx + r21 * ty + r22 * tz
        n00 = r00 * l00 + r01 * l10 + r02 * l20
        n01 = r00 * l01 + r01 * l11 + r02 * l21
        n02 = r00 * l02 + r01 * l12 + r02 * l22
        n10 = r10 * l00 + r11 * l10 + r12 * l20
        n11 = r10 * l01 + r11 * l11 + r12 * l21
        n12 = r10 * l02 + r11 * l12 + r12 * l22
        n20 = r20 * l00 + r21 * l10 + r22 * l20
        n21 = r20 * l01 + r21 * l11 + r22 * l21
        n22 = r20 * l02 + r21 * l12 + r22 * l22
        r00 = n00
        r01 = n01
        r02 = n02
        r10 = n10
        r11 = n11
        r12 = n12
        r20 = n20
        r21 = n21
        r22 = n22
        R[i, 0, 0] = r00
        R[i, 0, 1] = r01
        R[i, 0, 2] = r02
        R[i, 1, 0] = r10
        R[i, 1, 1] = r11
        R[i, 1, 2] = r12
        R[i, 2, 0] = r20
        R[i, 2, 1] = r21
        R[i, 2, 2] = r22
        p[i, 0] = px
        p[i, 1] = py
        p[i, 2] = pz


@njit(cache=True)
def _world_capsules(R, p, caps, n, W):
    for i in range(n):
        for e in range(2):
            for r in range(3):
                W[i, e, r] = (
                    p[i, r]
                    + R[i, r, 0] * caps[i, e, 0]
                    + R[i, r, 1] * caps[i, e, 1]
                    + R[i, r, 2] * caps[i, e, 2]
                )


@njit(cache=True)
def _link_hit(W, radii, k, boxes, ground_on, ground_h, al, bl):
    """Collision of link k against boxes, ground and links j <= k-2."""
    nb = boxes.shape[0]
    for ib in range(nb):
        for r in range(3):
            al[r] = W[k, 0, r] - boxes[ib, 0, r]
            bl[r] = W[k, 1, r] - boxes[ib, 0, r]
        if segment_box_distance_local(al, bl, boxes[ib, 1]) < radii[k]:
            return True
    if ground_on != 0:
        zmin = W[k, 0, 2]
        if W[k, 1, 2] < zmin:
            zmin = W[k, 1, 2]
        if zmin < ground_h + radii[k]:
            return True
    for j in range(k - 1):
        d = segment_segment_distance(W[k, 0], W[k, 1], W[j, 0], W[j, 1])
        if d < radii[k] + radii[j]:
            return True
    return False


@njit(cache=True)
def label_batch(dh, caps, radii, link_level, n_levels, boxes, ground_on, ground_h, Q):
    """Per-level collision flags for a batch of configurations."""
    m = Q.shape[0]
    n = dh.shape[0]
    flags = np.zeros((m, n_levels), dtype=np.uint8)
    R = np.empty((n, 3, 3))
    p = np.empty((n, 3))
    W = np.empty((n, 2, 3))
    al = np.empty(3)
    bl = np.empty(3)
    for s in range(m):
        _fk_fill(dh, Q[s], n, R, p)
        _world_capsules(R, p, caps, n, W)
        for k in range(n):
            lev = link_level[k]
            if flags[s, lev] == 1:
                continue
            if _link_hit(W, radii, k, boxes, ground_on, ground_h, al, bl):
                flags[s, lev] = 1
    return flags


@njit(cache=True)
def level_flag_batch(dh, caps, radii, link_level, level, n_prefix, boxes, ground_on, ground_h, Qp):
    """Collision flag of one decomposition level over prefix configurations."""
    m = Qp.shape[0]
    flags = np.zeros(m, dtype=np.uint8)
    R = np.empty((n_prefix, 3, 3))
    p = np.empty((n_prefix, 3))
    W = np.empty((n_prefix, 2, 3))
    al = np.empty(3)
    bl = np.empty(3)
    for s in range(m):
        _fk_fill(dh, Qp[s], n_prefix, R, p)
        _world_capsules(R, p, caps, n_prefix, W)
        for k in range(n_prefix):
            if link_level[k] != level:
                continue
            if _link_hit(W, radii, k, boxes, ground_on, ground_h, al, bl):
                flags[s] = 1
                break
    return flags


@njit(cache=True)
def whole_robot_single(dh, caps, radii, boxes, ground_on, ground_h, q, R, p, W, al, bl):
    """Early-exit collision test of the whole chain at one configuration."""
    n = dh.shape[0]
    _fk_fill(dh, q, n, R, p)
    _world_capsules(R, p, caps, n, W)
    for k in range(n):
        if _link_hit(W, radii, k, boxes, ground_on, ground_h, al, bl):
            return True
    return False


@njit(cache=True)
def edge_collides(dh, caps, radii, boxes, ground_on, ground_h, q0, q1, resolution, R, p, W, al, bl):
    """True iff any interpolated configuration on q0->q1 collides.

    Checks at spacing <= resolution including the far endpoint q1 (q0 is
    assumed already checked).
    """
    n = q0.shape[0]
    dist = 0.0
    for i in range(n):
        d = q1[i] - q0[i]
        dist += d * d
    dist = math.sqrt(dist)
    steps = int(dist / resolution) + 1
    qi = np.empty(n)
    for s in range(1, steps + 1):
        t = s / steps
        for i in range(n):
            qi[i] = q0[i] + t * (q1[i] - q0[i])
        if whole_robot_single(dh, caps, radii, boxes, ground_on, ground_h, qi, R, p, W, al, bl):
            return True
    return False
