"""Scalar geometric primitives.

All functions work on float64 arrays of shape (3,) and are written in loop
style so the same source compiles under numba and runs as plain Python under
the numpy backend. Box queries take the box in its local frame (centered at
the origin) described by half-extents.
"""

import math

import numpy as np

from ._backend import jit_kernel

_TINY = 1e-12


@jit_kernel
def point_box_distance(p, half):
    """Euclidean distance from a point to a solid axis-aligned box at the origin."""
    s = 0.0
    for i in range(3):
        e = abs(p[i]) - half[i]
        if e > 0.0:
            s += e * e
    return math.sqrt(s)


@jit_kernel
def segment_segment_distance(p1, q1, p2, q2):
    """Distance between segments p1-q1 and p2-q2 (closest-point parametric clamp)."""
    d1x = q1[0] - p1[0]
    d1y = q1[1] - p1[1]
    d1z = q1[2] - p1[2]
    d2x = q2[0] - p2[0]
    d2y = q2[1] - p2[1]
    d2z = q2[2] - p2[2]
    rx = p1[0] - p2[0]
    ry = p1[1] - p2[1]
    rz = p1[2] - p2[2]
    a = d1x * d1x + d1y * d1y + d1z * d1z
    e = d2x * d2x + d2y * d2y + d2z * d2z
    f = d2x * rx + d2y * ry + d2z * rz

    if a <= _TINY and e <= _TINY:
        s = 0.0
        t = 0.0
    elif a <= _TINY:
        s = 0.0
        t = min(max(f / e, 0.0), 1.0)
    else:
        c = d1x * rx + d1y * ry + d1z * rz
        if e <= _TINY:
            t = 0.0
            s = min(max(-c / a, 0.0), 1.0)
        else:
            b = d1x * d2x + d1y * d2y + d1z * d2z
            denom = a * e - b * b
            if denom > _TINY:
                s = min(max((b * f - c * e) / denom, 0.0), 1.0)
            else:
                s = 0.0
            t = (b * s + f) / e
            if t < 0.0:
                t = 0.0
                s = min(max(-c / a, 0.0), 1.0)
            elif t > 1.0:
                t = 1.0
                s = min(max((b - c) / a, 0.0), 1.0)

    cx = p1[0] + d1x * s - (p2[0] + d2x * t)
    cy = p1[1] + d1y * s - (p2[1] + d2y * t)
    cz = p1[2] + d1z * s - (p2[2] + d2z * t)
    return math.sqrt(cx * cx + cy * cy + cz * cz)


@jit_kernel
def segment_intersects_box(a, b, half):
    """True iff segment a-b meets the solid box (slab clipping)."""
    tmin = 0.0
    tmax = 1.0
    for i in range(3):
        d = b[i] - a[i]
        if abs(d) < _TINY:
            if abs(a[i]) > half[i]:
                return False
        else:
            t1 = (-half[i] - a[i]) / d
            t2 = (half[i] - a[i]) / d
            if t1 > t2:
                t1, t2 = t2, t1
            if t1 > tmin:
                tmin = t1
            if t2 < tmax:
                tmax = t2
            if tmin > tmax:
                return False
    return True


@jit_kernel
def segment_box_distance_local(a, b, half):
    """Distance between segment a-b and a solid box at the origin.

    Zero iff they intersect; otherwise the minimum over the segment
    endpoints against the solid box and the segment against each of the 12
    box edges, which is exact for this primitive pair.
    """
    if segment_intersects_box(a, b, half):
        return 0.0
    best = point_box_distance(a, half)
    d = point_box_distance(b, half)
    if d < best:
        best = d
    e0 = np.empty(3)
    e1 = np.empty(3)
    for axis in range(3):
        u = (axis + 1) % 3
        v = (axis + 2) % 3
        for su in range(2):
            for sv in range(2):
                e0[axis] = -half[axis]
                e1[axis] = half[axis]
                cu = (2.0 * su - 1.0) * half[u]
                cv = (2.0 * sv - 1.0) * half[v]
                e0[u] = cu
                e1[u] = cu
                e0[v] = cv
                e1[v] = cv
                d = segment_segment_distance(a, b, e0, e1)
                if d < best:
                    best = d
    return best
