"""Planar nearest-distance queries against polylines and point clouds.

Distances are computed in chunks so probe counts in the tens of
thousands against boundary samples in the thousands stay inside a
modest memory budget.
"""

from __future__ import annotations

import numpy as np


def segment_distances(points, seg_a, seg_b, chunk: int = 256) -> np.ndarray:
    """Min distance from each point to a family of segments.

    points, seg_a, seg_b are complex arrays; the result has the shape of
    points.  Degenerate segments (coincident endpoints) act as points.
    """
    p = np.asarray(points, dtype=complex).ravel()
    a = np.asarray(seg_a, dtype=complex).ravel()
    b = np.asarray(seg_b, dtype=complex).ravel()
    if a.size == 0:
        return np.full(p.shape, np.inf)
    d = b - a
    den = np.abs(d) ** 2
    den = np.where(den > 0.0, den, 1.0)
    out = np.empty(p.shape, dtype=float)
    for k in range(0, p.size, chunk):
        blk = p[k : k + chunk, None]
        t = np.real((blk - a[None, :]) * np.conjugate(d)[None, :]) / den[None, :]
        t = np.clip(t, 0.0, 1.0)
        nearest = a[None, :] + t * d[None, :]
        out[k : k + chunk] = np.min(np.abs(blk - nearest), axis=1)
    return out.reshape(np.shape(points))


def cloud_distances(points, cloud, chunk: int = 1024) -> np.ndarray:
    """Min distance from each point to a finite point cloud."""
    p = np.asarray(points, dtype=complex).ravel()
    c = np.asarray(cloud, dtype=complex).ravel()
    if c.size == 0:
        return np.full(p.shape, np.inf)
    out = np.empty(p.shape, dtype=float)
    for k in range(0, p.size, chunk):
        blk = p[k : k + chunk, None]
        out[k : k + chunk] = np.min(np.abs(blk - c[None, :]), axis=1)
    return out.reshape(np.shape(points))
