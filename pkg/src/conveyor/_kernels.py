"""Hot numeric loops.

Every kernel has two implementations with identical signatures: a numba
``@njit`` loop version and a vectorized numpy version.  The numba path is
used when numba imports cleanly and ``CONVEYOR_DISABLE_NUMBA`` is unset (or
``0``).  Set ``CONVEYOR_DISABLE_NUMBA=1`` to force the numpy fallback.
"""

from __future__ import annotations

import os

import numpy as np

_DISABLED = os.environ.get("CONVEYOR_DISABLE_NUMBA", "0").lower() not in ("", "0", "false", "no")

try:  # pragma: no cover - import guard
    if _DISABLED:
        raise ImportError("disabled by CONVEYOR_DISABLE_NUMBA")
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn

        if len(args) == 1 and callable(args[0]):
            return args[0]
        return wrap


# ---------------------------------------------------------------------------
# numpy implementations
# ---------------------------------------------------------------------------


def _point_segment_dist_np(px, py, ax, ay, bx, by):
    dx = bx - ax
    dy = by - ay
    ll = dx * dx + dy * dy
    with np.errstate(invalid="ignore", divide="ignore"):
        t = ((px - ax) * dx + (py - ay) * dy) / np.where(ll > 0, ll, 1.0)
    t = np.clip(np.where(ll > 0, t, 0.0), 0.0, 1.0)
    qx = ax + t * dx - px
    qy = ay + t * dy - py
    return np.sqrt(qx * qx + qy * qy)


def first_hit_np(p1, p2, centers, radii, eps):
    """Index of the lowest-numbered disk whose interior meets each segment, else -1."""
    m = p1.shape[0]
    out = np.full(m, -1, dtype=np.int64)
    if m == 0 or centers.shape[0] == 0:
        return out
    d = _point_segment_dist_np(
        centers[None, :, 0], centers[None, :, 1],
        p1[:, 0, None], p1[:, 1, None], p2[:, 0, None], p2[:, 1, None],
    )
    hit = d < (radii[None, :] - eps)
    anyhit = hit.any(axis=1)
    out[anyhit] = np.argmax(hit[anyhit], axis=1)
    return out


def segment_pairs_np(p1, p2, eps):
    """All pairs (i, j), i < j, of closed segments within distance ``eps``."""
    m = p1.shape[0]
    if m < 2:
        return np.zeros((0, 2), dtype=np.int64)
    ax, ay = p1[:, 0, None], p1[:, 1, None]
    bx, by = p2[:, 0, None], p2[:, 1, None]
    cx, cy = p1[None, :, 0], p1[None, :, 1]
    dx, dy = p2[None, :, 0], p2[None, :, 1]

    def orient(ox, oy, px, py, qx, qy):
        return (px - ox) * (qy - oy) - (py - oy) * (qx - ox)

    o1 = orient(ax, ay, bx, by, cx, cy)
    o2 = orient(ax, ay, bx, by, dx, dy)
    o3 = orient(cx, cy, dx, dy, ax, ay)
    o4 = orient(cx, cy, dx, dy, bx, by)
    proper = (o1 * o2 < 0) & (o3 * o4 < 0)
    dist = np.minimum(
        np.minimum(_point_segment_dist_np(cx, cy, ax, ay, bx, by),
                   _point_segment_dist_np(dx, dy, ax, ay, bx, by)),
        np.minimum(_point_segment_dist_np(ax, ay, cx, cy, dx, dy),
                   _point_segment_dist_np(bx, by, cx, cy, dx, dy)),
    )
    close = proper | (dist <= eps)
    iu = np.triu(close, k=1)
    return np.argwhere(iu).astype(np.int64)


def _angle_sums_np(radii, faces, nverts):
    ri = radii[faces[:, 0]]
    rj = radii[faces[:, 1]]
    rk = radii[faces[:, 2]]

    def corner(a, b, c):
        # angle at the disk of radius a, tangent to disks b and c
        ab, ac, bc = a + b, a + c, b + c
        cosv = (ab * ab + ac * ac - bc * bc) / (2.0 * ab * ac)
        return np.arccos(np.clip(cosv, -1.0, 1.0))

    sums = np.zeros(nverts)
    np.add.at(sums, faces[:, 0], corner(ri, rj, rk))
    np.add.at(sums, faces[:, 1], corner(rj, rk, ri))
    np.add.at(sums, faces[:, 2], corner(rk, ri, rj))
    return sums


def relax_radii_np(radii, faces, degree, free, target, tol, max_iter, omega):
    """Uniform-neighbor angle-sum iteration; returns (radii, iterations, worst residual)."""
    r = radii.copy()
    n = r.shape[0]
    k = degree.astype(np.float64)
    delta = np.sin(np.pi / np.maximum(k, 1.0))
    worst = np.inf
    for it in range(max_iter):
        sums = _angle_sums_np(r, faces, n)
        resid = np.abs(sums - target)
        worst = resid[free].max() if free.any() else 0.0
        if worst <= tol:
            return r, it, worst
        beta = np.sin(np.clip(sums, 1e-300, None) / (2.0 * k))
        rhat = r * beta / (1.0 - beta)
        rnew = rhat * (1.0 - delta) / delta
        r = np.where(free, r + omega * (rnew - r), r)
    return r, max_iter, worst


# ---------------------------------------------------------------------------
# numba implementations
# ---------------------------------------------------------------------------


@njit(cache=True)
def _pseg(px, py, ax, ay, bx, by):
    dx = bx - ax
    dy = by - ay
    ll = dx * dx + dy * dy
    t = 0.0
    if ll > 0.0:
        t = ((px - ax) * dx + (py - ay) * dy) / ll
        if t < 0.0:
            t = 0.0
        elif t > 1.0:
            t = 1.0
    qx = ax + t * dx - px
    qy = ay + t * dy - py
    return np.sqrt(qx * qx + qy * qy)


@njit(cache=True)
def first_hit_nb(p1, p2, centers, radii, eps):
    m = p1.shape[0]
    n = centers.shape[0]
    out = np.full(m, -1, dtype=np.int64)
    for i in range(m):
        ax, ay, bx, by = p1[i, 0], p1[i, 1], p2[i, 0], p2[i, 1]
        for k in range(n):
            if _pseg(centers[k, 0], centers[k, 1], ax, ay, bx, by) < radii[k] - eps:
                out[i] = k
                break
    return out


@njit(cache=True)
def segment_pairs_nb(p1, p2, eps):
    m = p1.shape[0]
    buf = np.empty((max(m, 1) * 4, 2), dtype=np.int64)
    cnt = 0
    for i in range(m):
        ax, ay, bx, by = p1[i, 0], p1[i, 1], p2[i, 0], p2[i, 1]
        minx_i = min(ax, bx) - eps
        maxx_i = max(ax, bx) + eps
        miny_i = min(ay, by) - eps
        maxy_i = max(ay, by) + eps
        for j in range(i + 1, m):
            cx, cy, dx, dy = p1[j, 0], p1[j, 1], p2[j, 0], p2[j, 1]
            if max(cx, dx) < minx_i or min(cx, dx) > maxx_i:
                continue
            if max(cy, dy) < miny_i or min(cy, dy) > maxy_i:
                continue
            o1 = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
            o2 = (bx - ax) * (dy - ay) - (by - ay) * (dx - ax)
            o3 = (dx - cx) * (ay - cy) - (dy - cy) * (ax - cx)
            o4 = (dx - cx) * (by - cy) - (dy - cy) * (bx - cx)
            hit = o1 * o2 < 0.0 and o3 * o4 < 0.0
            if not hit:
                d = min(
                    min(_pseg(cx, cy, ax, ay, bx, by), _pseg(dx, dy, ax, ay, bx, by)),
                    min(_pseg(ax, ay, cx, cy, dx, dy), _pseg(bx, by, cx, cy, dx, dy)),
                )
                hit = d <= eps
            if hit:
                if cnt == buf.shape[0]:
                    nb = np.empty((buf.shape[0] * 2, 2), dtype=np.int64)
                    nb[:cnt] = buf[:cnt]
                    buf = nb
                buf[cnt, 0] = i
                buf[cnt, 1] = j
                cnt += 1
    return buf[:cnt].copy()


@njit(cache=True)
def _corner(a, b, c):
    ab = a + b
    ac = a + c
    bc = b + c
    cosv = (ab * ab + ac * ac - bc * bc) / (2.0 * ab * ac)
    if cosv > 1.0:
        cosv = 1.0
    elif cosv < -1.0:
        cosv = -1.0
    return np.arccos(cosv)


@njit(cache=True)
def relax_radii_nb(radii, faces, degree, free, target, tol, max_iter, omega):
    r = radii.copy()
    n = r.shape[0]
    sums = np.zeros(n)
    worst = np.inf
    for it in range(max_iter):
        sums[:] = 0.0
        for f in range(faces.shape[0]):
            i, j, k = faces[f, 0], faces[f, 1], faces[f, 2]
            sums[i] += _corner(r[i], r[j], r[k])
            sums[j] += _corner(r[j], r[k], r[i])
            sums[k] += _corner(r[k], r[i], r[j])
        worst = 0.0
        for v in range(n):
            if free[v]:
                e = abs(sums[v] - target[v])
                if e > worst:
                    worst = e
        if worst <= tol:
            return r, it, worst
        for v in range(n):
            if free[v]:
                kk = float(degree[v])
                beta = np.sin(sums[v] / (2.0 * kk))
                dl = np.sin(np.pi / kk)
                rhat = r[v] * beta / (1.0 - beta)
                rnew = rhat * (1.0 - dl) / dl
                r[v] = r[v] + omega * (rnew - r[v])
    return r, max_iter, worst


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------

if HAVE_NUMBA:
    first_hit = first_hit_nb
    segment_pairs = segment_pairs_nb
    relax_radii = relax_radii_nb
else:  # pragma: no cover
    first_hit = first_hit_np
    segment_pairs = segment_pairs_np
    relax_radii = relax_radii_np

BACKEND = "numba" if HAVE_NUMBA else "numpy"
