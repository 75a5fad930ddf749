"""Independent checks built from sampled polylines, not from the verifier's exact predicates."""

from __future__ import annotations

import numpy as np

from conveyor.belt import polyline


def _proper_crossings(pts: np.ndarray) -> int:
    """Count pairs of non-adjacent polyline edges that cross properly."""
    a = pts
    b = np.roll(pts, -1, axis=0)
    m = len(a)
    count = 0
    for i in range(m):
        d = b - a
        di = b[i] - a[i]

        def orient(p, q, r):
            return (q[..., 0] - p[..., 0]) * (r[..., 1] - p[..., 1]) - (q[..., 1] - p[..., 1]) * (r[..., 0] - p[..., 0])

        o1 = orient(a[i], b[i], a)
        o2 = orient(a[i], b[i], b)
        o3 = orient(a, b, a[i][None])
        o4 = orient(a, b, b[i][None])
        scale = 1e-9 * (1 + np.hypot(d[:, 0], d[:, 1]) * np.hypot(*di))
        hit = (o1 * o2 < -scale**2) & (o3 * o4 < -scale**2)
        idx = np.nonzero(hit)[0]
        idx = idx[(idx > i + 1) & ~((i == 0) & (idx == m - 1))]
        count += len(idx)
    return count


def sampled_report(curve, disks, step: float = 0.02, slack: float | None = None) -> dict:
    """What a dense sample of the curve says about simplicity, clearance and touches.

    Chords between arc samples cut into their disk by the sagitta r(1 - cos(step/2)),
    so the default slack is a little larger than that.
    """
    if slack is None:
        slack = step * step / 4
    pts = polyline(curve, disks, step)
    centers = np.array([d.center for d in disks])
    radii = np.array([d.radius for d in disks])
    # clearance of segment interiors, sampled
    nxt = np.roll(pts, -1, axis=0)
    ts = np.linspace(0, 1, 9)[:, None, None]
    dense = (pts[None] * (1 - ts) + nxt[None] * ts).reshape(-1, 2)
    dist = np.hypot(dense[:, None, 0] - centers[None, :, 0], dense[:, None, 1] - centers[None, :, 1])
    enter = dist < radii[None] - slack * np.maximum(1, radii[None])
    touched = set(curve.contact_disks())
    return {
        "crossings": _proper_crossings(pts),
        "enters": bool(enter.any()),
        "missed": {d.id for d in disks} - touched,
    }


def sampled_valid(curve, disks, **kw) -> bool:
    r = sampled_report(curve, disks, **kw)
    return r["crossings"] == 0 and not r["enters"] and not r["missed"]
