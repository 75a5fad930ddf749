"""Disks, bitangents, arcs and the tolerance-based predicates built on them.

Sign convention used throughout the package: a contact with sign ``+1``
(``plus``) keeps its disk on the *left* of the direction of travel, so the
belt sweeps the disk counterclockwise; ``-1`` (``minus``) keeps it on the
right and sweeps clockwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from . import _kernels
from .errors import Containment, OverlappingDisks

TWO_PI = 2.0 * math.pi
DEFAULT_EPS = 1e-9
EPS_ANG = 1e-7


class Point(NamedTuple):
    x: float
    y: float

    def __add__(self, other):  # type: ignore[override]
        return Point(self.x + other[0], self.y + other[1])

    def __sub__(self, other):
        return Point(self.x - other[0], self.y - other[1])

    def scale(self, k: float) -> "Point":
        return Point(self.x * k, self.y * k)

    def norm(self) -> float:
        return math.hypot(self.x, self.y)


@dataclass(frozen=True)
class Disk:
    id: int
    center: Point
    radius: float

    def __post_init__(self):
        if not (self.radius > 0 and math.isfinite(self.radius)):
            raise ValueError(f"disk {self.id}: radius must be positive, got {self.radius}")
        if not (math.isfinite(self.center[0]) and math.isfinite(self.center[1])):
            raise ValueError(f"disk {self.id}: non-finite center {self.center}")
        if not isinstance(self.center, Point):
            object.__setattr__(self, "center", Point(float(self.center[0]), float(self.center[1])))

    @classmethod
    def at(cls, id: int, x: float, y: float, r: float) -> "Disk":
        return cls(int(id), Point(float(x), float(y)), float(r))

    @property
    def x(self) -> float:
        return self.center.x

    @property
    def y(self) -> float:
        return self.center.y

    def point_at(self, angle: float) -> Point:
        return Point(self.center.x + self.radius * math.cos(angle),
                     self.center.y + self.radius * math.sin(angle))

    def angle_of(self, p: Sequence[float]) -> float:
        return normalize_angle(math.atan2(p[1] - self.center.y, p[0] - self.center.x))

    def scaled(self, factor: float) -> "Disk":
        """Same center, radius multiplied by ``factor``."""
        return Disk(self.id, self.center, self.radius * factor)


@dataclass(frozen=True)
class Tolerance:
    eps: float = DEFAULT_EPS

    def __post_init__(self):
        if not (0 < self.eps < 1e-3):
            raise ValueError(f"eps must lie in (0, 1e-3), got {self.eps}")


DEFAULT_TOL = Tolerance()

# (sign on from_disk, sign on to_disk) -> kind, in the from->to frame
KIND_FOR_SIGNS = {(1, 1): "lower", (-1, -1): "upper", (1, -1): "inner_a", (-1, 1): "inner_b"}
SIGNS_FOR_KIND = {v: k for k, v in KIND_FOR_SIGNS.items()}
KINDS = ("upper", "lower", "inner_a", "inner_b")


@dataclass(frozen=True)
class TangentSegment:
    from_disk: int
    to_disk: int
    p1: Point
    p2: Point
    kind: str

    @property
    def signs(self) -> tuple[int, int]:
        return SIGNS_FOR_KIND[self.kind]

    @property
    def direction(self) -> tuple[float, float]:
        dx, dy = self.p2[0] - self.p1[0], self.p2[1] - self.p1[1]
        n = math.hypot(dx, dy)
        return (dx / n, dy / n) if n > 0 else (0.0, 0.0)

    def length(self) -> float:
        return math.hypot(self.p2[0] - self.p1[0], self.p2[1] - self.p1[1])

    def reversed(self) -> "TangentSegment":
        s1, s2 = self.signs
        return TangentSegment(self.to_disk, self.from_disk, self.p2, self.p1,
                              KIND_FOR_SIGNS[(-s2, -s1)])


@dataclass(frozen=True)
class Arc:
    disk: int
    start_angle: float
    end_angle: float
    direction: str  # "ccw" or "cw"
    full: bool = False

    @property
    def sweep(self) -> float:
        if self.full:
            return TWO_PI
        if self.direction == "ccw":
            return (self.end_angle - self.start_angle) % TWO_PI
        return (self.start_angle - self.end_angle) % TWO_PI

    @property
    def ccw_interval(self) -> tuple[float, float]:
        """(lo, width): the arc as a ccw interval starting at ``lo``."""
        if self.direction == "ccw":
            return self.start_angle, self.sweep
        return self.end_angle, self.sweep

    def contains_angle(self, theta: float, tol: float = EPS_ANG) -> bool:
        lo, w = self.ccw_interval
        off = (theta - lo) % TWO_PI
        return off <= w + tol or off >= TWO_PI - tol

    def tangent_at(self, theta: float) -> tuple[float, float]:
        """Unit direction of travel along the arc at angle ``theta``."""
        if self.direction == "ccw":
            return (-math.sin(theta), math.cos(theta))
        return (math.sin(theta), -math.cos(theta))


def normalize_angle(a: float) -> float:
    a = math.fmod(a, TWO_PI)
    if a < 0:
        a += TWO_PI
    if a >= TWO_PI:
        a -= TWO_PI
    return a


def center_distance(d1: Disk, d2: Disk) -> float:
    return math.hypot(d2.center.x - d1.center.x, d2.center.y - d1.center.y)


def check_disjoint(d1: Disk, d2: Disk, eps: float = DEFAULT_EPS) -> None:
    d = center_distance(d1, d2)
    if d + min(d1.radius, d2.radius) <= max(d1.radius, d2.radius) + eps:
        raise Containment(f"disk {d1.id} and disk {d2.id}: one contains the other")
    if d <= d1.radius + d2.radius + eps:
        raise OverlappingDisks(f"disks {d1.id} and {d2.id} are not disjoint (gap {d - d1.radius - d2.radius:.3g})")


def directed_bitangent(d1: Disk, s1: int, d2: Disk, s2: int) -> TangentSegment:
    """The bitangent travelled from ``d1`` to ``d2`` with the given contact signs.

    Writing ``R`` for the unit normal to the right of the travel direction,
    the tangency points are ``c1 + s1*r1*R`` and ``c2 + s2*r2*R``.  There is
    exactly one such segment pointing from ``d1`` towards ``d2``.
    """
    dx, dy = d2.center.x - d1.center.x, d2.center.y - d1.center.y
    d = math.hypot(dx, dy)
    if d == 0:
        raise Containment(f"disks {d1.id} and {d2.id} are concentric")
    ux, uy = dx / d, dy / d
    c = (s1 * d1.radius - s2 * d2.radius) / d
    if abs(c) > 1.0:
        if s1 == s2:
            raise Containment(f"disk {d1.id} and disk {d2.id}: nested, no outer bitangent")
        raise OverlappingDisks(f"disks {d1.id} and {d2.id} overlap, no inner bitangent")
    s = -math.sqrt(max(0.0, 1.0 - c * c))
    # R = c*u + s*n with n = left normal of u
    rx = c * ux - s * uy
    ry = c * uy + s * ux
    p1 = Point(d1.center.x + s1 * d1.radius * rx, d1.center.y + s1 * d1.radius * ry)
    p2 = Point(d2.center.x + s2 * d2.radius * rx, d2.center.y + s2 * d2.radius * ry)
    return TangentSegment(d1.id, d2.id, p1, p2, KIND_FOR_SIGNS[(s1, s2)])


def bitangents(d1: Disk, d2: Disk, tol: Tolerance = DEFAULT_TOL) -> list[TangentSegment]:
    """The four bitangents from ``d1`` to ``d2`` in the order upper, lower, inner_a, inner_b.

    ``upper`` / ``lower`` are the outer bitangents left / right of the
    direction from ``d1``'s center to ``d2``'s center.
    """
    check_disjoint(d1, d2, tol.eps)
    out = []
    for kind in KINDS:
        s1, s2 = SIGNS_FOR_KIND[kind]
        out.append(directed_bitangent(d1, s1, d2, s2))
    return out


def point_segment_distance(p: Sequence[float], a: Sequence[float], b: Sequence[float]) -> float:
    dx, dy = b[0] - a[0], b[1] - a[1]
    ll = dx * dx + dy * dy
    t = 0.0 if ll == 0 else max(0.0, min(1.0, ((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / ll))
    return math.hypot(a[0] + t * dx - p[0], a[1] + t * dy - p[1])


def disks_arrays(disks: Sequence[Disk]) -> tuple[np.ndarray, np.ndarray]:
    centers = np.array([[d.center.x, d.center.y] for d in disks], dtype=np.float64).reshape(-1, 2)
    radii = np.array([d.radius for d in disks], dtype=np.float64)
    return centers, radii


def blocking_disks(segs: Sequence[TangentSegment], disks: Sequence[Disk],
                   tol: Tolerance = DEFAULT_TOL) -> list[int | None]:
    """For each segment, the id of a disk whose interior it enters, or ``None``."""
    if not segs:
        return []
    p1 = np.array([s.p1 for s in segs], dtype=np.float64)
    p2 = np.array([s.p2 for s in segs], dtype=np.float64)
    centers, radii = disks_arrays(disks)
    hits = _kernels.first_hit(p1, p2, centers, radii, tol.eps)
    return [None if h < 0 else disks[int(h)].id for h in hits]


def is_blocked(seg: TangentSegment, disks: Sequence[Disk], tol: Tolerance = DEFAULT_TOL) -> bool:
    for d in disks:
        if point_segment_distance(d.center, seg.p1, seg.p2) < d.radius - tol.eps:
            return True
    return False


def power_distance(p: Sequence[float], d: Disk) -> float:
    dx, dy = p[0] - d.center.x, p[1] - d.center.y
    return dx * dx + dy * dy - d.radius * d.radius


def _point_in_convex_polygon(p, poly) -> bool:
    sign = 0
    for i in range(len(poly)):
        a, b = poly[i], poly[(i + 1) % len(poly)]
        cr = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0])
        if abs(cr) < 1e-15:
            continue
        s = 1 if cr > 0 else -1
        if sign == 0:
            sign = s
        elif s != sign:
            return False
    return True


def distance_to_hull(p: Sequence[float], a: Disk, b: Disk) -> float:
    """Euclidean distance from ``p`` to the convex hull of disks ``a`` and ``b`` (0 inside)."""
    da = max(0.0, math.hypot(p[0] - a.center.x, p[1] - a.center.y) - a.radius)
    db = max(0.0, math.hypot(p[0] - b.center.x, p[1] - b.center.y) - b.radius)
    d = center_distance(a, b)
    if d + min(a.radius, b.radius) <= max(a.radius, b.radius):
        return min(da, db)
    up = directed_bitangent(a, -1, b, -1)
    lo = directed_bitangent(a, 1, b, 1)
    quad = [lo.p1, lo.p2, up.p2, up.p1]
    if _point_in_convex_polygon(p, quad):
        dq = 0.0
    else:
        dq = min(point_segment_distance(p, quad[i], quad[(i + 1) % 4]) for i in range(4))
    return min(da, db, dq)


def disjoint_from_hull(d: Disk, a: Disk, b: Disk, tol: Tolerance = DEFAULT_TOL) -> bool:
    return distance_to_hull(d.center, a, b) >= d.radius - tol.eps


# ---------------------------------------------------------------------------
# curve primitives
# ---------------------------------------------------------------------------

INTERIOR = "interior"
ENDPOINT = "endpoint"
DISJOINT = "disjoint"


def _close(p, q, eps) -> bool:
    return math.hypot(p[0] - q[0], p[1] - q[1]) <= eps


def segment_segment_intersect(a1, a2, b1, b2, eps: float = DEFAULT_EPS) -> str:
    """Classify two closed segments: proper/overlapping contact, shared-endpoint touch, or apart."""

    def orient(o, p, q):
        return (p[0] - o[0]) * (q[1] - o[1]) - (p[1] - o[1]) * (q[0] - o[0])

    o1, o2 = orient(a1, a2, b1), orient(a1, a2, b2)
    o3, o4 = orient(b1, b2, a1), orient(b1, b2, a2)
    proper = o1 * o2 < 0 and o3 * o4 < 0
    dist = min(point_segment_distance(b1, a1, a2), point_segment_distance(b2, a1, a2),
               point_segment_distance(a1, b1, b2), point_segment_distance(a2, b1, b2))
    if not proper and dist > eps:
        return DISJOINT
    for p in (a1, a2):
        for q in (b1, b2):
            if _close(p, q, eps):
                pa = a2 if p is a1 else a1
                qb = b2 if q is b1 else b1
                ux, uy = pa[0] - p[0], pa[1] - p[1]
                vx, vy = qb[0] - q[0], qb[1] - q[1]
                nu, nv = math.hypot(ux, uy), math.hypot(vx, vy)
                if nu <= eps or nv <= eps:
                    return ENDPOINT
                cosang = (ux * vx + uy * vy) / (nu * nv)
                # other endpoints must stay apart unless collinear overlap
                if cosang > 1 - 1e-12:
                    return INTERIOR
                far = min(point_segment_distance(pa, b1, b2), point_segment_distance(qb, a1, a2))
                return ENDPOINT if far > eps else INTERIOR
    return INTERIOR


def _segment_circle_points(a, b, c, r, eps):
    """Parameters t in [0,1] where segment a->b meets the circle (tangency counts once)."""
    dx, dy = b[0] - a[0], b[1] - a[1]
    fx, fy = a[0] - c[0], a[1] - c[1]
    A = dx * dx + dy * dy
    if A == 0:
        return []
    B = 2 * (fx * dx + fy * dy)
    C = fx * fx + fy * fy - r * r
    disc = B * B - 4 * A * C
    L = math.sqrt(A)
    # tangency band: closest approach within eps of the radius
    tmin = -B / (2 * A)
    closest = math.hypot(fx + tmin * dx, fy + tmin * dy)
    if abs(closest - r) <= eps:
        ts = [tmin]
    elif disc < 0:
        return []
    else:
        sq = math.sqrt(disc)
        ts = [(-B - sq) / (2 * A), (-B + sq) / (2 * A)]
    tt = eps / L
    return [min(1.0, max(0.0, t)) for t in ts if -tt <= t <= 1 + tt]


def segment_arc_intersect(a1, a2, arc: Arc, disk: Disk, eps: float = DEFAULT_EPS) -> str:
    """Classify segment/arc contact; a touch at a point that is an endpoint of both is ``endpoint``."""
    ends = arc_endpoints(arc, disk)
    hits = []
    for t in _segment_circle_points(a1, a2, disk.center, disk.radius, eps):
        p = (a1[0] + t * (a2[0] - a1[0]), a1[1] + t * (a2[1] - a1[1]))
        if arc.contains_angle(disk.angle_of(p), tol=max(EPS_ANG, eps / disk.radius)):
            hits.append(p)
    if not hits:
        return DISJOINT
    for p in hits:
        on_seg_end = _close(p, a1, eps) or _close(p, a2, eps)
        on_arc_end = any(_close(p, e, eps) for e in ends)
        if not (on_seg_end and on_arc_end):
            return INTERIOR
    return ENDPOINT


def arc_endpoints(arc: Arc, disk: Disk) -> tuple[Point, Point]:
    return disk.point_at(arc.start_angle), disk.point_at(arc.end_angle)


def arc_arc_intersect(arc1: Arc, disk1: Disk, arc2: Arc, disk2: Disk, eps: float = DEFAULT_EPS) -> str:
    same_circle = (math.hypot(disk1.center.x - disk2.center.x, disk1.center.y - disk2.center.y) <= eps
                   and abs(disk1.radius - disk2.radius) <= eps)
    if same_circle:
        lo1, w1 = arc1.ccw_interval
        lo2, w2 = arc2.ccw_interval
        tol = max(EPS_ANG, eps / disk1.radius)
        if w1 >= TWO_PI - tol or w2 >= TWO_PI - tol:
            return INTERIOR
        # overlap length of two circular intervals
        best = -1.0
        for base, wa, other, wb in ((lo1, w1, lo2, w2), (lo2, w2, lo1, w1)):
            off = (other - base) % TWO_PI
            if off <= wa + tol:
                best = max(best, min(wa - off, wb))
        if best < -0.5:
            return DISJOINT
        return INTERIOR if best > tol else ENDPOINT
    # distinct circles
    d = center_distance(disk1, disk2)
    r1, r2 = disk1.radius, disk2.radius
    if d > r1 + r2 + eps or d < abs(r1 - r2) - eps or d == 0:
        return DISJOINT
    a = (d * d + r1 * r1 - r2 * r2) / (2 * d)
    h = math.sqrt(max(0.0, r1 * r1 - a * a))
    ux, uy = (disk2.center.x - disk1.center.x) / d, (disk2.center.y - disk1.center.y) / d
    mx, my = disk1.center.x + a * ux, disk1.center.y + a * uy
    pts = [(mx - h * uy, my + h * ux), (mx + h * uy, my - h * ux)]
    ends = arc_endpoints(arc1, disk1) + arc_endpoints(arc2, disk2)
    result = DISJOINT
    for p in pts:
        if arc1.contains_angle(disk1.angle_of(p)) and arc2.contains_angle(disk2.angle_of(p)):
            if any(_close(p, e, eps) for e in ends):
                result = ENDPOINT
            else:
                return INTERIOR
    return result


def segment_circle_interior_intersect(a1, a2, disk: Disk, eps: float = DEFAULT_EPS) -> bool:
    """True iff the segment enters the open disk deeper than ``eps``."""
    return point_segment_distance(disk.center, a1, a2) < disk.radius - eps


def configuration_index(disks: Iterable[Disk]) -> dict[int, Disk]:
    index: dict[int, Disk] = {}
    for d in disks:
        if d.id in index:
            raise ValueError(f"duplicate disk id {d.id}")
        index[d.id] = d
    return index
