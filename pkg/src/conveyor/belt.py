"""Belt certificates, their realization as curves, and the verifier."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

import numpy as np

from . import _kernels
from .errors import AmbiguousDegenerate, CollinearCenters
from .geom import (
    DEFAULT_TOL,
    EPS_ANG,
    ENDPOINT,
    INTERIOR,
    TWO_PI,
    Arc,
    Disk,
    Point,
    TangentSegment,
    Tolerance,
    arc_arc_intersect,
    arc_endpoints,
    configuration_index,
    directed_bitangent,
    disks_arrays,
    point_segment_distance,
    segment_arc_intersect,
    segment_segment_intersect,
)

PLUS, MINUS = "plus", "minus"
ONE_TOUCH, MULTI_TOUCH = "one_touch", "multi_touch"

Piece = Union[Arc, TangentSegment]


@dataclass(frozen=True, order=True)
class Contact:
    disk: int
    orientation: str = PLUS

    def __post_init__(self):
        if self.orientation not in (PLUS, MINUS):
            raise ValueError(f"orientation must be 'plus' or 'minus', got {self.orientation!r}")

    @property
    def sign(self) -> int:
        return 1 if self.orientation == PLUS else -1

    @classmethod
    def signed(cls, disk: int, sign: int) -> "Contact":
        return cls(int(disk), PLUS if sign > 0 else MINUS)

    def flipped(self) -> "Contact":
        return Contact(self.disk, MINUS if self.orientation == PLUS else PLUS)

    def key(self) -> tuple[int, int]:
        return (self.disk, 0 if self.orientation == PLUS else 1)


@dataclass(frozen=True)
class BeltSpec:
    contacts: tuple[Contact, ...]
    mode: str = ONE_TOUCH

    def __post_init__(self):
        object.__setattr__(self, "contacts", tuple(self.contacts))
        if self.mode not in (ONE_TOUCH, MULTI_TOUCH):
            raise ValueError(f"unknown mode {self.mode!r}")
        if len(self.contacts) < 2:
            raise ValueError("a belt spec needs at least two contacts")
        ids = [c.disk for c in self.contacts]
        if self.mode == ONE_TOUCH and len(set(ids)) != len(ids):
            raise ValueError("one-touch spec repeats a disk")
        for a, b in zip(ids, ids[1:] + ids[:1]):
            if a == b:
                raise ValueError(f"consecutive contacts on the same disk {a}")

    @classmethod
    def from_signs(cls, items: Iterable[tuple[int, int]], mode: str = ONE_TOUCH) -> "BeltSpec":
        return cls(tuple(Contact.signed(d, s) for d, s in items), mode)

    @property
    def disks(self) -> list[int]:
        return [c.disk for c in self.contacts]

    def key(self) -> tuple:
        return tuple(c.key() for c in self.contacts)


@dataclass(frozen=True)
class BeltCurve:
    pieces: tuple[Piece, ...]

    def __post_init__(self):
        object.__setattr__(self, "pieces", tuple(self.pieces))

    @property
    def arcs(self) -> list[Arc]:
        return [p for p in self.pieces if isinstance(p, Arc)]

    @property
    def segments(self) -> list[TangentSegment]:
        return [p for p in self.pieces if isinstance(p, TangentSegment)]

    def contact_disks(self) -> list[int]:
        return [p.disk for p in self.pieces if isinstance(p, Arc)]


FAILURE_CODES = (
    "NOT_SIMPLE", "NOT_C1", "INTERIOR_HIT", "MISSED_DISK",
    "MULTI_TOUCH_IN_ONE_TOUCH_MODE", "BLOCKED_BITANGENT", "BROKEN_CHAIN",
)


@dataclass(frozen=True, order=True)
class Failure:
    location: tuple[int, ...]
    code: str
    detail: str = field(compare=False, default="")


@dataclass(frozen=True)
class VerificationReport:
    valid: bool
    failures: tuple[Failure, ...] = ()

    def codes(self) -> set[str]:
        return {f.code for f in self.failures}

    def to_dict(self) -> dict:
        return {
            "valid": self.valid,
            "failures": [{"code": f.code, "detail": f.detail, "location": list(f.location)}
                         for f in self.failures],
        }


# ---------------------------------------------------------------------------
# realization
# ---------------------------------------------------------------------------


def _arc_between(disk: Disk, sign: int, p_in: Point, p_out: Point,
                 dir_in: tuple[float, float], dir_out: tuple[float, float], eps: float) -> Arc:
    direction = "ccw" if sign > 0 else "cw"
    a_in, a_out = disk.angle_of(p_in), disk.angle_of(p_out)
    if math.hypot(p_in[0] - p_out[0], p_in[1] - p_out[1]) <= eps:
        if dir_in[0] * dir_out[0] + dir_in[1] * dir_out[1] < 0:
            raise AmbiguousDegenerate(
                f"disk {disk.id}: belt enters and leaves at the same point in opposite directions")
        return Arc(disk.id, a_in, a_in, direction)
    return Arc(disk.id, a_in, a_out, direction)


def realize(spec: BeltSpec, disks: Sequence[Disk], tol: Tolerance = DEFAULT_TOL) -> BeltCurve:
    """Local, deterministic geometric realization of a contact sequence."""
    index = configuration_index(disks)
    cs = spec.contacts
    m = len(cs)
    segs = []
    for i in range(m):
        a, b = cs[i], cs[(i + 1) % m]
        segs.append(directed_bitangent(index[a.disk], a.sign, index[b.disk], b.sign))
    pieces: list[Piece] = []
    for i in range(m):
        seg_in, seg_out = segs[i - 1], segs[i]
        c = cs[i]
        pieces.append(_arc_between(index[c.disk], c.sign, seg_in.p2, seg_out.p1,
                                   seg_in.direction, seg_out.direction, tol.eps))
        pieces.append(seg_out)
    return BeltCurve(tuple(pieces))


def full_circle(disk: Disk, sign: int = 1) -> BeltCurve:
    """The trivial belt around a single disk."""
    return BeltCurve((Arc(disk.id, 0.0, 0.0, "ccw" if sign > 0 else "cw", full=True),))


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------


def _piece_ends(piece: Piece, index: dict[int, Disk]) -> tuple[Point, Point]:
    if isinstance(piece, TangentSegment):
        return piece.p1, piece.p2
    return arc_endpoints(piece, index[piece.disk])


def _piece_dir(piece: Piece, at_start: bool) -> tuple[float, float]:
    if isinstance(piece, TangentSegment):
        return piece.direction
    return piece.tangent_at(piece.start_angle if at_start else piece.end_angle)


def _angle_between(u, v) -> float:
    cr = u[0] * v[1] - u[1] * v[0]
    dt = u[0] * v[0] + u[1] * v[1]
    return abs(math.atan2(cr, dt))


def _is_point_arc(p: Piece, eps: float) -> bool:
    return isinstance(p, Arc) and not p.full and p.sweep <= EPS_ANG


def _arc_inside_disk(arc: Arc, d: Disk, e: Disk, eps: float) -> bool:
    """Does the arc (on ``d``) pass through the open interior of ``e``?"""
    dist = math.hypot(e.center.x - d.center.x, e.center.y - d.center.y)
    if dist >= d.radius + e.radius - eps or dist == 0:
        return False
    if dist + d.radius <= e.radius:
        return True
    cosw = (d.radius ** 2 + dist ** 2 - e.radius ** 2) / (2 * d.radius * dist)
    if cosw <= -1:
        return True
    w = math.acos(min(1.0, cosw))
    mid = math.atan2(e.center.y - d.center.y, e.center.x - d.center.x)
    lo, width = arc.ccw_interval
    off = (mid - w - lo) % TWO_PI
    return off < width or off > TWO_PI - 2 * w


def verify(curve: BeltCurve, disks: Sequence[Disk], mode: str = MULTI_TOUCH,
           tol: Tolerance = DEFAULT_TOL, require: Iterable[int] | None = None) -> VerificationReport:
    """Run every check and report all failures (never raises on invalid curves).

    ``require`` restricts the coverage check to those disk ids; every disk still
    counts as an obstacle.
    """
    eps = tol.eps
    index = configuration_index(disks)
    pieces = list(curve.pieces)
    m = len(pieces)
    fails: list[Failure] = []

    if m == 0:
        return VerificationReport(False, (Failure((), "BROKEN_CHAIN", "empty curve"),))
    unknown = []
    for k, p in enumerate(pieces):
        refs = (p.disk,) if isinstance(p, Arc) else (p.from_disk, p.to_disk)
        if any(r not in index for r in refs):
            unknown.append(Failure((k,), "BROKEN_CHAIN", "piece references unknown disk"))
    if unknown:
        return VerificationReport(False, tuple(unknown))

    single_full = m == 1 and isinstance(pieces[0], Arc) and pieces[0].full
    ends = [_piece_ends(p, index) for p in pieces]

    # (1) chain continuity and (2) C1 at every junction
    if not single_full:
        for k in range(m):
            nk = (k + 1) % m
            e, s = ends[k][1], ends[nk][0]
            gap = math.hypot(e[0] - s[0], e[1] - s[1])
            if gap > eps * 10:
                fails.append(Failure((k, nk), "BROKEN_CHAIN", f"gap {gap:.3g} between pieces"))
                continue
            ang = _angle_between(_piece_dir(pieces[k], False), _piece_dir(pieces[nk], True))
            if ang > EPS_ANG:
                fails.append(Failure((k, nk), "NOT_C1", f"direction jump {ang:.3g} rad"))

    # (3) simplicity
    eff = [k for k in range(m) if not _is_point_arc(pieces[k], eps)]
    pos = {k: i for i, k in enumerate(eff)}
    ne = len(eff)

    def adjacent(a: int, b: int) -> bool:
        if ne <= 2:
            return True
        ia, ib = pos[a], pos[b]
        return (ia - ib) % ne in (1, ne - 1)

    seg_ids = [k for k in eff if isinstance(pieces[k], TangentSegment)]
    arc_ids = [k for k in eff if isinstance(pieces[k], Arc)]
    if len(seg_ids) >= 2:
        p1 = np.array([pieces[k].p1 for k in seg_ids], dtype=np.float64)
        p2 = np.array([pieces[k].p2 for k in seg_ids], dtype=np.float64)
        for i, j in _kernels.segment_pairs(p1, p2, eps):
            a, b = seg_ids[int(i)], seg_ids[int(j)]
            sa, sb = pieces[a], pieces[b]
            kind = segment_segment_intersect(sa.p1, sa.p2, sb.p1, sb.p2, eps)
            if kind == INTERIOR or not adjacent(a, b):
                fails.append(Failure((a, b), "NOT_SIMPLE", "segments intersect"))
    if seg_ids and arc_ids:
        sp1 = np.array([pieces[k].p1 for k in seg_ids], dtype=np.float64)
        sp2 = np.array([pieces[k].p2 for k in seg_ids], dtype=np.float64)
        cen = np.array([index[pieces[k].disk].center for k in arc_ids], dtype=np.float64)
        rad = np.array([index[pieces[k].disk].radius for k in arc_ids], dtype=np.float64)
        dist = _kernels._point_segment_dist_np(
            cen[None, :, 0], cen[None, :, 1],
            sp1[:, 0, None], sp1[:, 1, None], sp2[:, 0, None], sp2[:, 1, None])
        for i, j in np.argwhere(dist <= rad[None, :] + eps):
            a, b = seg_ids[int(i)], arc_ids[int(j)]
            seg, arc = pieces[a], pieces[b]
            kind = segment_arc_intersect(seg.p1, seg.p2, arc, index[arc.disk], eps)
            if kind == INTERIOR or (kind == ENDPOINT and not adjacent(a, b)):
                lo, hi = min(a, b), max(a, b)
                fails.append(Failure((lo, hi), "NOT_SIMPLE", "segment meets arc"))
    if len(arc_ids) >= 2:
        by_disk: dict[int, list[int]] = {}
        for k in arc_ids:
            by_disk.setdefault(pieces[k].disk, []).append(k)
        for ks in by_disk.values():
            for x in range(len(ks)):
                for y in range(x + 1, len(ks)):
                    a, b = ks[x], ks[y]
                    d = index[pieces[a].disk]
                    kind = arc_arc_intersect(pieces[a], d, pieces[b], d, eps)
                    if kind == INTERIOR or (kind == ENDPOINT and not adjacent(a, b)):
                        fails.append(Failure((a, b), "NOT_SIMPLE", "arcs overlap on one disk"))
        # arcs on distinct circles can only meet when the circles touch or cross
        centers, radii = disks_arrays(list(index.values()))
        ids = list(index.keys())
        touching = []
        if len(ids) > 1:
            dd = np.hypot(centers[:, None, 0] - centers[None, :, 0], centers[:, None, 1] - centers[None, :, 1])
            touching = [(ids[i], ids[j]) for i, j in np.argwhere(np.triu(dd <= radii[:, None] + radii[None, :] + eps, 1))]
        for u, v in touching:
            for a in by_disk.get(u, []):
                for b in by_disk.get(v, []):
                    kind = arc_arc_intersect(pieces[a], index[u], pieces[b], index[v], eps)
                    if kind == INTERIOR or (kind == ENDPOINT and not adjacent(a, b)):
                        fails.append(Failure((min(a, b), max(a, b)), "NOT_SIMPLE", "arcs on touching disks meet"))

    # (4) interior disjointness
    all_disks = list(index.values())
    segs = [(k, p) for k, p in enumerate(pieces) if isinstance(p, TangentSegment)]
    if segs:
        centers, radii = disks_arrays(all_disks)
        p1 = np.array([p.p1 for _, p in segs], dtype=np.float64)
        p2 = np.array([p.p2 for _, p in segs], dtype=np.float64)
        hits = _kernels.first_hit(p1, p2, centers, radii, eps)
        for (k, seg), h in zip(segs, hits):
            if h < 0:
                continue
            offenders = [d.id for d in all_disks
                         if point_segment_distance(d.center, seg.p1, seg.p2) < d.radius - eps]
            own = [i for i in offenders if i in (seg.from_disk, seg.to_disk)]
            other = [i for i in offenders if i not in (seg.from_disk, seg.to_disk)]
            if other:
                fails.append(Failure((k,), "BLOCKED_BITANGENT", f"segment enters disks {other}"))
            if own:
                fails.append(Failure((k,), "INTERIOR_HIT", f"segment enters its own disks {own}"))
    centers, radii = disks_arrays(all_disks)
    for k, p in enumerate(pieces):
        if isinstance(p, Arc):
            d = index[p.disk]
            # only disks overlapping the arc's circle can be entered
            near = np.hypot(centers[:, 0] - d.center.x, centers[:, 1] - d.center.y) < d.radius + radii - eps
            for j in np.nonzero(near)[0]:
                e = all_disks[j]
                if e.id != d.id and _arc_inside_disk(p, d, e, eps):
                    fails.append(Failure((k,), "INTERIOR_HIT", f"arc on {d.id} enters disk {e.id}"))

    # (5) coverage
    touches = {i: 0 for i in index}
    arc_pos = [k for k, p in enumerate(pieces) if isinstance(p, Arc)]
    if single_full:
        touches[pieces[0].disk] = 1
    else:
        for t, k in enumerate(arc_pos):
            prev = arc_pos[t - 1]
            d = pieces[k].disk
            joined = False
            if len(arc_pos) > 1 and pieces[prev].disk == d:
                between = [pieces[q % m] for q in range(prev + 1, k if k > prev else k + m)]
                joined = all(isinstance(q, TangentSegment) and q.length() <= eps for q in between)
            if not joined:
                touches[d] += 1
        if arc_pos and all(pieces[k].disk == pieces[arc_pos[0]].disk for k in arc_pos):
            touches[pieces[arc_pos[0]].disk] = max(1, touches[pieces[arc_pos[0]].disk])
    needed = None if require is None else set(require)
    for i, t in sorted(touches.items()):
        if t == 0 and needed is not None and i not in needed:
            continue
        if t == 0:
            fails.append(Failure((), "MISSED_DISK", f"disk {i} never touched"))
        elif mode == ONE_TOUCH and t > 1:
            fails.append(Failure((), "MULTI_TOUCH_IN_ONE_TOUCH_MODE", f"disk {i} touched {t} times"))

    fails = sorted(set(fails))
    return VerificationReport(not fails, tuple(fails))


def check_spec(spec: BeltSpec, disks: Sequence[Disk], mode: str | None = None,
               tol: Tolerance = DEFAULT_TOL, require: Iterable[int] | None = None) -> VerificationReport:
    """Realize and verify in one step; realization errors become a failed report."""
    try:
        curve = realize(spec, disks, tol)
    except Exception as exc:  # realization is local: any geometric error means no belt
        return VerificationReport(False, (Failure((), "BROKEN_CHAIN", f"realization failed: {exc}"),))
    return verify(curve, disks, mode or spec.mode, tol, require)


# ---------------------------------------------------------------------------
# specs from simple constructions
# ---------------------------------------------------------------------------


def _check_general_position(pts: np.ndarray, eps: float) -> None:
    n = len(pts)
    for i in range(n):
        for j in range(i + 1, n):
            d = pts[j] - pts[i]
            L = math.hypot(d[0], d[1])
            rest = pts[j + 1:]
            if len(rest) == 0:
                continue
            cr = d[0] * (rest[:, 1] - pts[i, 1]) - d[1] * (rest[:, 0] - pts[i, 0])
            bad = np.nonzero(np.abs(cr) <= eps * max(L, 1.0))[0]
            if len(bad):
                k = j + 1 + int(bad[0])
                raise CollinearCenters(f"centers {i}, {j}, {k} are collinear")


def polygonalization_belt(disks: Sequence[Disk], tol: Tolerance = DEFAULT_TOL) -> BeltSpec:
    """One-touch spec from a radially sorted simple polygon through the centers."""
    if len(disks) < 2:
        raise ValueError("need at least two disks")
    pts = np.array([d.center for d in disks], dtype=np.float64)
    _check_general_position(pts, tol.eps)
    pivot = min(range(len(disks)), key=lambda i: (pts[i, 1], pts[i, 0]))
    px, py = pts[pivot]
    others = [i for i in range(len(disks)) if i != pivot]
    others.sort(key=lambda i: (math.atan2(pts[i, 1] - py, pts[i, 0] - px),
                               math.hypot(pts[i, 0] - px, pts[i, 1] - py)))
    order = [pivot] + others
    n = len(order)
    contacts = []
    for t, i in enumerate(order):
        a, b = pts[order[t - 1]], pts[order[(t + 1) % n]]
        c = pts[i]
        turn = (c[0] - a[0]) * (b[1] - c[1]) - (c[1] - a[1]) * (b[0] - c[0])
        contacts.append(Contact.signed(disks[i].id, 1 if turn > 0 or n == 2 else -1))
    return BeltSpec(tuple(contacts), ONE_TOUCH)


def canonicalize(spec: BeltSpec) -> BeltSpec:
    """Least representative under rotation and reversal-with-flip."""
    cs = list(spec.contacts)
    rev = [c.flipped() for c in reversed(cs)]
    best = None
    for seq in (cs, rev):
        for r in range(len(seq)):
            cand = seq[r:] + seq[:r]
            key = tuple(c.key() for c in cand)
            if best is None or key < best[0]:
                best = (key, cand)
    return BeltSpec(tuple(best[1]), spec.mode)


def contact_x_sequence(spec: BeltSpec, disks: Sequence[Disk]) -> list[float]:
    index = configuration_index(disks)
    return [index[c.disk].center.x for c in spec.contacts]


def is_bitonic(values: Sequence[float]) -> bool:
    """Cyclic sequence with exactly one local max and one local min (strict steps)."""
    n = len(values)
    if n <= 2:
        return True
    steps = []
    for i in range(n):
        d = values[(i + 1) % n] - values[i]
        if d == 0:
            return False
        steps.append(d > 0)
    changes = sum(1 for i in range(n) if steps[i] != steps[i - 1])
    return changes == 2


def polyline(curve: BeltCurve, disks: Sequence[Disk], max_step: float = 0.05) -> np.ndarray:
    """Closed polyline through the curve, arcs sampled every ``max_step`` radians at most."""
    index = configuration_index(disks)
    pts: list = []
    for piece in curve.pieces:
        if isinstance(piece, TangentSegment):
            pts.append(piece.p1)
            continue
        d = index[piece.disk]
        sweep = piece.sweep
        k = max(1, int(math.ceil(sweep / max_step)))
        step = sweep / k * (1 if piece.direction == "ccw" else -1)
        for t in range(k + 1):
            pts.append(d.point_at(piece.start_angle + t * step))
    return np.array(pts, dtype=float)
