"""Belts for monotonically separated disk sequences.

The builder never calls the cubic separation predicate; it runs the
stack-based upper-hull scan, one angular sweep per gap between
consecutive non-hull disks, and a four-state chain DP that glues the
partial belts.  Everything after sorting is linear in the number of disks.
"""

from __future__ import annotations

import math
from functools import lru_cache
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .belt import (
    MULTI_TOUCH,
    ONE_TOUCH,
    BeltCurve,
    BeltSpec,
    Contact,
    check_spec,
    full_circle,
    realize,
)
from .errors import GeometryError, NotSeparated, NotUnitRadii
from .geom import (
    DEFAULT_TOL,
    INTERIOR,
    TWO_PI,
    Arc,
    Disk,
    Point,
    TangentSegment,
    Tolerance,
    directed_bitangent,
    disks_arrays,
    segment_segment_intersect,
)
from . import _kernels


def sort_by_x(disks: Sequence[Disk]) -> list[Disk]:
    return sorted(disks, key=lambda d: (d.center.x, d.center.y, d.id))


def _require_unit(disks: Sequence[Disk], tol: Tolerance) -> None:
    for d in disks:
        if abs(d.radius - 1.0) > tol.eps:
            raise NotUnitRadii(f"disk {d.id} has radius {d.radius}")


def is_xy_monotone(disks: Sequence[Disk], tol: Tolerance = DEFAULT_TOL) -> bool:
    """Unit disks whose x- and y-orders agree (strictly increasing or strictly decreasing y)."""
    _require_unit(disks, tol)
    ds = sort_by_x(disks)
    xs = [d.center.x for d in ds]
    ys = [d.center.y for d in ds]
    if any(b - a <= tol.eps for a, b in zip(xs, xs[1:])):
        return False
    up = all(b - a > tol.eps for a, b in zip(ys, ys[1:]))
    down = all(a - b > tol.eps for a, b in zip(ys, ys[1:]))
    return up or down


def is_x_separated(disks: Sequence[Disk], tol: Tolerance = DEFAULT_TOL) -> bool:
    _require_unit(disks, tol)
    xs = [d.center.x for d in sort_by_x(disks)]
    return all(b - a >= 2.0 - tol.eps for a, b in zip(xs, xs[1:]))


def _hull_distance_many(pts: np.ndarray, a: Disk, b: Disk) -> np.ndarray:
    """Vectorized distance from many points to the convex hull of two disks."""
    ca = np.array(a.center)
    cb = np.array(b.center)
    da = np.maximum(0.0, np.hypot(*(pts - ca).T) - a.radius)
    db = np.maximum(0.0, np.hypot(*(pts - cb).T) - b.radius)
    up = directed_bitangent(a, -1, b, -1)
    lo = directed_bitangent(a, 1, b, 1)
    quad = np.array([lo.p1, lo.p2, up.p2, up.p1])
    inside = np.ones(len(pts), dtype=bool)
    dq = np.full(len(pts), np.inf)
    for i in range(4):
        p, q = quad[i], quad[(i + 1) % 4]
        e = q - p
        cr = e[0] * (pts[:, 1] - p[1]) - e[1] * (pts[:, 0] - p[0])
        inside &= cr >= -1e-15
        dq = np.minimum(dq, _kernels._point_segment_dist_np(pts[:, 0], pts[:, 1], p[0], p[1], q[0], q[1]))
    dq[inside] = 0.0
    return np.minimum(np.minimum(da, db), dq)


def is_monotonically_separated(disks: Sequence[Disk], tol: Tolerance = DEFAULT_TOL) -> bool:
    """Every triple i<j<k: disk k avoids hull(i, j) and disk i avoids hull(j, k)."""
    ds = sort_by_x(disks)
    n = len(ds)
    xs = [d.center.x for d in ds]
    if any(b - a <= 0 for a, b in zip(xs, xs[1:])):
        return False
    if n < 3:
        return True
    centers, radii = disks_arrays(ds)
    for i in range(n):
        for j in range(i + 1, n):
            if j + 1 < n:
                dist = _hull_distance_many(centers[j + 1:], ds[i], ds[j])
                if np.any(dist < radii[j + 1:] - tol.eps):
                    return False
            if i > 0:
                dist = _hull_distance_many(centers[:i], ds[i], ds[j])
                if np.any(dist < radii[:i] - tol.eps):
                    return False
    return True


# ---------------------------------------------------------------------------
# upper hull of disks
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class UpperHullIndex:
    """Positions into the x-sorted sequence: upper hull disks strictly between L and R, and the rest."""

    hull: tuple[int, ...]
    rest: tuple[int, ...]
    chain: tuple[int, ...] = ()  # full stack L, U_1..U_m, R


def _contributes(a: Disk, b: Disk, c: Disk, eps: float) -> bool:
    """Does ``b`` reach the upper hull of the three disks?"""
    top = directed_bitangent(c, 1, a, 1)  # runs right to left over the top
    dx, dy = top.p2[0] - top.p1[0], top.p2[1] - top.p1[1]
    L = math.hypot(dx, dy)
    rx, ry = dy / L, -dx / L
    return (b.center.x - top.p1[0]) * rx + (b.center.y - top.p1[1]) * ry + b.radius >= -eps


def upper_hull(disks: Sequence[Disk], tol: Tolerance = DEFAULT_TOL) -> UpperHullIndex:
    """Andrew-style stack scan over x-sorted disks."""
    n = len(disks)
    stack: list[int] = []
    for k in range(n):
        while len(stack) >= 2 and not _contributes(disks[stack[-2]], disks[stack[-1]], disks[k], tol.eps):
            stack.pop()
        stack.append(k)
    inner = set(stack[1:-1]) if n > 1 else set()
    hull = tuple(i for i in range(n) if i in inner)
    rest = tuple(i for i in range(n) if i not in inner)
    return UpperHullIndex(hull, rest, tuple(stack))


# ---------------------------------------------------------------------------
# winding / unwinding
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PartialBelt:
    kind: str  # "lower" or "upper"
    from_disk: int
    to_disk: int
    contacts: tuple[tuple[int, int], ...]  # (position in sorted order, sign)
    pieces: tuple = field(default=(), compare=False)
    entry_point: Optional[Point] = None
    exit_point: Optional[Point] = None


@dataclass
class HullContext:
    disks: list[Disk]
    hull: UpperHullIndex
    tol: Tolerance = DEFAULT_TOL
    _bt: dict = field(default_factory=dict, repr=False)

    def bitangent(self, a: int, sa: int, b: int, sb: int) -> TangentSegment:
        """Memoised bitangent between sorted positions ``a`` and ``b``."""
        key = (a, sa, b, sb)
        seg = self._bt.get(key)
        if seg is None:
            seg = self._bt[key] = directed_bitangent(self.disks[a], sa, self.disks[b], sb)
        return seg

    def gap_hull(self, i: int) -> list[int]:
        """Upper hull disks strictly between rest[i] and rest[i+1]."""
        lo, hi = self.hull.rest[i], self.hull.rest[i + 1]
        return list(range(lo + 1, hi))


def _direction(seg: TangentSegment) -> float:
    return math.atan2(seg.p2[1] - seg.p1[1], seg.p2[0] - seg.p1[0])


def _sweep(ctx: HullContext, i: int, start_sign: int):
    """Rotate the tangent ray ccw starting on the lower bitangent of the gap.

    Returns contact lists (lower, upper) as (position, sign) tuples.
    """
    disks = ctx.disks
    a_pos, b_pos = ctx.hull.rest[i], ctx.hull.rest[i + 1]
    us = ctx.gap_hull(i)
    base = ctx.bitangent(a_pos, 1, b_pos, 1)
    theta = _direction(base)
    apex = (a_pos, start_sign)
    contacts = [apex]
    lower = None
    if start_sign > 0:
        lower = contacts + [(b_pos, 1)]
        phase = 1
    else:
        theta += math.pi
        phase = 0
    next_u = 0
    tiny = 1e-12
    for _ in range(len(us) + 4):
        cands = []
        for slot in {next_u, len(us) - 1}:
            if 0 <= slot < len(us) and slot >= next_u:
                cands.append((us[slot], 1, slot))
        cands.append((b_pos, 1 if phase == 0 else -1, None))
        best = None
        for pos, sg, slot in cands:
            try:
                seg = ctx.bitangent(apex[0], apex[1], pos, sg)
            except GeometryError:
                continue
            delta = (_direction(seg) - theta) % TWO_PI
            if delta <= tiny:
                delta += TWO_PI
            key = (round(delta, 12), disks[pos].center.x)
            if best is None or key < best[0]:
                best = (key, pos, sg, slot, delta)
        if best is None:
            raise NotSeparated(f"no tangency event in gap {i}")
        _, pos, sg, slot, delta = best
        theta = (theta + delta) % TWO_PI
        if pos == b_pos:
            if phase == 0:
                lower = contacts + [(b_pos, 1)]
                phase = 1
            else:
                return lower, contacts + [(b_pos, -1)]
        else:
            contacts = contacts + [(pos, 1)]
            apex = (pos, 1)
            next_u = slot + 1
    raise NotSeparated(f"winding in gap {i} did not terminate")


def _partial(ctx: HullContext, kind: str, contacts) -> PartialBelt:
    pieces = _open_chain(ctx.disks, contacts, ctx.bitangent)
    segs = [p for p in pieces if isinstance(p, TangentSegment)]
    return PartialBelt(kind, contacts[0][0], contacts[-1][0], tuple(contacts), tuple(pieces),
                       segs[0].p1 if segs else None, segs[-1].p2 if segs else None)


def wind(i: int, ctx: HullContext) -> tuple[PartialBelt, PartialBelt]:
    lo, up = _sweep(ctx, i, 1)
    return _partial(ctx, "lower", lo), _partial(ctx, "upper", up)


def unwind(i: int, ctx: HullContext) -> tuple[PartialBelt, PartialBelt]:
    lo, up = _sweep(ctx, i, -1)
    return _partial(ctx, "lower", lo), _partial(ctx, "upper", up)


def _open_chain(disks: Sequence[Disk], contacts, bitangent=None) -> list:
    if bitangent is None:
        def bitangent(a, sa, b, sb):
            return directed_bitangent(disks[a], sa, disks[b], sb)
    segs = [bitangent(a, sa, b, sb) for (a, sa), (b, sb) in zip(contacts, contacts[1:])]
    pieces: list = []
    for t, seg in enumerate(segs):
        if t > 0:
            pos, sg = contacts[t]
            d = disks[pos]
            pieces.append(Arc(d.id, d.angle_of(segs[t - 1].p2), d.angle_of(seg.p1), "ccw" if sg > 0 else "cw"))
        pieces.append(seg)
    return pieces


# ---------------------------------------------------------------------------
# pasting
# ---------------------------------------------------------------------------


def _alpha_intervals(prev: Disk, mid: Disk, nxt: Disk) -> list[tuple[float, float]]:
    """Boundary arcs of ``mid`` outside both neighbouring two-disk hulls, as (lo, width)."""
    opens = []
    for other in (prev, nxt):
        dx, dy = other.center.x - mid.center.x, other.center.y - mid.center.y
        d = math.hypot(dx, dy)
        w = math.acos(max(-1.0, min(1.0, (mid.radius - other.radius) / d)))
        opens.append(((math.atan2(dy, dx) - w) % TWO_PI, 2 * w))
    # complement of the union of two open intervals on the circle
    marks = []
    for lo, w in opens:
        marks.append((lo, w))
    covered = []
    for lo, w in marks:
        if lo + w > TWO_PI:
            covered.append((lo, TWO_PI))
            covered.append((0.0, lo + w - TWO_PI))
        else:
            covered.append((lo, lo + w))
    covered.sort()
    gaps = []
    cur = 0.0
    for a, b in covered:
        if a >= cur - 1e-15:
            gaps.append((cur, a))
        cur = max(cur, b)
    gaps.append((cur, TWO_PI))
    # merge wrap-around gap
    gaps = [(a, b) for a, b in gaps if b - a >= -1e-15]
    if len(gaps) >= 2 and gaps[0][0] <= 1e-15 and gaps[-1][1] >= TWO_PI - 1e-15:
        first, last = gaps[0], gaps[-1]
        gaps = gaps[1:-1] + [(last[0], last[1] - last[0] + first[1] - first[0])]
        return [(a, b - a) for a, b in gaps[:-1]] + [gaps[-1]]
    return [(a, b - a) for a, b in gaps]


def _arc_contains_interval(lo: float, width: float, a: float, w: float, tol: float = 1e-9) -> bool:
    o1 = (a - lo) % TWO_PI
    if o1 > TWO_PI - tol:
        o1 -= TWO_PI
    return o1 >= -tol and o1 + w <= width + tol


def _arc_covers_alpha(arc_lo: float, arc_w: float, alpha) -> bool:
    positive = [(a, w) for a, w in alpha if w > 1e-12]
    if positive:
        return all(_arc_contains_interval(arc_lo, arc_w, a, w) for a, w in positive)
    return any(_arc_contains_interval(arc_lo, arc_w, a, 0.0) for a, _ in alpha)


def _chains_cross(p_in: PartialBelt, p_out: PartialBelt, eps: float) -> bool:
    s_in = [p for p in p_in.pieces if isinstance(p, TangentSegment)]
    s_out = [p for p in p_out.pieces if isinstance(p, TangentSegment)]
    for x, a in enumerate(s_in):
        ax0, ax1 = min(a.p1[0], a.p2[0]) - eps, max(a.p1[0], a.p2[0]) + eps
        ay0, ay1 = min(a.p1[1], a.p2[1]) - eps, max(a.p1[1], a.p2[1]) + eps
        for y, b in enumerate(s_out):
            if max(b.p1[0], b.p2[0]) < ax0 or min(b.p1[0], b.p2[0]) > ax1:
                continue
            if max(b.p1[1], b.p2[1]) < ay0 or min(b.p1[1], b.p2[1]) > ay1:
                continue
            kind = segment_segment_intersect(a.p1, a.p2, b.p1, b.p2, eps)
            if kind == "disjoint":
                continue
            if x == len(s_in) - 1 and y == 0 and kind == "endpoint":
                continue
            return True
    return False


def _paste_ok(ctx: HullContext, i: int, p_in: PartialBelt, p_out: PartialBelt, alpha) -> bool:
    """Gluing at interior lower disk rest[i]: arc through alpha and no crossing."""
    disks = ctx.disks
    pos = ctx.hull.rest[i]
    mid = disks[pos]
    sign = p_in.contacts[-1][1]
    last_in = [p for p in p_in.pieces if isinstance(p, TangentSegment)][-1]
    first_out = [p for p in p_out.pieces if isinstance(p, TangentSegment)][0]
    a_in, a_out = mid.angle_of(last_in.p2), mid.angle_of(first_out.p1)
    if sign > 0:
        lo, w = a_in, (a_out - a_in) % TWO_PI
    else:
        lo, w = a_out, (a_in - a_out) % TWO_PI
    if not _arc_covers_alpha(lo, w, alpha):
        return False
    return not _chains_cross(p_in, p_out, ctx.tol.eps)


def build_spec(disks: Sequence[Disk], tol: Tolerance = DEFAULT_TOL) -> BeltSpec:
    """Contact sequence of the monotone construction (multi-touch mode)."""
    ds = sort_by_x(disks)
    n = len(ds)
    if n < 2:
        raise ValueError("build_spec needs at least two disks; use build_belt for one")
    xs = [d.center.x for d in ds]
    if any(b - a <= 0 for a, b in zip(xs, xs[1:])):
        raise NotSeparated("x-coordinates must be strictly increasing")
    hull = upper_hull(ds, tol)
    ctx = HullContext(ds, hull, tol)
    k = len(hull.rest) - 1
    parts = []
    for i in range(k):
        lw, uw = wind(i, ctx)
        lu, uu = unwind(i, ctx)
        parts.append({(1, 1): lw, (1, -1): uw, (-1, 1): lu, (-1, -1): uu})

    # chain DP over the signs of the lower disks; s_0 = s_k = +1
    states = {(1, s1): None for s1 in (1, -1)} if k >= 1 else {}
    back: list[dict] = [states]
    for i in range(1, k):
        nxt = {}
        alpha = _alpha_intervals(ds[hull.rest[i - 1]], ds[hull.rest[i]], ds[hull.rest[i + 1]])
        for (s_prev, s_mid) in back[-1]:
            for s_next in (1, -1):
                key = (s_mid, s_next)
                if key in nxt:
                    continue
                if _paste_ok(ctx, i, parts[i - 1][(s_prev, s_mid)], parts[i][(s_mid, s_next)], alpha):
                    nxt[key] = (s_prev, s_mid)
        if not nxt:
            raise NotSeparated(f"no valid paste at lower disk {ds[hull.rest[i]].id}")
        back.append(nxt)
    finals = [st for st in back[-1] if st[1] == 1]
    if not finals:
        raise NotSeparated("no partial belt ends on the lower side of R")
    state = sorted(finals, key=lambda s: (-s[0], -s[1]))[0]
    signs = [0] * (k + 1)
    signs[k] = state[1]
    signs[k - 1] = state[0]
    for i in range(k - 1, 0, -1):
        prev = back[i][(signs[i], signs[i + 1])]
        signs[i - 1] = prev[0]
    seq: list[tuple[int, int]] = []
    for i in range(k):
        chain = parts[i][(signs[i], signs[i + 1])].contacts
        seq.extend(chain if i == 0 else chain[1:])
    seq = seq[:-1] + [seq[-1]]
    top = [(p, 1) for p in reversed(hull.chain[1:-1])]
    full = seq + top
    return BeltSpec(tuple(Contact.signed(ds[p].id, s) for p, s in full), MULTI_TOUCH)


def build_belt(disks: Sequence[Disk], tol: Tolerance = DEFAULT_TOL) -> BeltCurve:
    """Belt for a monotonically separated sequence (caller checks separation if needed)."""
    if len(disks) == 1:
        return full_circle(disks[0])
    return realize(build_spec(disks, tol), disks, tol)


# ---------------------------------------------------------------------------
# bitonic dynamic program
# ---------------------------------------------------------------------------


def unblocked_table(disks: Sequence[Disk], tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """ok[i, j, a, b]: directed bitangent i(sign a) -> j(sign b) exists and is unblocked.

    Sign index 0 is plus, 1 is minus.
    """
    n = len(disks)
    ok = np.zeros((n, n, 2, 2), dtype=bool)
    segs, slots = [], []
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            for a, sa in enumerate((1, -1)):
                for b, sb in enumerate((1, -1)):
                    try:
                        seg = directed_bitangent(disks[i], sa, disks[j], sb)
                    except GeometryError:
                        continue
                    segs.append(seg)
                    slots.append((i, j, a, b))
    if segs:
        p1 = np.array([s.p1 for s in segs], dtype=np.float64)
        p2 = np.array([s.p2 for s in segs], dtype=np.float64)
        centers, radii = disks_arrays(disks)
        hits = _kernels.first_hit(p1, p2, centers, radii, tol.eps)
        for slot, h in zip(slots, hits):
            if h < 0:
                ok[slot] = True
    return ok


def bitonic_dp(disks: Sequence[Disk], tol: Tolerance = DEFAULT_TOL,
               max_candidates: int = 20000) -> Optional[BeltSpec]:
    """First verified bitonic one-touch belt in DP order, or ``None``.

    Chain A leaves disk 0 rightwards, chain B returns to it; both are
    extended by the next disk in x-order.  Transitions need an unblocked
    bitangent that does not cross a segment already placed; completed
    loops go to the verifier.
    """
    ds = sort_by_x(disks)
    n = len(ds)
    if n < 2:
        return None
    ok = unblocked_table(ds, tol)
    SIG = (1, -1)

    # state: (a, sa, b, sb) chain ends; m = max(a, b) is the last placed disk.
    # Chain A edges are travelled a -> k; chain B edges are travelled k -> b.
    # ``can_finish`` only looks at the table, so it is a function of the state
    # and safe to memoise.  Whether a completed loop verifies depends on the
    # whole history, so that part is searched, not memoised.
    found: list[BeltSpec] = []
    attempts = [0]

    @lru_cache(maxsize=None)
    def can_finish(a, sa, b, sb) -> bool:
        m = max(a, b)
        if m == n - 1:
            return bool(ok[a, b, sa, sb])
        k = m + 1
        return any((ok[a, k, sa, sk] and can_finish(k, sk, b, sb))
                   or (ok[k, b, sk, sb] and can_finish(a, sa, k, sk)) for sk in (0, 1))

    def seg(i, si, j, sj):
        return directed_bitangent(ds[i], SIG[si], ds[j], SIG[sj])

    def crosses(new, placed) -> bool:
        return any(segment_segment_intersect(new.p1, new.p2, q.p1, q.p2, tol.eps) == INTERIOR
                   for q in placed)

    def rec(a, sa, b, sb, chain_a, chain_b, placed=()) -> bool:
        if not can_finish(a, sa, b, sb):
            return False
        if max(a, b) == n - 1:
            if n > 2 and crosses(seg(a, sa, b, sb), placed):
                return False
            # close a -> b; the loop returns to disk 0 along chain B
            seq = chain_a + list(reversed(chain_b))
            spec = BeltSpec(tuple(Contact.signed(ds[p].id, SIG[s]) for p, s in seq), ONE_TOUCH)
            attempts[0] += 1
            if check_spec(spec, ds, ONE_TOUCH, tol).valid:
                found.append(spec)
                return True
            return attempts[0] >= max_candidates
        k = max(a, b) + 1
        for sk in (0, 1):
            if ok[a, k, sa, sk]:
                new = seg(a, sa, k, sk)
                if not crosses(new, placed) and rec(k, sk, b, sb, chain_a + [(k, sk)], chain_b, placed + (new,)):
                    return True
            if ok[k, b, sk, sb]:
                new = seg(k, sk, b, sb)
                if not crosses(new, placed) and rec(a, sa, k, sk, chain_a, chain_b + [(k, sk)], placed + (new,)):
                    return True
            if attempts[0] >= max_candidates:
                return True
        return False

    import sys
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 8 * n + 200))
    try:
        # disk 0 is plus by the reversal-with-flip symmetry
        rec(0, 0, 0, 0, [(0, 0)], [])
    finally:
        sys.setrecursionlimit(old)
    return found[0] if found else None
