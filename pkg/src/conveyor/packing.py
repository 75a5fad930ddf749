"""Circle packings of triangulations and the hardness-instance compilers."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import _kernels
from .belt import MULTI_TOUCH, ONE_TOUCH, BeltSpec, Contact, check_spec
from .errors import (
    CollinearCenters,
    GraphError,
    NoConvergence,
    NotHamiltonian,
    NoValidDelta,
    OddCycleLength,
)
from .geom import DEFAULT_TOL, KINDS, Disk, Point, Tolerance, check_disjoint, directed_bitangent, disks_arrays
from .graphs import CubicPlanarGraph, DualInfo, PlanarTriangulation, dual_graph

SQRT3 = math.sqrt(3.0)


@dataclass(frozen=True)
class ReductionConfig:
    tol_pack: float = 1e-10
    delta: Optional[float] = None  # None: choose by audited bisection
    delta_max: float = 0.05
    max_iter: int = 1_000_000
    integer_scale: Optional[int] = None
    eta: float = 0.5

    def __post_init__(self):
        if self.tol_pack <= 0 or self.delta_max <= 0 or self.max_iter <= 0:
            raise ValueError("tolerances must be positive")
        if self.delta is not None and not 0 < self.delta < 1:
            raise ValueError("delta must lie in (0, 1)")


@dataclass
class CirclePacking:
    graph: PlanarTriangulation
    centers: np.ndarray
    radii: np.ndarray
    outer: tuple[int, int, int]
    angle_residual: float
    iterations: int

    def disks(self, shrink: float = 0.0) -> list[Disk]:
        return [Disk.at(v, float(c[0]), float(c[1]), float(r * (1 - shrink)))
                for v, (c, r) in enumerate(zip(self.centers, self.radii))]

    def tangency_residuals(self) -> tuple[float, float]:
        """(max |dist - (r_u + r_v)| over edges, min dist - (r_u + r_v) over non-edges)."""
        es = set(self.graph.edges)
        worst_edge, min_gap = 0.0, math.inf
        n = self.graph.n
        for u in range(n):
            for v in range(u + 1, n):
                d = float(np.hypot(*(self.centers[u] - self.centers[v])))
                gap = d - self.radii[u] - self.radii[v]
                if (u, v) in es:
                    worst_edge = max(worst_edge, abs(gap))
                else:
                    min_gap = min(min_gap, gap)
        return worst_edge, min_gap


def _third_point(pu, pv, ru, rv, rw):
    """Center of w tangent to u and v, to the left of u -> v."""
    a, b, c = ru + rv, ru + rw, rv + rw
    cos_u = (a * a + b * b - c * c) / (2 * a * b)
    ang = math.acos(max(-1.0, min(1.0, cos_u)))
    base = math.atan2(pv[1] - pu[1], pv[0] - pu[0])
    return (pu[0] + b * math.cos(base + ang), pu[1] + b * math.sin(base + ang))


def circle_pack(t: PlanarTriangulation, cfg: ReductionConfig = ReductionConfig()) -> CirclePacking:
    """Maximal packing inside the outer triple, pinned to three unit disks."""
    n = t.n
    ox, oy, oz = t.outer_face
    faces = np.array(t.interior_faces, dtype=np.int64)
    degree = np.zeros(n, dtype=np.int64)
    for u, v in t.edges:
        degree[u] += 1
        degree[v] += 1
    free = np.ones(n, dtype=np.bool_)
    free[[ox, oy, oz]] = False
    radii = np.ones(n)
    radii[free] = 0.5
    target = np.full(n, 2 * math.pi)
    # angle-sum residual well below the tangency target so the layout closes
    tol_angle = min(cfg.tol_pack * 1e-2, 1e-12)
    if free.any():
        r, iters, worst = _kernels.relax_radii(radii, faces, degree, free, target, tol_angle, cfg.max_iter, 1.0)
        if worst > tol_angle:
            raise NoConvergence(f"angle sums did not converge (worst residual {worst:.3g})")
    else:
        r, iters, worst = radii, 0, 0.0

    # layout: outer triple clockwise in the plane
    pos = {ox: (0.0, 0.0), oy: (1.0, SQRT3), oz: (2.0, 0.0)}
    pending = [tuple(int(x) for x in f) for f in faces]
    while pending:
        progress = False
        rest = []
        for f in pending:
            placed = [v in pos for v in f]
            if all(placed):
                continue
            if sum(placed) == 2:
                k = placed.index(False)
                w, u, v = f[k], f[(k + 1) % 3], f[(k + 2) % 3]
                pos[w] = _third_point(pos[u], pos[v], r[u], r[v], r[w])
                progress = True
            else:
                rest.append(f)
        if not progress and rest:
            raise GraphError("interior faces are not connected through edges")
        pending = rest
    centers = np.array([pos[v] for v in range(n)])
    p = CirclePacking(t, centers, np.asarray(r, dtype=float), (ox, oy, oz), float(worst), int(iters))
    res, gap = p.tangency_residuals()
    if res > cfg.tol_pack or gap <= cfg.tol_pack:
        raise NoConvergence(f"packing residual {res:.3g}, smallest non-edge gap {gap:.3g}")
    return p


# ---------------------------------------------------------------------------
# blocking audit
# ---------------------------------------------------------------------------


def unblocked_kinds(disks: Sequence[Disk], tol: Tolerance = DEFAULT_TOL) -> dict[tuple[int, int], set[str]]:
    """For each id pair a < b: kinds (from a to b) of the unblocked bitangents."""
    ds = list(disks)
    segs, slots = [], []
    for i in range(len(ds)):
        for j in range(i + 1, len(ds)):
            a, b = (ds[i], ds[j]) if ds[i].id < ds[j].id else (ds[j], ds[i])
            for kind in KINDS:
                s1, s2 = {"upper": (-1, -1), "lower": (1, 1), "inner_a": (1, -1), "inner_b": (-1, 1)}[kind]
                try:
                    seg = directed_bitangent(a, s1, b, s2)
                except Exception:
                    continue
                segs.append(seg)
                slots.append(((a.id, b.id), kind))
    out: dict = {}
    if not segs:
        return out
    p1 = np.array([s.p1 for s in segs], dtype=np.float64)
    p2 = np.array([s.p2 for s in segs], dtype=np.float64)
    centers, radii = disks_arrays(ds)
    hits = _kernels.first_hit(p1, p2, centers, radii, tol.eps)
    for (pair, kind), h in zip(slots, hits):
        if h < 0:
            out.setdefault(pair, set()).add(kind)
    return out


@dataclass
class AuditReport:
    ok: bool
    unblocked_pairs: set[tuple[int, int]]
    expected_pairs: set[tuple[int, int]]
    missing: set[tuple[int, int]]
    extra: set[tuple[int, int]]
    kind_mismatches: dict = field(default_factory=dict)


def _outside_kind(a: Disk, b: Disk, c: Disk) -> str:
    """Outer bitangent a -> b on the side away from c."""
    cross = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
    # plus contacts put the segment to the right of a -> b
    return "lower" if cross > 0 else "upper"


def audit(disks: Sequence[Disk], edges: Sequence[tuple[int, int]], outer: Sequence[int] = (),
          tol: Tolerance = DEFAULT_TOL, kinds: bool = True, among: Optional[Sequence[int]] = None) -> AuditReport:
    """Compare unblocked bitangent pairs with graph edges (plus the outer triple's outer tangents).

    With ``among``, only pairs inside that id set are compared; all disks still block.
    """
    by_id = {d.id: d for d in disks}
    got = unblocked_kinds(disks, tol)
    if among is not None:
        keep = set(among)
        got = {k: v for k, v in got.items() if k[0] in keep and k[1] in keep}
    got_pairs = set(got)
    want_pairs = {(min(u, v), max(u, v)) for u, v in edges}
    o = list(outer)
    outer_pairs = set()
    if len(o) == 3:
        for k in range(3):
            u, v = o[k], o[(k + 1) % 3]
            outer_pairs.add((min(u, v), max(u, v)))
        want_pairs |= outer_pairs
    mism = {}
    if kinds:
        for pair in want_pairs:
            want = {"inner_a", "inner_b"}
            if pair in outer_pairs:
                w = [x for x in o if x not in pair][0]
                want.add(_outside_kind(by_id[pair[0]], by_id[pair[1]], by_id[w]))
            have = got.get(pair, set())
            if have != want:
                mism[pair] = (sorted(have), sorted(want))
    missing = want_pairs - got_pairs
    extra = got_pairs - want_pairs
    return AuditReport(not missing and not extra and not mism, got_pairs, want_pairs, missing, extra, mism)


def choose_delta(p: CirclePacking, cfg: ReductionConfig = ReductionConfig(), tol: Tolerance = DEFAULT_TOL,
                 iterations: int = 40) -> float:
    """Largest audited shrink factor up to ``delta_max`` by bisection, halved for margin."""
    edges = p.graph.edges

    def passes(delta: float) -> bool:
        return audit(p.disks(delta), edges, p.outer, tol).ok

    hi = cfg.delta_max
    if passes(hi):
        best = hi
    else:
        lo = hi * 2.0 ** -20
        if not passes(lo):
            raise NoValidDelta("the audit fails even for the smallest probe")
        for _ in range(iterations):
            mid = 0.5 * (lo + hi)
            if passes(mid):
                lo = mid
            else:
                hi = mid
        best = lo
    delta = best / 2
    while not passes(delta):
        delta /= 2
        if delta < cfg.delta_max * 2.0 ** -30:
            raise NoValidDelta("no shrink factor passes the audit")
    return delta


# ---------------------------------------------------------------------------
# one-touch reduction
# ---------------------------------------------------------------------------


@dataclass
class ReductionInstance:
    disks: list[Disk]
    graph: PlanarTriangulation
    packing: CirclePacking
    delta: float
    vertex_disk: dict[int, int]
    unblocked_pairs: set[tuple[int, int]]
    scale: Optional[int] = None
    audit_report: Optional[AuditReport] = None


def one_touch_instance(t: PlanarTriangulation, cfg: ReductionConfig = ReductionConfig(),
                       tol: Tolerance = DEFAULT_TOL) -> ReductionInstance:
    if t.n % 2:
        import warnings

        warnings.warn("the one-touch reduction is only equivalent for an even number of vertices", stacklevel=2)
    p = circle_pack(t, cfg)
    delta = cfg.delta if cfg.delta is not None else choose_delta(p, cfg, tol)
    disks = p.disks(delta)
    scale = cfg.integer_scale
    if scale:
        disks = [Disk.at(d.id, round(d.x * scale), round(d.y * scale), round(d.radius * scale)) for d in disks]
    rep = audit(disks, t.edges, p.outer, tol)
    return ReductionInstance(disks, t, p, delta, {v: v for v in range(t.n)}, rep.unblocked_pairs, scale, rep)


def _check_cycle(cycle: Sequence[int], adj: dict) -> None:
    verts = set(adj)
    if len(cycle) != len(verts) or set(cycle) != verts:
        raise NotHamiltonian("sequence does not visit every vertex exactly once")
    for k in range(len(cycle)):
        u, v = cycle[k], cycle[(k + 1) % len(cycle)]
        if v not in adj[u]:
            raise NotHamiltonian(f"{u} and {v} are not adjacent")


def one_touch_belts_for_cycle(cycle: Sequence[int], inst: ReductionInstance,
                              tol: Tolerance = DEFAULT_TOL) -> list[BeltSpec]:
    """Verified alternating-sign belts along ``cycle`` (both phases, either direction)."""
    _check_cycle(cycle, inst.graph.adjacency())
    if len(cycle) % 2:
        raise OddCycleLength("alternating signs need an even cycle")
    out = []
    for phase in (1, -1):
        spec = BeltSpec(tuple(Contact.signed(inst.vertex_disk[v], phase * (-1) ** k) for k, v in enumerate(cycle)),
                        ONE_TOUCH)
        if check_spec(spec, inst.disks, ONE_TOUCH, tol).valid:
            out.append(spec)
    return out


# ---------------------------------------------------------------------------
# radical centers
# ---------------------------------------------------------------------------


def radical_center(d1: Disk, d2: Disk, d3: Disk, tol: Tolerance = DEFAULT_TOL) -> Point:
    """The point of equal power with respect to three disks."""
    (x1, y1), (x2, y2), (x3, y3) = d1.center, d2.center, d3.center
    a = np.array([[2 * (x2 - x1), 2 * (y2 - y1)], [2 * (x3 - x1), 2 * (y3 - y1)]])
    det = float(np.linalg.det(a))
    scale = max(abs(x2 - x1), abs(y2 - y1), abs(x3 - x1), abs(y3 - y1), 1.0)
    if abs(det) <= tol.eps * scale * scale:
        raise CollinearCenters("radical center undefined for collinear centers")
    k1 = x1 * x1 + y1 * y1 - d1.radius ** 2
    b = np.array([
        x2 * x2 + y2 * y2 - d2.radius ** 2 - k1,
        x3 * x3 + y3 * y3 - d3.radius ** 2 - k1,
    ])
    x, y = np.linalg.solve(a, b)
    return Point(float(x), float(y))


# ---------------------------------------------------------------------------
# multi-touch reduction
# ---------------------------------------------------------------------------


@dataclass
class MultiTouchInstance:
    disks: list[Disk]
    cubic: CubicPlanarGraph
    dual: DualInfo
    base: ReductionInstance
    region_disk: dict[int, int]  # cubic vertex -> radical-center disk id (interior triangles)
    outer_vertex: int
    outer_gadgets: dict[tuple[int, int], int]  # outer packing pair -> gadget disk id
    eta: float

    @property
    def packing_ids(self) -> list[int]:
        return sorted(self.base.vertex_disk.values())


def _free_radius(p, disks: Sequence[Disk]) -> float:
    return min(math.hypot(p[0] - d.x, p[1] - d.y) - d.radius for d in disks)


def multi_touch_instance(g: CubicPlanarGraph, cfg: ReductionConfig = ReductionConfig(),
                         outer_vertex: int = 0, gadget_radius: float = 0.1,
                         tol: Tolerance = DEFAULT_TOL) -> MultiTouchInstance:
    """Shrunk packing of the dual, plus radical-center disks and three outer gadgets."""
    if g.n <= 3:
        raise GraphError("need a cubic graph with more than three vertices")
    dual = dual_graph(g, outer_vertex)
    base = one_touch_instance(dual.triangulation, cfg, tol)
    if base.scale:
        raise ValueError("integer scaling is applied after gadgets; not supported here")
    pack = base.packing.disks()  # unshrunk, tangent: radical centers sit on the common tangents
    disks = list(base.disks)
    next_id = len(disks)
    region: dict[int, int] = {}
    for v in range(g.n):
        if v == outer_vertex:
            continue
        a, b, c = dual.vertex_triangle[v]
        p = radical_center(pack[a], pack[b], pack[c], tol)
        r = cfg.eta * _free_radius(p, disks)
        if r <= 0:
            raise GraphError(f"no room for the gadget of vertex {v}")
        disks.append(Disk.at(next_id, p.x, p.y, r))
        region[v] = next_id
        next_id += 1
    o = base.packing.outer
    gadgets: dict = {}
    shrunk = {d.id: d for d in base.disks}
    for k in range(3):
        x, y, z = o[k], o[(k + 1) % 3], o[(k + 2) % 3]
        dx, dy = shrunk[x], shrunk[y]
        cx, cy = (dx.x + dy.x) / 2, (dx.y + dy.y) / 2
        half = math.hypot(dy.x - dx.x, dy.y - dx.y) / 2
        nx, ny = -(dy.y - dx.y) / (2 * half), (dy.x - dx.x) / (2 * half)
        if nx * (shrunk[z].x - cx) + ny * (shrunk[z].y - cy) > 0:
            nx, ny = -nx, -ny
        h = math.sqrt((dx.radius + gadget_radius) ** 2 - half * half)
        if h + gadget_radius >= dx.radius:
            raise GraphError("outer gadget would leave the convex hull; use a smaller radius")
        disks.append(Disk.at(next_id, cx + h * nx, cy + h * ny, gadget_radius * (1 - base.delta)))
        gadgets[(min(x, y), max(x, y))] = next_id
        next_id += 1
    for i in range(len(disks)):
        for j in range(i + 1, len(disks)):
            check_disjoint(disks[i], disks[j], tol.eps)
    return MultiTouchInstance(disks, g, dual, base, region, outer_vertex, gadgets, cfg.eta)


class _TemplateSearch:
    """DFS over contact sequences shaped by per-step slots.

    A slot is either a tuple of alternative contact tuples ``((disk, sign), ...)`` or
    ``("free", pool, max_len)``, where signs are enumerated.  The adjacency table and
    incremental piece-intersection checks prune.
    """

    def __init__(self, disks, slots, mode, cap, tol, budget, required=None, collect=False, checks=True):
        from .solver import AdjacencyOracle, _Clock

        self.ds = sorted(disks, key=lambda d: d.id)
        self.pos = {d.id: k for k, d in enumerate(self.ds)}
        self.oracle = AdjacencyOracle(self.ds, tol)
        self.slots = slots
        self.mode = mode
        self.cap = cap
        self.tol = tol
        self.clock = _Clock(budget)
        self.required = {d.id for d in self.ds} if required is None else set(required)
        self.collect = collect
        self.checks = checks  # False: only realizability, for collecting invalid candidates
        self.found: list[BeltSpec] = []
        # disks still reachable from slot k onwards, for the coverage prune
        self.reach = [set() for _ in range(len(slots) + 1)]
        for k in range(len(slots) - 1, -1, -1):
            sl = slots[k]
            own = set(sl[1]) if sl[0] == "free" else {c[0] for t in sl for c in t}
            self.reach[k] = self.reach[k + 1] | own

    def _options(self, slot, run):
        """(next contacts, may the slot end here)."""
        if slot[0] == "free":
            _, pool, max_len = slot
            nxt = [(d, s) for d in pool for s in (1, -1) if not run or d != run[-1][0]] if len(run) < max_len else []
            return nxt, len(run) >= 1
        nxt = sorted({t[len(run)] for t in slot if len(t) > len(run) and tuple(t[:len(run)]) == tuple(run)})
        return nxt, tuple(run) in {tuple(t) for t in slot}

    def run(self) -> Optional[BeltSpec]:
        from .belt import _arc_between, realize, verify
        from .geom import INTERIOR, arc_arc_intersect, segment_arc_intersect, segment_segment_intersect

        seq: list = []
        segs: list = []  # segs[i] joins seq[i] to seq[i + 1]
        arcs: list = []  # arcs[i] on seq[i]; None for the first contact until closing
        counts: dict = {}
        ds, pos, tol = self.ds, self.pos, self.tol
        eps = tol.eps

        def disk(c):
            return ds[pos[c[0]]]

        def seg_for(a, b):
            return directed_bitangent(disk(a), a[1], disk(b), b[1])

        def seg_hits_arc(s, i) -> bool:
            a = arcs[i]
            return a is not None and segment_arc_intersect(s.p1, s.p2, a, disk(seq[i]), eps) != "disjoint"

        def new_pieces_ok(c, new) -> bool:
            """Check the segment to ``c`` and the arc it completes on the previous contact."""
            m = len(seq)  # index c will take
            for s in segs[:-1]:
                if segment_segment_intersect(s.p1, s.p2, new.p1, new.p2, eps) == INTERIOR:
                    return False
            for i in range(1, m - 1):
                if seg_hits_arc(new, i):
                    return False
            if m >= 2:
                prev = seq[-1]
                try:
                    arc = _arc_between(disk(prev), prev[1], segs[-1].p2, new.p1, segs[-1].direction, new.direction, eps)
                except Exception:
                    return False
                d = disk(prev)
                for s in segs[:-1]:
                    if segment_arc_intersect(s.p1, s.p2, arc, d, eps) != "disjoint":
                        return False
                for i in range(1, m - 1):
                    if seq[i][0] == prev[0] and arcs[i] is not None:
                        if arc_arc_intersect(arcs[i], d, arc, d, eps) != "disjoint":
                            return False
                arcs[-1] = arc
            return True

        def finish() -> Optional[BeltSpec]:
            first, last = seq[0], seq[-1]
            if first[0] == last[0] or not self.oracle.ok(pos[last[0]], last[1], pos[first[0]], first[1]):
                return None
            if not self.required <= counts.keys():
                return None
            spec = BeltSpec(tuple(Contact.signed(d, s) for d, s in seq), self.mode)
            try:
                curve = realize(spec, ds, tol)
            except Exception:
                return None
            if self.checks and not verify(curve, ds, self.mode, tol, self.required).valid:
                return None
            if self.collect:
                self.found.append(spec)
                return None
            return spec

        def rec(k: int, run: list) -> Optional[BeltSpec]:
            self.clock.check()
            if k == len(self.slots):
                return finish()
            if not self.required <= (counts.keys() | self.reach[k]):
                return None
            nxt, can_end = self._options(self.slots[k], run)
            if can_end:
                got = rec(k + 1, [])
                if got is not None:
                    return got
            for c in nxt:
                d, s = c
                if counts.get(d, 0) >= self.cap:
                    continue
                if True:
                    saved = arcs[-1] if arcs else None
                    if seq:
                        p = seq[-1]
                        if p[0] == d or not self.oracle.ok(pos[p[0]], p[1], pos[d], s):
                            continue
                        new = seg_for(p, c)
                        if self.checks and not new_pieces_ok(c, new):
                            if arcs:
                                arcs[-1] = saved
                            continue
                        segs.append(new)
                    seq.append(c)
                    arcs.append(None)
                    counts[d] = counts.get(d, 0) + 1
                    got = rec(k, run + [c])
                    counts[d] -= 1
                    if not counts[d]:
                        del counts[d]
                    arcs.pop()
                    seq.pop()
                    if seq:
                        segs.pop()
                        arcs[-1] = saved
                    if got is not None:
                        return got
            return None

        return rec(0, [])


def _side(p, q, x) -> int:
    """+1 when ``x`` lies left of the directed line p -> q."""
    return 1 if (q[0] - p[0]) * (x[1] - p[1]) - (q[1] - p[1]) * (x[0] - p[0]) > 0 else -1


def audit_multi_touch(inst: MultiTouchInstance, tol: Tolerance = DEFAULT_TOL) -> AuditReport:
    """Packing-pair audit of the full gadget instance (gadget disks act as obstacles)."""
    t = inst.dual.triangulation
    return audit(inst.disks, t.edges, inst.base.packing.outer, tol, among=inst.packing_ids)


def gap_ply_audit(inst: MultiTouchInstance, tol: Tolerance = DEFAULT_TOL) -> list[tuple]:
    """Gaps whose two single-ply passages are blocked or cross; empty when all pass.

    The passage grazing A runs anchor(v) -> A -> anchor(w); the one grazing B likewise.
    Anchors are the center disks of the two regions (outer gadgets for the outer face).
    """
    from .geom import INTERIOR, is_blocked, segment_segment_intersect

    by_id = {d.id: d for d in inst.disks}
    tri = inst.dual.vertex_triangle
    o = inst.outer_vertex
    bad = []
    for v, w in inst.cubic.edges:
        a, b = sorted(set(tri[v]) & set(tri[w]))

        def anchor(x):
            if x != o:
                return by_id[inst.region_disk[x]]
            return by_id[inst.outer_gadgets[(a, b)]]

        p, q = anchor(v), anchor(w)
        plies = []
        for g in (a, b):
            sg = _side(p.center, q.center, by_id[g].center)
            found = None
            for sp in (1, -1):
                for sq in (1, -1):
                    s1 = directed_bitangent(p, sp, by_id[g], sg)
                    s2 = directed_bitangent(by_id[g], sg, q, sq)
                    if not is_blocked(s1, inst.disks, tol) and not is_blocked(s2, inst.disks, tol):
                        found = (s1, s2)
                        break
                if found:
                    break
            plies.append(found)
        if None in plies:
            bad.append(((v, w), "blocked"))
            continue
        if any(segment_segment_intersect(x.p1, x.p2, y.p1, y.p2, tol.eps) == INTERIOR
               for x in plies[0] for y in plies[1]):
            bad.append(((v, w), "plies cross"))
    return bad


def _multi_touch_slots(cycle: Sequence[int], inst: MultiTouchInstance, outer_len: int):
    """Slots for: crossing into the outer region, the outer loop, then region/crossing pairs.

    Starting at the outer region keeps its constraints next to each other, so the
    incremental checks prune before the interior is enumerated.  Signs inside the
    packing follow the geometry: a grazed packing disk keeps the side it lies on
    relative to the line between region anchors, and a radical-center disk sits on
    the inside of the turn.
    """
    tri = inst.dual.vertex_triangle
    o = inst.outer_vertex
    k = list(cycle).index(o)
    cyc = list(cycle[k:]) + list(cycle[:k])
    by_id = {d.id: d for d in inst.disks}
    pool = sorted(set(inst.base.packing.outer) | set(inst.outer_gadgets.values()))

    def shared(v, w):
        sh = sorted(set(tri[v]) & set(tri[w]))
        if len(sh) != 2:
            raise NotHamiltonian(f"vertices {v} and {w} are not adjacent")
        return sh

    def anchor(v, w):
        """Where the belt sits in region v when it heads for region w."""
        if v != o:
            return by_id[inst.region_disk[v]].center
        return by_id[inst.outer_gadgets[tuple(shared(v, w))]].center

    def gate(v, w):
        a, b = (by_id[x] for x in shared(v, w))
        ta, tb = a.radius / (a.radius + b.radius), b.radius / (a.radius + b.radius)
        return (a.x * tb + b.x * ta, a.y * tb + b.y * ta)

    def crossing(v, w):
        p, q = anchor(v, w), anchor(w, v)
        a, b = shared(v, w)
        sa, sb = _side(p, q, by_id[a].center), _side(p, q, by_id[b].center)
        alts = (((a, sa),), ((b, sb),), ((a, sa), (b, sb)), ((b, sb), (a, sa)))
        return alts + ((),) if o in (v, w) else alts

    def region(u, v, w):
        r = by_id[inst.region_disk[v]].center
        return (((inst.region_disk[v], _side(gate(u, v), r, gate(v, w))),),)

    m = len(cyc)
    slots = [crossing(cyc[-1], o), ("free", pool, outer_len)]
    for i in range(m - 1):
        slots.append(crossing(cyc[i], cyc[i + 1]))
        slots.append(region(cyc[i], cyc[i + 1], cyc[(i + 2) % m]))
    return slots


def belt_from_hamiltonian_cycle(cycle: Sequence[int], inst, mode: str = ONE_TOUCH,
                                tol: Tolerance = DEFAULT_TOL, budget: Optional[float] = 60.0) -> BeltSpec:
    """A verified belt following a Hamiltonian cycle of the source graph."""
    if mode == ONE_TOUCH:
        if not isinstance(inst, ReductionInstance):
            raise TypeError("one-touch mode needs a one_touch_instance")
        belts = one_touch_belts_for_cycle(cycle, inst, tol)
        if not belts:
            raise NoValidDelta("no alternating belt verifies; the shrink is too large")
        return belts[0]
    if not isinstance(inst, MultiTouchInstance):
        raise TypeError("multi-touch mode needs a multi_touch_instance")
    _check_cycle(cycle, inst.cubic.adjacency())
    for outer_len in range(3, 9):
        slots = _multi_touch_slots(cycle, inst, outer_len)
        got = _TemplateSearch(inst.disks, slots, MULTI_TOUCH, 3, tol, budget).run()
        if got is not None:
            return got
    raise NoValidDelta("template search found no verified belt for this cycle")


# ---------------------------------------------------------------------------
# ply patterns on a single triangle
# ---------------------------------------------------------------------------

PLY_PATTERNS = {
    (1, 1, 0): "two_single",
    (2, 0, 0): "one_double",
    (2, 2, 0): "two_double",
    (2, 1, 1): "double_and_two_single",
}


@dataclass
class TriangleGadget:
    """Three shrunk unit disks, the radical-center disk, and a pulley beyond each gap.

    The pulleys stand in for the neighbouring triangles' center disks.
    """

    disks: list[Disk]
    corners: tuple[int, int, int]
    center: int
    pulleys: dict[tuple[int, int], int]

    @property
    def gates(self) -> list[tuple[int, int]]:
        return sorted(self.pulleys)


def triangle_gadget(delta: float = 0.002, eta: float = 0.5, pulley_radius: float = 0.1) -> TriangleGadget:
    unit = [Disk.at(0, 0.0, 0.0, 1.0), Disk.at(1, 1.0, SQRT3, 1.0), Disk.at(2, 2.0, 0.0, 1.0)]
    corners = [Disk.at(d.id, d.x, d.y, d.radius * (1 - delta)) for d in unit]
    p = radical_center(*unit)
    disks = corners + [Disk.at(3, p.x, p.y, eta * _free_radius(p, corners))]
    pulleys = {}
    for k, (a, b) in enumerate(((0, 1), (1, 2), (0, 2))):
        da, db = corners[a], corners[b]
        mx, my = (da.x + db.x) / 2, (da.y + db.y) / 2
        nx, ny = mx - p.x, my - p.y
        norm = math.hypot(nx, ny)
        half = math.hypot(db.x - da.x, db.y - da.y) / 2
        h = math.sqrt((da.radius + pulley_radius) ** 2 - half * half)
        disks.append(Disk.at(4 + k, mx + h * nx / norm, my + h * ny / norm, pulley_radius * (1 - delta)))
        pulleys[(a, b)] = 4 + k
    return TriangleGadget(disks, (0, 1, 2), 3, pulleys)


def gate_crossings(curve, disks: Sequence[Disk], gates: Sequence[tuple[int, int]], step: float = 0.01) -> list:
    """Gates crossed along the curve, in order, as (gate, +1 into the left side / -1)."""
    from .belt import polyline

    by_id = {d.id: d for d in disks}
    pts = polyline(curve, disks, step)
    nxt = np.roll(pts, -1, axis=0)
    events = []
    for g in gates:
        a, b = by_id[g[0]].center, by_id[g[1]].center
        ux, uy = b[0] - a[0], b[1] - a[1]
        s0 = ux * (pts[:, 1] - a[1]) - uy * (pts[:, 0] - a[0])
        s1 = ux * (nxt[:, 1] - a[1]) - uy * (nxt[:, 0] - a[0])
        for k in np.nonzero((s0 > 0) != (s1 > 0))[0]:
            t = s0[k] / (s0[k] - s1[k])
            x = pts[k] + t * (nxt[k] - pts[k])
            along = ((x[0] - a[0]) * ux + (x[1] - a[1]) * uy) / (ux * ux + uy * uy)
            if 0 < along < 1:
                events.append((k + t, g, 1 if s1[k] > 0 else -1))
    events.sort(key=lambda e: e[0])
    return [(g, sgn) for _, g, sgn in events]


def ply_profile(curve, gadget: TriangleGadget) -> tuple[dict, list]:
    """(ply per gate, strands inside the triangle as (entry gate, exit gate))."""
    ev = gate_crossings(curve, gadget.disks, gadget.gates)
    ply = {g: 0 for g in gadget.gates}
    for g, _ in ev:
        ply[g] += 1
    inside = {d.id: d for d in gadget.disks}[gadget.center].center
    strands = []
    if ev:
        # find an entering event: after it, the curve is on the center's side of that gate
        by_id = {d.id: d for d in gadget.disks}

        def enters(g, sgn):
            a, b = by_id[g[0]].center, by_id[g[1]].center
            side = (b[0] - a[0]) * (inside[1] - a[1]) - (b[1] - a[1]) * (inside[0] - a[0])
            return (side > 0) == (sgn > 0)

        start = next(k for k, e in enumerate(ev) if enters(*e))
        order = ev[start:] + ev[:start]
        for k in range(0, len(order) - 1, 2):
            strands.append((order[k][0], order[k + 1][0]))
    return ply, strands


def classify_ply(ply: dict, strands: list) -> Optional[str]:
    """Pattern name, ``"mixed"`` if a strand joins gates of different ply, else None."""
    if any(ply[a] != ply[b] for a, b in strands):
        return "mixed"
    key = tuple(sorted(ply.values(), reverse=True))
    return PLY_PATTERNS.get(key)


def ply_patterns(gadget: TriangleGadget, max_len: int = 9, budget: Optional[float] = 120.0,
                 tol: Tolerance = DEFAULT_TOL) -> dict[str, list[BeltSpec]]:
    """Verified belts through the gadget's center disk, grouped by ply pattern."""
    from .belt import canonicalize, realize

    ids = [d.id for d in gadget.disks]
    out: dict[str, list[BeltSpec]] = {}
    seen = set()
    for length in range(3, max_len + 1):
        slots = [tuple(((gadget.center, s),) for s in (1, -1)), ("free", ids, length - 1)]
        search = _TemplateSearch(gadget.disks, slots, MULTI_TOUCH, 2, tol, budget,
                                 required={gadget.center}, collect=True)
        search.run()
        for spec in search.found:
            key = canonicalize(spec).key()
            if key in seen:
                continue
            seen.add(key)
            ply, strands = ply_profile(realize(spec, gadget.disks, tol), gadget)
            name = classify_ply(ply, strands) or "other"
            out.setdefault(name, []).append(spec)
    return out


def mixed_ply_candidates(gadget: TriangleGadget, max_len: int = 5, budget: Optional[float] = 120.0,
                         tol: Tolerance = DEFAULT_TOL) -> list[BeltSpec]:
    """Realizable contact sequences (unblocked bitangents only) with a strand that
    enters on a single-ply gate and leaves on a double-ply one, or vice versa."""
    from .belt import canonicalize, realize

    ids = [d.id for d in gadget.disks]
    out, seen = [], set()
    for length in range(3, max_len + 1):
        slots = [tuple(((gadget.center, s),) for s in (1, -1)), ("free", ids, length - 1)]
        search = _TemplateSearch(gadget.disks, slots, MULTI_TOUCH, 2, tol, budget,
                                 required={gadget.center}, collect=True, checks=False)
        search.run()
        for spec in search.found:
            key = canonicalize(spec).key()
            if key in seen:
                continue
            seen.add(key)
            ply, strands = ply_profile(realize(spec, gadget.disks, tol), gadget)
            if classify_ply(ply, strands) == "mixed":
                out.append(spec)
    return out
