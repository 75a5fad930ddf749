"""Power diagrams, spanning-tree tours and guide-disk augmentation.

Guide placement works on a cyclic route of original disks and polygon
vertices.  Each vertex becomes a small guide disk inscribed in the corner
(a fillet), so consecutive guides share an exact common tangent line and
the realized belt is the filleted route.  Left turns give plus guides,
right turns give minus guides.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from .belt import MULTI_TOUCH, ONE_TOUCH, BeltCurve, BeltSpec, Contact, full_circle, realize, verify
from .errors import DegenerateInput, GeometryError, PlacementFailed
from .geom import DEFAULT_TOL, Disk, Tolerance, check_disjoint, directed_bitangent, is_blocked

# ---------------------------------------------------------------------------
# power diagram
# ---------------------------------------------------------------------------

BOX = -1  # label of bounding-box sides


@dataclass(frozen=True)
class PowerEdge:
    cell_a: int
    cell_b: int
    p: tuple[float, float]
    q: tuple[float, float]
    unbounded: bool

    @property
    def midpoint(self) -> tuple[float, float]:
        return ((self.p[0] + self.q[0]) / 2, (self.p[1] + self.q[1]) / 2)

    def length(self) -> float:
        return math.hypot(self.q[0] - self.p[0], self.q[1] - self.p[1])


@dataclass
class PowerDiagram:
    """Cells are ccw polygons clipped to ``box``; ``labels[i][k]`` names the
    neighbour across side k of cell i (``BOX`` for the bounding box)."""

    disks: list[Disk]
    cells: list[np.ndarray]
    labels: list[list[int]]
    edges: list[PowerEdge]
    box: tuple[float, float, float, float]
    method: str = "lifting"

    @property
    def vertices(self) -> np.ndarray:
        pts = np.concatenate(self.cells) if self.cells else np.zeros((0, 2))
        return np.unique(np.round(pts, 12), axis=0)

    def locate(self, p) -> int:
        """Index of the cell containing ``p`` (-1 outside the box)."""
        for i, poly in enumerate(self.cells):
            if _in_convex(p, poly):
                return i
        return -1

    def edge_between(self, i: int, j: int) -> Optional[PowerEdge]:
        for e in self.edges:
            if {e.cell_a, e.cell_b} == {i, j}:
                return e
        return None

    def clearance(self, i: int) -> float:
        """Gap between disk i and the boundary of its cell."""
        d = self.disks[i]
        poly = self.cells[i]
        best = math.inf
        for k in range(len(poly)):
            a, b = poly[k], poly[(k + 1) % len(poly)]
            best = min(best, _line_dist(d.center, a, b))
        return best - d.radius


def _line_dist(p, a, b) -> float:
    ex, ey = b[0] - a[0], b[1] - a[1]
    return abs(ex * (p[1] - a[1]) - ey * (p[0] - a[0])) / math.hypot(ex, ey)


def _in_convex(p, poly, eps: float = 1e-12) -> bool:
    n = len(poly)
    for k in range(n):
        a, b = poly[k], poly[(k + 1) % n]
        if (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]) < -eps:
            return False
    return True


def _clip(poly: list, labels: list, nrm, off, label):
    """Keep the part of ``poly`` with nrm . p <= off."""
    n = len(poly)
    out, lab = [], []
    for k in range(n):
        p, q = poly[k], poly[(k + 1) % n]
        fp = nrm[0] * p[0] + nrm[1] * p[1] - off
        fq = nrm[0] * q[0] + nrm[1] * q[1] - off
        if fp <= 0:
            out.append(p)
            lab.append(labels[k])
            if fq > 0:
                t = fp / (fp - fq)
                out.append((p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
                lab.append(label)
        elif fq <= 0:
            t = fp / (fp - fq)
            out.append((p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
            lab.append(labels[k])
    # drop repeated vertices
    keep_p, keep_l = [], []
    for p, l in zip(out, lab):
        if keep_p and math.hypot(p[0] - keep_p[-1][0], p[1] - keep_p[-1][1]) < 1e-13:
            keep_l[-1] = l
            continue
        keep_p.append(p)
        keep_l.append(l)
    if len(keep_p) > 1 and math.hypot(keep_p[0][0] - keep_p[-1][0], keep_p[0][1] - keep_p[-1][1]) < 1e-13:
        keep_p.pop()
        keep_l.pop()
    return keep_p, keep_l


def _neighbour_candidates(centers: np.ndarray, radii: np.ndarray) -> Optional[list[set]]:
    n = len(centers)
    if n < 4:
        return None
    lifted = np.column_stack([centers, (centers ** 2).sum(axis=1) - radii ** 2])
    try:
        hull = ConvexHull(lifted)
    except QhullError:
        return None
    nb = [set() for _ in range(n)]
    for simplex, eq in zip(hull.simplices, hull.equations):
        if eq[2] < -1e-12:
            for a in simplex:
                for b in simplex:
                    if a != b:
                        nb[a].add(int(b))
    # every disk owns a cell, so it must appear on the lower hull
    if any(not s for s in nb):
        return None
    return nb


def power_diagram(disks: Sequence[Disk], tol: Tolerance = DEFAULT_TOL,
                  force_all_pairs: bool = False) -> PowerDiagram:
    """Cells by half-plane clipping; neighbour candidates from the lifted lower hull.

    Falls back to all pairs (quadratic) when the hull is degenerate or n < 4.
    """
    ds = list(disks)
    n = len(ds)
    if n == 0:
        raise DegenerateInput("no disks")
    for i in range(n):
        for j in range(i + 1, n):
            a, b = ds[i], ds[j]
            if a.center == b.center and a.radius == b.radius:
                raise DegenerateInput(f"disks {a.id} and {b.id} are identical")
            check_disjoint(a, b, tol.eps)
    centers = np.array([d.center for d in ds], dtype=float)
    radii = np.array([d.radius for d in ds], dtype=float)
    lo = (centers - radii[:, None]).min(axis=0)
    hi = (centers + radii[:, None]).max(axis=0)
    spread = max(float((hi - lo).max()), 1.0)
    mid = (lo + hi) / 2
    half = 1.5 * spread
    box = (mid[0] - half, mid[1] - half, mid[0] + half, mid[1] + half)

    cand = None if force_all_pairs else _neighbour_candidates(centers, radii)
    method = "lifting" if cand is not None else "all-pairs"
    if cand is None:
        cand = [set(range(n)) - {i} for i in range(n)]

    cells, labels = [], []
    for i in range(n):
        poly = [(box[0], box[1]), (box[2], box[1]), (box[2], box[3]), (box[0], box[3])]
        lab = [BOX] * 4
        ci = centers[i]
        for j in sorted(cand[i]):
            cj = centers[j]
            nrm = 2 * (cj - ci)
            off = (cj @ cj - radii[j] ** 2) - (ci @ ci - radii[i] ** 2)
            poly, lab = _clip(poly, lab, nrm, off, j)
            if len(poly) < 3:
                break
        cells.append(np.array(poly, dtype=float))
        labels.append(lab)

    edges = []
    eps_box = 1e-9 * spread
    for i in range(n):
        poly = cells[i]
        m = len(poly)
        for k in range(m):
            j = labels[i][k]
            if j == BOX or j < i:
                continue
            p, q = tuple(poly[k]), tuple(poly[(k + 1) % m])
            if math.hypot(q[0] - p[0], q[1] - p[1]) <= 1e-12 * spread:
                continue
            on_box = any(
                abs(pt[0] - box[0]) < eps_box or abs(pt[0] - box[2]) < eps_box
                or abs(pt[1] - box[1]) < eps_box or abs(pt[1] - box[3]) < eps_box
                for pt in (p, q)
            )
            edges.append(PowerEdge(i, j, (float(p[0]), float(p[1])), (float(q[0]), float(q[1])), on_box))
    return PowerDiagram(ds, cells, labels, edges, box, method)


# ---------------------------------------------------------------------------
# spanning tree and tour
# ---------------------------------------------------------------------------


@dataclass
class DualTree:
    n: int
    edges: list[PowerEdge]  # tree edges, cell_a < cell_b

    def neighbours(self, i: int) -> list[int]:
        return [e.cell_b if e.cell_a == i else e.cell_a for e in self.edges if i in (e.cell_a, e.cell_b)]

    def degree(self, i: int) -> int:
        return sum(1 for e in self.edges if i in (e.cell_a, e.cell_b))


def dual_spanning_tree(pd: PowerDiagram) -> DualTree:
    """Kruskal on the dual graph with weight |c_a - y| + |y - c_b|, y the edge midpoint."""
    n = len(pd.disks)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def weight(e: PowerEdge):
        y = e.midpoint
        a, b = pd.disks[e.cell_a].center, pd.disks[e.cell_b].center
        return math.hypot(a[0] - y[0], a[1] - y[1]) + math.hypot(b[0] - y[0], b[1] - y[1])

    chosen = []
    for e in sorted(pd.edges, key=lambda e: (weight(e), e.cell_a, e.cell_b)):
        ra, rb = find(e.cell_a), find(e.cell_b)
        if ra != rb:
            parent[ra] = rb
            chosen.append(e)
    if len(chosen) != n - 1:
        raise DegenerateInput("dual graph of the power diagram is disconnected")
    return DualTree(n, chosen)


def _rotation(pd: PowerDiagram, tree: DualTree) -> dict[int, list[int]]:
    """Tree edge indices around each cell, sorted ccw by the direction to the edge midpoint."""
    rot: dict[int, list[int]] = {i: [] for i in range(tree.n)}
    for k, e in enumerate(tree.edges):
        for i in (e.cell_a, e.cell_b):
            rot[i].append(k)
    for i, ks in rot.items():
        c = pd.disks[i].center
        ks.sort(key=lambda k: math.atan2(tree.edges[k].midpoint[1] - c[1], tree.edges[k].midpoint[0] - c[0]))
    return rot


def outside_tour(tree: DualTree, pd: PowerDiagram) -> list[tuple[int, int]]:
    """Closed walk around the tree: (cell, tree edge index taken next).

    At each cell the walk leaves by the next edge ccw after the one it arrived on.
    """
    if not tree.edges:
        return [(0, -1)] if tree.n == 1 else []
    rot = _rotation(pd, tree)
    start = (0, rot[0][0])
    tour = [start]
    node, k = start
    while True:
        e = tree.edges[k]
        other = e.cell_b if e.cell_a == node else e.cell_a
        ks = rot[other]
        nk = ks[(ks.index(k) + 1) % len(ks)]
        if (other, nk) == start:
            break
        tour.append((other, nk))
        node, k = other, nk
    return tour


# ---------------------------------------------------------------------------
# routes and fillets
# ---------------------------------------------------------------------------


@dataclass
class _Node:
    kind: str  # "disk" or "pt"
    disk: Optional[int] = None  # index into originals
    pt: Optional[tuple[float, float]] = None
    tag: str = ""
    scale: float = 1.0  # local size bound for the guide


@dataclass
class GuidePlan:
    tour: list[tuple[int, int]]
    guides: list[Disk]
    tags: list[str]
    belt: Optional[BeltSpec]  # None for a single disk: the belt is its circle
    attempts: int = 1
    curve: Optional[BeltCurve] = field(default=None, compare=False)


def _tangent_point(v, c, r, disk_on_left: bool):
    """Where the line from ``v`` touches the circle; travelling from v to it keeps the circle on the given side."""
    dx, dy = c[0] - v[0], c[1] - v[1]
    d = math.hypot(dx, dy)
    if d <= r:
        raise GeometryError("route vertex inside a disk")
    beta = math.asin(r / d)
    th = math.atan2(dy, dx) + (-beta if disk_on_left else beta)
    t = math.sqrt(d * d - r * r)
    return (v[0] + t * math.cos(th), v[1] + t * math.sin(th))


def _fillets(nodes: list[_Node], disks: list[Disk], rho: float):
    """Guide disk (center, radius, sign) for every point node; straight nodes are dropped."""
    nodes = list(nodes)
    while True:
        m = len(nodes)
        out = []
        drop = None
        for k, nd in enumerate(nodes):
            if nd.kind != "pt":
                out.append(None)
                continue
            v = nd.pt
            prv, nxt = nodes[k - 1], nodes[(k + 1) % m]
            if prv.kind == "pt":
                src = prv.pt
            else:
                d = disks[prv.disk]
                src = _tangent_point(v, d.center, d.radius, False)
            if nxt.kind == "pt":
                dst = nxt.pt
            else:
                d = disks[nxt.disk]
                dst = _tangent_point(v, d.center, d.radius, True)
            ax, ay = v[0] - src[0], v[1] - src[1]
            bx, by = dst[0] - v[0], dst[1] - v[1]
            la, lb = math.hypot(ax, ay), math.hypot(bx, by)
            if la < 1e-12 or lb < 1e-12:
                raise PlacementFailed(f"degenerate route at step {k}")
            ax, ay, bx, by = ax / la, ay / la, bx / lb, by / lb
            cross = ax * by - ay * bx
            dot = ax * bx + ay * by
            if abs(cross) < 1e-10 and dot > 0:
                drop = k
                break
            if 1 + dot < 1e-14:
                raise PlacementFailed(f"route reverses at step {k}")
            sin_h = math.sqrt((1 + dot) / 2)
            tan_h = math.sqrt((1 + dot) / max(1 - dot, 1e-300))
            r = min(rho * nd.scale, 0.3 * min(la, lb) * tan_h)
            ux, uy = bx - ax, by - ay
            lu = math.hypot(ux, uy)
            dist = r / sin_h
            center = (v[0] + dist * ux / lu, v[1] + dist * uy / lu)
            out.append((center, r, 1 if cross > 0 else -1))
        if drop is None:
            return nodes, out
        nodes.pop(drop)


def _assemble(nodes, disks, rho, mode, tol, first_id):
    nodes, fil = _fillets(nodes, disks, rho)
    guides, tags, contacts = [], [], []
    for nd, f in zip(nodes, fil):
        if nd.kind == "disk":
            contacts.append(Contact.signed(disks[nd.disk].id, 1))
        else:
            center, r, sgn = f
            g = Disk.at(first_id + len(guides), center[0], center[1], r)
            guides.append(g)
            tags.append(nd.tag)
            contacts.append(Contact.signed(g.id, sgn))
    return guides, tags, BeltSpec(tuple(contacts), mode)


class _Layout:
    """Per-cell geometry shared by both augmentation modes."""

    def __init__(self, disks: list[Disk], pd: PowerDiagram, tree: DualTree):
        self.disks = disks
        self.pd = pd
        self.tree = tree
        self.rot = _rotation(pd, tree)
        n = len(disks)
        self.clear = [pd.clearance(i) for i in range(n)]
        self.psi = []
        self.delta = []
        for i in range(n):
            ks = self.rot[i]
            r = disks[i].radius
            # corridor directions: leave towards our crossing, arrive from the neighbour's
            angs = []
            for k in ks:
                angs.append((self.ref_angle(i, k, +1), self.ref_angle(i, k, -1)))
            gaps = []
            for t in range(len(angs)):
                arrive = angs[t][0]
                leave = angs[(t + 1) % len(angs)][1]
                gaps.append((leave - arrive) % (2 * math.pi))
            gap = min(gaps)
            # keep the flank corner the closest point of its corridor to the disk
            reach = math.acos((r + self.clear[i] / 4) / (r + self.clear[i]))
            psi = min(0.3, gap / 4, reach / 2)
            self.psi.append(psi)
            self.delta.append(min(self.clear[i] / 4, r * (1 / math.cos(psi / 2) - 1)))

    def ref_angle(self, i: int, k: int, side: int) -> float:
        """Direction from disk i to the crossing its corridor on edge k aims at."""
        src = i if side < 0 else self.other(i, k)
        y = self.crossing(src, k).pt
        c = self.disks[i].center
        return math.atan2(y[1] - c[1], y[0] - c[0])

    def angle(self, i: int, k: int) -> float:
        y = self.tree.edges[k].midpoint
        c = self.disks[i].center
        return math.atan2(y[1] - c[1], y[0] - c[0])

    def other(self, i: int, k: int) -> int:
        e = self.tree.edges[k]
        return e.cell_b if e.cell_a == i else e.cell_a

    def flank(self, i: int, k: int, side: int, shrink: float) -> _Node:
        """Corridor corner just outside disk i, cw (side -1) or ccw (+1) of edge k."""
        d = self.disks[i]
        phi = self.ref_angle(i, k, side) + side * self.psi[i]
        rr = d.radius + self.delta[i] * shrink
        pt = (d.center[0] + rr * math.cos(phi), d.center[1] + rr * math.sin(phi))
        return _Node("pt", pt=pt, tag="x_point" if side < 0 else "z_point", scale=self.delta[i] * shrink)

    def crossing(self, i: int, k: int) -> _Node:
        """Where the route leaving cell i through edge k crosses it (right of the crossing direction)."""
        e = self.tree.edges[k]
        j = self.other(i, k)
        ci, cj = self.disks[i].center, self.disks[j].center
        dx, dy = cj[0] - ci[0], cj[1] - ci[1]
        L = math.hypot(dx, dy)
        tx, ty = dy / L, -dx / L
        w = 0.2 * e.length()
        y = e.midpoint
        pt = (y[0] + w * tx, y[1] + w * ty)
        scale = min(w, self.clear[i] / 4, self.clear[j] / 4)
        return _Node("pt", pt=pt, tag="y_point", scale=scale)

    def reroute(self, i: int, k_in: int, k_out: int, start, end) -> list[_Node]:
        """Route vertices inside cell i, ccw along its boundary from edge k_in to edge k_out."""
        d = self.disks[i]
        c = d.center
        poly = self.pd.cells[i]
        pull = self.clear[i] / 4
        a0 = math.atan2(start[1] - c[1], start[0] - c[0])
        span = (math.atan2(end[1] - c[1], end[0] - c[0]) - a0) % (2 * math.pi)
        verts = []
        for v in poly:
            a = (math.atan2(v[1] - c[1], v[0] - c[0]) - a0) % (2 * math.pi)
            if 0 < a < span:
                L = math.hypot(c[0] - v[0], c[1] - v[1])
                p = (v[0] + pull * (c[0] - v[0]) / L, v[1] + pull * (c[1] - v[1]) / L)
                verts.append((a, p))
        verts.sort()
        pts = [p for _, p in verts] + [end]
        margin = d.radius + self.clear[i] / 2
        route: list[_Node] = []
        cur = start
        t = 0
        while t < len(pts) - 1:
            best = t
            for u in range(len(pts) - 1, t, -1):
                q = pts[u]
                sweep = (math.atan2(q[1] - c[1], q[0] - c[0]) - math.atan2(cur[1] - c[1], cur[0] - c[0])) % (2 * math.pi)
                if sweep < math.pi - 0.2 and _seg_point_dist(cur, q, c) >= margin:
                    best = u
                    break
            if best == len(pts) - 1:
                break
            route.append(_Node("pt", pt=pts[best], tag="routing", scale=pull))
            cur = pts[best]
            t = best + 1
        return route


def _seg_point_dist(a, b, p) -> float:
    dx, dy = b[0] - a[0], b[1] - a[1]
    ll = dx * dx + dy * dy
    t = 0.0 if ll == 0 else max(0.0, min(1.0, ((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / ll))
    return math.hypot(a[0] + t * dx - p[0], a[1] + t * dy - p[1])


def _route(lay: _Layout, tour, keep: set, shrink: float) -> list[_Node]:
    """Cyclic route: wedge part at each tour step, then the crossing of the outgoing edge."""
    nodes: list[_Node] = []
    m = len(tour)
    crossings = {}
    for s, (i, k) in enumerate(tour):
        crossings[s] = lay.crossing(i, k)
    for s, (i, k_out) in enumerate(tour):
        k_in = tour[s - 1][1]
        if s in keep:
            nodes.append(lay.flank(i, k_in, +1, shrink))
            nodes.append(_Node("disk", disk=i))
            nodes.append(lay.flank(i, k_out, -1, shrink))
        else:
            start = crossings[(s - 1) % m].pt
            end = crossings[s].pt
            nodes.extend(lay.reroute(i, k_in, k_out, start, end))
        nodes.append(crossings[s])
    return nodes


def _prepare(disks, pd, tour):
    ds = list(disks)
    if pd is None:
        pd = power_diagram(ds)
    tree = dual_spanning_tree(pd)
    if tour is None:
        tour = outside_tour(tree, pd)
    return ds, pd, tree, tour


def _place(disks, pd, tour, mode, tol, max_retries, keep_fn) -> GuidePlan:
    ds, pd, tree, tour = _prepare(disks, pd, tour)
    if len(ds) == 1:
        return GuidePlan([(0, -1)], [], [], None, 1, full_circle(ds[0]))
    lay = _Layout(ds, pd, tree)
    keep = keep_fn(lay, tour)
    first_id = max(d.id for d in ds) + 1
    rho0 = 0.5
    last = "no attempt"
    for attempt in range(max_retries):
        shrink = 0.5 ** attempt
        try:
            nodes = _route(lay, tour, keep, shrink)
            guides, tags, spec = _assemble(nodes, ds, rho0 * shrink, mode, tol, first_id)
            every = ds + guides
            curve = realize(spec, every, tol)
            rep = verify(curve, every, mode, tol)
        except GeometryError as exc:
            last = str(exc)
            continue
        if rep.valid:
            return GuidePlan(tour, guides, tags, spec, attempt + 1, curve)
        last = ", ".join(f"{f.code}@{f.location}" for f in rep.failures[:3])
    raise PlacementFailed(f"guide placement failed after {max_retries} attempts ({last})")


def _keep_all(lay, tour):
    return set(range(len(tour)))


def _keep_widest(lay: _Layout, tour):
    """One tour step per cell: the widest wedge (earliest step on ties)."""
    best: dict[int, tuple[float, int]] = {}
    for s, (i, k_out) in enumerate(tour):
        k_in = tour[s - 1][1]
        gap = (lay.angle(i, k_out) - lay.angle(i, k_in)) % (2 * math.pi)
        if k_in == k_out:
            gap = 2 * math.pi
        if i not in best or gap > best[i][0] + 1e-12:
            best[i] = (gap, s)
    return {s for _, s in best.values()}


# guide count bounds of the placement policy (per original disk)
MULTI_GUIDES_PER_DISK = 6
ONE_TOUCH_GUIDES_PER_DISK = 12


def place_guides(disks: Sequence[Disk], pd: Optional[PowerDiagram] = None, tour=None,
                 tol: Tolerance = DEFAULT_TOL, max_retries: int = 12) -> GuidePlan:
    """Multi-touch belt around the outside of the dual spanning tree."""
    return _place(disks, pd, tour, MULTI_TOUCH, tol, max_retries, _keep_all)


def augment_one_touch(disks: Sequence[Disk], pd: Optional[PowerDiagram] = None, tour=None,
                      tol: Tolerance = DEFAULT_TOL, max_retries: int = 12) -> GuidePlan:
    """One-touch belt: every wedge but one per disk follows the cell boundary instead."""
    return _place(disks, pd, tour, ONE_TOUCH, tol, max_retries, _keep_widest)


# ---------------------------------------------------------------------------
# lower-bound instance
# ---------------------------------------------------------------------------


@dataclass
class LowerBoundInstance:
    disks: list[Disk]
    small: list[int]
    central: int
    blocked_pairs: list[tuple[int, int]]


def lower_bound_instance(n: int, ring_radius: float = 10.0, tol: Tolerance = DEFAULT_TOL) -> LowerBoundInstance:
    """n-1 small disks on a regular polygon around one large central disk that blocks them pairwise."""
    if n < 4:
        raise ValueError("lower_bound_instance needs n >= 4")
    k = n - 1
    R = ring_radius
    theta = 2 * math.pi / k
    r_s = R * (1 - math.cos(theta / 2)) / 4
    # central radius between the outer tangent of two neighbours and the ring
    r_c = 0.5 * ((R * math.cos(theta / 2) + r_s) + (R - r_s))
    disks = [Disk.at(0, 0.0, 0.0, r_c)]
    for t in range(k):
        a = t * theta
        disks.append(Disk.at(t + 1, R * math.cos(a), R * math.sin(a), r_s))
    blocked = []
    for a in range(1, k + 1):
        for b in range(a + 1, k + 1):
            if all(is_blocked(directed_bitangent(disks[a], s1, disks[b], s2), disks, tol)
                   for s1 in (1, -1) for s2 in (1, -1)):
                blocked.append((a, b))
    if len(blocked) != k * (k - 1) // 2:
        raise PlacementFailed("central disk does not block every small-small bitangent")
    return LowerBoundInstance(disks, list(range(1, k + 1)), 0, blocked)
