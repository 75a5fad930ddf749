"""Combinatorial planar graphs: maximal planar triangulations and cubic duals."""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import GraphError, NotCubic, NotThreeConnected


def _connected_without(adj: dict, removed: set) -> bool:
    verts = [v for v in adj if v not in removed]
    if not verts:
        return True
    seen = {verts[0]}
    todo = deque([verts[0]])
    while todo:
        v = todo.popleft()
        for u in adj[v]:
            if u not in removed and u not in seen:
                seen.add(u)
                todo.append(u)
    return len(seen) == len(verts)


def is_three_connected(adj: dict) -> bool:
    """Brute force: no vertex pair whose removal disconnects the graph."""
    verts = sorted(adj)
    if len(verts) < 4:
        return False
    if not _connected_without(adj, set()):
        return False
    for a, b in itertools.combinations(verts, 2):
        if not _connected_without(adj, {a, b}):
            return False
    for a in verts:
        if not _connected_without(adj, {a}):
            return False
    return True


@dataclass(frozen=True)
class PlanarTriangulation:
    """Maximal planar graph as a list of ccw faces (as seen from outside the sphere).

    ``outer`` is one of the faces; in the plane it is traversed clockwise,
    every other face counter-clockwise.
    """

    n: int
    faces: tuple[tuple[int, int, int], ...]
    outer: tuple[int, int, int]

    def __post_init__(self):
        faces = tuple(tuple(f) for f in self.faces)
        object.__setattr__(self, "faces", faces)
        object.__setattr__(self, "outer", tuple(self.outer))
        if self.n < 3:
            raise GraphError("a triangulation needs at least three vertices")
        if len(faces) != 2 * self.n - 4:
            raise GraphError(f"{len(faces)} faces, expected 2n-4 = {2 * self.n - 4}")
        darts = {}
        for f in faces:
            if len(set(f)) != 3 or any(not 0 <= v < self.n for v in f):
                raise GraphError(f"bad face {f}")
            for k in range(3):
                d = (f[k], f[(k + 1) % 3])
                if d in darts:
                    raise GraphError(f"edge {d} appears twice with the same orientation")
                darts[d] = f
        for (u, v) in darts:
            if (v, u) not in darts:
                raise GraphError(f"edge {(u, v)} borders only one face")
        if _canon_face(self.outer) not in {_canon_face(f) for f in faces}:
            raise GraphError("outer triple is not a face")

    @property
    def edges(self) -> list[tuple[int, int]]:
        es = set()
        for f in self.faces:
            for k in range(3):
                u, v = f[k], f[(k + 1) % 3]
                es.add((min(u, v), max(u, v)))
        return sorted(es)

    def adjacency(self) -> dict[int, set[int]]:
        adj = {v: set() for v in range(self.n)}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    @property
    def outer_face(self) -> tuple[int, int, int]:
        for f in self.faces:
            if _canon_face(f) == _canon_face(self.outer):
                return f
        raise GraphError("outer face missing")

    @property
    def interior_faces(self) -> list[tuple[int, int, int]]:
        o = _canon_face(self.outer)
        return [f for f in self.faces if _canon_face(f) != o]

    def validate(self) -> None:
        if self.n >= 4 and not is_three_connected(self.adjacency()):
            raise NotThreeConnected("triangulation is not 3-connected")


def _canon_face(f) -> tuple[int, int, int]:
    k = f.index(min(f))
    return tuple(f[k:] + f[:k]) if isinstance(f, tuple) else tuple(list(f[k:]) + list(f[:k]))


@dataclass(frozen=True)
class CubicPlanarGraph:
    """Rotation system: ``rotation[v]`` lists v's neighbours in ccw order."""

    rotation: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rot = tuple(tuple(r) for r in self.rotation)
        object.__setattr__(self, "rotation", rot)
        for v, ns in enumerate(rot):
            if len(ns) != 3 or len(set(ns)) != 3:
                raise NotCubic(f"vertex {v} has neighbours {ns}")
            for u in ns:
                if v not in rot[u]:
                    raise GraphError(f"edge {v}-{u} is not symmetric")

    @property
    def n(self) -> int:
        return len(self.rotation)

    @property
    def edges(self) -> list[tuple[int, int]]:
        return sorted({(min(v, u), max(v, u)) for v, ns in enumerate(self.rotation) for u in ns})

    def adjacency(self) -> dict[int, set[int]]:
        return {v: set(ns) for v, ns in enumerate(self.rotation)}

    def faces(self) -> list[tuple[int, ...]]:
        """Faces as vertex cycles, each dart used once (face on the left of u -> v)."""
        seen = set()
        out = []
        for v, ns in enumerate(self.rotation):
            for u in ns:
                if (v, u) in seen:
                    continue
                face = []
                a, b = v, u
                while (a, b) not in seen:
                    seen.add((a, b))
                    face.append(a)
                    rb = self.rotation[b]
                    c = rb[(rb.index(a) - 1) % 3]
                    a, b = b, c
                out.append(tuple(face))
        return out

    def validate(self) -> None:
        faces = self.faces()
        if self.n - len(self.edges) + len(faces) != 2:
            raise GraphError("rotation system is not a planar embedding")
        if not is_three_connected(self.adjacency()):
            raise NotThreeConnected("cubic graph is not 3-connected")


@dataclass
class DualInfo:
    triangulation: PlanarTriangulation
    face_cycles: list[tuple[int, ...]]  # triangulation vertex k = cubic face k
    vertex_triangle: dict[int, tuple[int, int, int]]  # cubic vertex -> triangle (ccw)


def dual_graph(g: CubicPlanarGraph, outer_vertex: int = 0) -> DualInfo:
    """Faces of ``g`` become vertices; vertices of ``g`` become triangles.

    The triangle of ``outer_vertex`` is the outer face.
    """
    g.validate()
    faces = g.faces()
    dart_face = {}
    for k, f in enumerate(faces):
        m = len(f)
        for t in range(m):
            dart_face[(f[t], f[(t + 1) % m])] = k
    tri = {}
    for v, ns in enumerate(g.rotation):
        # faces around v in ccw order: the face left of dart v -> ns[t]
        tri[v] = tuple(dart_face[(v, u)] for u in ns)
    t = PlanarTriangulation(len(faces), tuple(tri[v] for v in range(g.n)), tri[outer_vertex])
    return DualInfo(t, faces, tri)


def triangulation_from_faces(faces: Sequence[Sequence[int]], outer: Optional[Sequence[int]] = None) -> PlanarTriangulation:
    faces = [tuple(f) for f in faces]
    n = 1 + max(max(f) for f in faces)
    return PlanarTriangulation(n, tuple(faces), tuple(outer) if outer else faces[0])


# ---------------------------------------------------------------------------
# fixtures
# ---------------------------------------------------------------------------


def tetrahedron() -> PlanarTriangulation:
    # outer (0, 1, 2) clockwise in the plane, vertex 3 inside
    faces = [(0, 1, 2), (0, 2, 3), (2, 1, 3), (1, 0, 3)]
    return PlanarTriangulation(4, tuple(faces), (0, 1, 2))


def octahedron() -> PlanarTriangulation:
    # outer triangle 0,1,2; inner triangle 3,4,5 with 3 opposite 0, 4 opposite 1, 5 opposite 2
    faces = [
        (0, 1, 2),
        (0, 2, 4), (0, 4, 5), (0, 5, 1),
        (1, 5, 3), (1, 3, 2), (2, 3, 4),
        (3, 5, 4),
    ]
    return PlanarTriangulation(6, tuple(faces), (0, 1, 2))


def tetrahedron_graph() -> CubicPlanarGraph:
    return CubicPlanarGraph(((1, 2, 3), (0, 3, 2), (0, 1, 3), (0, 2, 1)))


def cube_graph() -> CubicPlanarGraph:
    # outer square 0-1-2-3 (ccw), inner square 4-5-6-7, i joined to i+4
    rot = (
        (3, 4, 1),
        (0, 5, 2),
        (1, 6, 3),
        (2, 7, 0),
        (0, 7, 5),
        (1, 4, 6),
        (2, 5, 7),
        (3, 6, 4),
    )
    return CubicPlanarGraph(rot)


# ---------------------------------------------------------------------------
# enumeration of small triangulations
# ---------------------------------------------------------------------------


def _insert_vertex(t: PlanarTriangulation, face_idx: int) -> PlanarTriangulation:
    a, b, c = t.faces[face_idx]
    x = t.n
    faces = list(t.faces)
    faces[face_idx:face_idx + 1] = [(a, b, x), (b, c, x), (c, a, x)]
    outer = t.outer
    if _canon_face(outer) == _canon_face((a, b, c)):
        outer = (a, b, x)
    return PlanarTriangulation(x + 1, tuple(faces), outer)


def _flip(t: PlanarTriangulation, u: int, v: int) -> Optional[PlanarTriangulation]:
    """Replace edge u-v by the edge joining the two opposite apexes."""
    f1 = f2 = None
    for k, f in enumerate(t.faces):
        for s in range(3):
            if (f[s], f[(s + 1) % 3]) == (u, v):
                f1 = (k, f[(s + 2) % 3])
            if (f[s], f[(s + 1) % 3]) == (v, u):
                f2 = (k, f[(s + 2) % 3])
    if f1 is None or f2 is None:
        return None
    w, z = f1[1], f2[1]
    if w == z or z in t.adjacency()[w]:
        return None
    faces = [f for k, f in enumerate(t.faces) if k not in (f1[0], f2[0])]
    faces += [(u, z, w), (v, w, z)]
    outer = t.outer
    if _canon_face(outer) in {_canon_face(t.faces[f1[0]]), _canon_face(t.faces[f2[0]])}:
        outer = (u, z, w)
    return PlanarTriangulation(t.n, tuple(faces), outer)


def _graph_key(t: PlanarTriangulation):
    """Canonical form of the abstract graph by brute force over a degree-refined labelling."""
    adj = t.adjacency()
    n = t.n
    best = None
    degs = sorted(len(adj[v]) for v in range(n))
    # orderings that sort vertices by degree
    groups = {}
    for v in range(n):
        groups.setdefault(len(adj[v]), []).append(v)
    keys = sorted(groups)
    for perms in itertools.product(*(itertools.permutations(groups[k]) for k in keys)):
        order = [v for p in perms for v in p]
        pos = {v: i for i, v in enumerate(order)}
        code = tuple(sorted((min(pos[u], pos[v]), max(pos[u], pos[v])) for u, v in t.edges))
        if best is None or code < best:
            best = code
    return (n, tuple(degs), best)


def maximal_planar_graphs(n_max: int = 8, even_only: bool = True) -> list[PlanarTriangulation]:
    """All maximal planar graphs up to isomorphism with 4 <= |V| <= n_max.

    Generated from K4 by vertex insertion into faces and closed under edge
    flips at each size.
    """
    by_n: dict[int, dict] = {4: {_graph_key(tetrahedron()): tetrahedron()}}
    for n in range(4, n_max):
        nxt: dict = {}
        for t in by_n[n].values():
            for k in range(len(t.faces)):
                s = _insert_vertex(t, k)
                nxt.setdefault(_graph_key(s), s)
        todo = list(nxt.values())
        while todo:
            t = todo.pop()
            for u, v in t.edges:
                f = _flip(t, u, v)
                if f is None:
                    continue
                key = _graph_key(f)
                if key not in nxt:
                    nxt[key] = f
                    todo.append(f)
        by_n[n + 1] = nxt
    out = []
    for n in sorted(by_n):
        if even_only and n % 2:
            continue
        out.extend(by_n[n][k] for k in sorted(by_n[n]))
    return out
